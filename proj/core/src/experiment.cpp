#include "nanosyn/experiment.hpp"

#include "nanosyn/errors.hpp"
#include "nanosyn/synthetic.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace nanosyn {

namespace {

using json = nlohmann::ordered_json;

Dataset load_raw_dataset(const ExperimentConfig& cfg)
{
    Dataset data;
    switch (cfg.task) {
    case Task::mnist_frames:
        data = load_mnist_dir(cfg.mnist_dir, cfg.mnist_axis);
        break;
    case Task::cochleagram:
        data.train = load_cochleagram(cfg.train_path);
        data.test = load_cochleagram(cfg.test_path);
        break;
    case Task::synthetic_cochleagram: {
        SyntheticSpec spec;
        spec.n_samples = cfg.synthetic_samples;
        spec.n_train = cfg.synthetic_train;
        spec.n_classes = cfg.synthetic_classes;
        spec.noise_sd = cfg.synthetic_noise_sd;
        spec.rng_seed = cfg.seeds.data;
        data = generate_synthetic_cochleagrams(spec);
        break;
    }
    }
    if (cfg.max_train > 0 && data.train.size() > cfg.max_train) data.train.resize(cfg.max_train);
    if (cfg.max_test > 0 && data.test.size() > cfg.max_test) data.test.resize(cfg.max_test);
    return data;
}

void apply_input_mode(std::vector<FrameSequence>& samples, const ExperimentConfig& cfg, std::uint64_t split)
{
    if (cfg.input_mode != InputMode::spiking) return;
    const auto kind = cfg.dataset_kind();
    for (std::size_t n = 0; n < samples.size(); ++n) {
        samples[n] = encode_spiking(samples[n], kind);
        if (cfg.noise > 0.0) samples[n] = inject_noise(samples[n], {cfg.noise, derive_seed(cfg.seeds.noise, split, n)});
    }
}

Dataset present(const Dataset& raw, const ExperimentConfig& cfg)
{
    Dataset out = raw;
    apply_input_mode(out.train, cfg, 0);
    apply_input_mode(out.test, cfg, 1);
    return out;
}

struct Shape {
    std::size_t channels = 0;
    std::size_t classes = 0;
    std::size_t max_frames = 0;
};

Shape inspect(const Dataset& data, const ExperimentConfig& cfg)
{
    Shape s;
    int max_label = -1;
    auto visit = [&](const std::vector<FrameSequence>& samples) {
        for (const auto& x : samples) {
            if (s.channels == 0) s.channels = x.n_channels;
            if (x.n_channels != s.channels) throw dimension_error("dataset mixes channel counts");
            if (x.label < 0) throw dimension_error("dataset has a negative label");
            max_label = std::max(max_label, x.label);
            s.max_frames = std::max(s.max_frames, x.n_frames);
        }
    };
    visit(data.train);
    visit(data.test);
    if (s.channels == 0) throw data_error(data_error_kind::dimension_mismatch, "dataset is empty");
    switch (cfg.task) {
    case Task::mnist_frames: s.classes = 10; break;
    case Task::synthetic_cochleagram: s.classes = cfg.synthetic_classes; break;
    case Task::cochleagram: s.classes = static_cast<std::size_t>(max_label + 1); break;
    }
    if (static_cast<std::size_t>(max_label) >= s.classes) throw dimension_error("label exceeds class count");
    if (cfg.max_frames > 0) s.max_frames = cfg.max_frames;
    return s;
}

DispersionSpec dispersion_for(const ExperimentConfig& cfg)
{
    DispersionSpec d;
    d.sigma_fraction = cfg.device_mode == DeviceMode::imperfect ? cfg.sigma : 0.0;
    return d;
}

std::size_t log_interval_for(const ExperimentConfig& cfg, std::size_t n_train)
{
    if (cfg.log_interval > 0) return cfg.log_interval;
    const std::size_t total = n_train * static_cast<std::size_t>(cfg.epochs);
    return std::max<std::size_t>(1, total / 20);
}

MetricsRecord train_and_report(const ExperimentConfig& cfg, SystemKind system, const Shape& shape,
                               const FeatureMatrix& train, const FeatureMatrix& test, DifferentialCrossbar& readout)
{
    MetricsRecord rec;
    rec.config = cfg;
    rec.system = system;
    rec.n_train = train.rows;
    rec.n_test = test.rows;
    rec.n_channels = shape.channels;
    rec.n_classes = shape.classes;
    rec.max_frames = shape.max_frames;

    TrainConfig tc;
    tc.epochs = cfg.epochs;
    tc.shuffle_seed = cfg.seeds.shuffle;
    tc.log_interval = log_interval_for(cfg, train.rows);
    const auto result = run_training(readout, train, test, tc, rec.ledger);
    rec.train_accuracy = result.train_accuracy;
    rec.test_accuracy = result.test_accuracy;
    rec.trace = result.trace;

    if (cfg.oracle && train.rows > 0) {
        const auto a_train = train.to_eigen();
        const auto w = pseudo_inverse_readout(a_train, one_hot_targets(train.labels, shape.classes), cfg.oracle_lambda);
        auto hits = [&](const FeatureMatrix& f) {
            if (f.rows == 0) return 0.0;
            const auto pred = argmax_rows(f.to_eigen() * w);
            std::size_t n = 0;
            for (std::size_t r = 0; r < f.rows; ++r) n += pred[r] == f.labels[r];
            return static_cast<double>(n) / static_cast<double>(f.rows);
        };
        rec.oracle_train_accuracy = hits(train);
        rec.oracle_test_accuracy = hits(test);
    }

    const auto techs = cfg.technology_specs();
    if (!rec.trace.empty()) {
        rec.energy = report(rec.ledger, techs, rec.trace);
    } else {
        for (const auto& t : techs) rec.energy.rows.push_back({t.name, 0.0, 0.0, 0.0, 0, 0, 0});
    }
    return rec;
}

json record_to_json(const MetricsRecord& rec)
{
    json j;
    json cfg = json::object();
    for (const auto& [k, v] : rec.config.to_pairs()) cfg[k] = v;
    j["config"] = cfg;
    j["system"] = rec.system == SystemKind::two_layer ? "two_layer" : "one_layer";
    j["dataset"] = {{"train_samples", rec.n_train},
                    {"test_samples", rec.n_test},
                    {"channels", rec.n_channels},
                    {"classes", rec.n_classes},
                    {"max_frames", rec.max_frames}};
    j["test_accuracy"] = rec.test_accuracy;
    j["train_accuracy"] = rec.train_accuracy;
    if (rec.oracle_test_accuracy) {
        j["oracle"] = {{"lambda", rec.config.oracle_lambda},
                       {"train_accuracy", *rec.oracle_train_accuracy},
                       {"test_accuracy", *rec.oracle_test_accuracy}};
    }
    j["pulses"] = {{"set", rec.ledger.set_pulses}, {"reset", rec.ledger.reset_pulses}, {"total", rec.ledger.total_pulses()}};
    json trace = json::array();
    for (const auto& c : rec.trace.checkpoints)
        trace.push_back({{"samples_seen", c.samples_seen}, {"test_accuracy", c.test_accuracy}, {"cumulative_pulses", c.cumulative_pulses}});
    j["trace"] = trace;
    json rows = json::array();
    for (const auto& r : rec.energy.rows)
        rows.push_back({{"technology", r.technology},
                        {"full_performance_J", r.full_performance},
                        {"loss_10_J", r.loss_10},
                        {"loss_20_J", r.loss_20},
                        {"pulses_full", r.pulses_full},
                        {"pulses_loss_10", r.pulses_loss_10},
                        {"pulses_loss_20", r.pulses_loss_20}});
    j["energy"] = {{"samples_loss_10", rec.energy.samples_loss_10},
                   {"samples_loss_20", rec.energy.samples_loss_20},
                   {"rows", rows}};
    return j;
}

std::string fmt(double v)
{
    if (std::isnan(v)) return "nan";
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

}  // namespace

Dataset prepare_dataset(const ExperimentConfig& config)
{
    return present(load_raw_dataset(config), config);
}

MetricsRecord run_experiment(const ExperimentConfig& config, RunArtifacts* artifacts)
{
    const auto cfg = config.resolved();
    cfg.validate();
    return run_experiment(cfg, prepare_dataset(cfg), artifacts);
}

MetricsRecord run_experiment(const ExperimentConfig& config, const Dataset& data, RunArtifacts* artifacts)
{
    const auto cfg = config.resolved();
    cfg.validate();
    const Shape shape = inspect(data, cfg);

    ProjectionInitSpec pspec;
    const bool gaussian = cfg.projection == ProjectionChoice::gaussian ||
                          (cfg.projection == ProjectionChoice::automatic && cfg.device_mode == DeviceMode::imperfect);
    pspec.mode = gaussian ? ProjectionMode::gaussian_imperfect : ProjectionMode::binary_perfect;
    pspec.dispersion = dispersion_for(cfg);
    pspec.rng_seed = cfg.seeds.projection;
    auto projection = init_projection(shape.channels, cfg.hidden_size, pspec);
    auto masks = generate_masks(cfg.hidden_size, shape.max_frames, cfg.mask_density, cfg.seeds.masks);

    const auto train = integrate_dataset(projection, data.train, masks, TieBreak::zero_is_positive, cfg.workers);
    const auto test = integrate_dataset(projection, data.test, masks, TieBreak::zero_is_positive, cfg.workers);

    auto readout = init_readout(cfg.hidden_size, shape.classes, {cfg.readout_init, dispersion_for(cfg), cfg.seeds.device});
    auto rec = train_and_report(cfg, SystemKind::two_layer, shape, train, test, readout);
    if (artifacts) *artifacts = {std::move(projection), std::move(readout), std::move(masks)};
    return rec;
}

MetricsRecord run_baseline_onelayer(const ExperimentConfig& config)
{
    const auto cfg = config.resolved();
    cfg.validate();
    return run_baseline_onelayer(cfg, prepare_dataset(cfg));
}

MetricsRecord run_baseline_onelayer(const ExperimentConfig& config, const Dataset& data)
{
    const auto cfg = config.resolved();
    cfg.validate();
    const Shape shape = inspect(data, cfg);
    const auto masks = generate_masks(shape.channels, shape.max_frames, cfg.mask_density, cfg.seeds.masks);

    auto integrate = [&](const std::vector<FrameSequence>& samples) {
        FeatureMatrix f(samples.size(), shape.channels);
        for (std::size_t s = 0; s < samples.size(); ++s) {
            const auto v = integrate_channels(samples[s], masks);
            std::copy(v.begin(), v.end(), f.row(s).begin());
            f.labels[s] = samples[s].label;
        }
        return f;
    };
    const auto train = integrate(data.train);
    const auto test = integrate(data.test);
    auto readout = init_readout(shape.channels, shape.classes, {cfg.readout_init, dispersion_for(cfg), cfg.seeds.device});
    return train_and_report(cfg, SystemKind::one_layer, shape, train, test, readout);
}

SweepAxis parse_sweep_axis(const std::string& name)
{
    if (name == "hidden_size") return SweepAxis::hidden_size;
    if (name == "density") return SweepAxis::density;
    if (name == "sigma") return SweepAxis::sigma;
    if (name == "noise") return SweepAxis::noise;
    throw config_error("unknown sweep axis '" + name + "' (hidden_size|density|sigma|noise)");
}

std::string to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::hidden_size: return "hidden_size";
    case SweepAxis::density: return "density";
    case SweepAxis::sigma: return "sigma";
    case SweepAxis::noise: return "noise";
    }
    return "?";
}

ExperimentConfig sweep_point(const ExperimentConfig& base, SweepAxis axis, double value, std::size_t repetition)
{
    ExperimentConfig cfg = base;
    switch (axis) {
    case SweepAxis::hidden_size:
        if (!(value >= 1.0) || value != std::floor(value)) throw config_error("hidden_size sweep values must be positive integers");
        cfg.hidden_size = static_cast<std::size_t>(value);
        break;
    case SweepAxis::density:
        cfg.mask_density = value;
        break;
    case SweepAxis::sigma:
        cfg.sigma = value;
        if (value > 0.0) cfg.device_mode = DeviceMode::imperfect;
        break;
    case SweepAxis::noise:
        cfg.noise = value;
        cfg.input_mode = InputMode::spiking;
        break;
    }
    const auto data_seed = cfg.seeds.data;
    cfg.seeds = cfg.seeds.for_repetition(repetition);
    cfg.seeds.data = data_seed;  // the dataset itself stays fixed across repetitions
    return cfg;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepAxis axis, const std::vector<double>& values,
                                std::size_t repetitions, unsigned workers,
                                const std::function<void(const SweepRow&)>& on_row)
{
    if (values.empty()) throw config_error("sweep: empty value list");
    if (repetitions == 0) throw config_error("sweep: repetitions must be positive");
    const auto resolved = base.resolved();
    resolved.validate();

    // Axis values never change which files are read, so the raw dataset is loaded once.
    const Dataset raw = load_raw_dataset(resolved);

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<SweepRow> rows;
    for (const double v : sorted)
        for (std::size_t r = 0; r < repetitions; ++r) rows.push_back({v, r, false, {}, {}});

    // Rows are handed to on_row in sorted order: a finished row waits until every row
    // before it has finished.
    std::mutex emit;
    std::vector<std::uint8_t> done(rows.size(), 0);
    std::size_t emitted = 0;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < rows.size();) {
            auto& row = rows[k];
            try {
                const auto cfg = sweep_point(resolved, axis, row.value, row.repetition);
                if (cfg.input_mode == InputMode::spiking)
                    row.record = run_experiment(cfg, present(raw, cfg));
                else
                    row.record = run_experiment(cfg, raw);
                row.ok = true;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            std::lock_guard lock(emit);
            done[k] = 1;
            for (; emitted < rows.size() && done[emitted]; ++emitted)
                if (on_row) on_row(rows[emitted]);
        }
    };

    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(rows.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    return rows;
}

std::string to_json(const MetricsRecord& record)
{
    return record_to_json(record).dump(2) + "\n";
}

ExperimentConfig config_from_record(const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("metrics record is not valid JSON: ") + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) throw config_error("metrics record has no config object");
    ExperimentConfig cfg;
    for (const auto& [k, v] : j["config"].items()) {
        if (!v.is_string()) throw config_error("metrics record: config value for '" + k + "' is not a string");
        cfg.set(k, v.get<std::string>());
    }
    return cfg;
}

std::string trace_csv(const ConvergenceTrace& trace)
{
    std::ostringstream out;
    out << "samples_seen,test_accuracy,cumulative_pulses\n";
    for (const auto& c : trace.checkpoints) out << c.samples_seen << ',' << fmt(c.test_accuracy) << ',' << c.cumulative_pulses << '\n';
    return out.str();
}

std::string energy_csv(const EnergyReport& report)
{
    std::ostringstream out;
    out << "technology,full_performance_J,loss_10_J,loss_20_J,pulses_full,pulses_loss_10,pulses_loss_20\n";
    for (const auto& r : report.rows)
        out << r.technology << ',' << fmt(r.full_performance) << ',' << fmt(r.loss_10) << ',' << fmt(r.loss_20) << ','
            << r.pulses_full << ',' << r.pulses_loss_10 << ',' << r.pulses_loss_20 << '\n';
    return out.str();
}

std::string sweep_csv_header(const std::vector<std::string>& technologies)
{
    std::string out = "axis,value,repetition,status,test_accuracy,train_accuracy,pulses";
    for (const auto& t : technologies) out += "," + t + "_J";
    return out + ",error\n";
}

std::string sweep_csv_row(SweepAxis axis, const SweepRow& row, const std::vector<std::string>& technologies)
{
    std::ostringstream out;
    out << to_string(axis) << ',' << fmt(row.value) << ',' << row.repetition << ',' << (row.ok ? "ok" : "failed") << ',';
    if (row.ok) {
        out << fmt(row.record.test_accuracy) << ',' << fmt(row.record.train_accuracy) << ','
            << row.record.ledger.total_pulses();
        for (const auto& t : technologies) {
            const auto spec = TechnologySpec::builtin(t);
            out << ',' << fmt(spec ? row.record.ledger.energy(*spec) : std::nan(""));
        }
    } else {
        out << "nan,nan,0";
        for (std::size_t k = 0; k < technologies.size(); ++k) out << ",nan";
    }
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << ',' << err << '\n';
    return out.str();
}

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows, const std::vector<std::string>& technologies)
{
    std::string out = sweep_csv_header(technologies);
    for (const auto& row : rows) out += sweep_csv_row(axis, row, technologies);
    return out;
}

std::string sweep_summary_csv(SweepAxis axis, const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    out << "axis,value,runs,failed,mean_accuracy,std_accuracy,min_accuracy,max_accuracy,mean_pulses\n";
    for (std::size_t k = 0; k < rows.size();) {
        std::size_t e = k;
        std::vector<double> acc;
        double pulses = 0.0;
        std::size_t failed = 0;
        for (; e < rows.size() && rows[e].value == rows[k].value; ++e) {
            if (!rows[e].ok) {
                ++failed;
                continue;
            }
            acc.push_back(rows[e].record.test_accuracy);
            pulses += static_cast<double>(rows[e].record.ledger.total_pulses());
        }
        double mean = std::nan(""), sd = std::nan(""), lo = std::nan(""), hi = std::nan("");
        if (!acc.empty()) {
            const double n = static_cast<double>(acc.size());
            mean = 0.0;
            for (const double a : acc) mean += a;
            mean /= n;
            double ss = 0.0;
            for (const double a : acc) ss += (a - mean) * (a - mean);
            sd = acc.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
            lo = *std::min_element(acc.begin(), acc.end());
            hi = *std::max_element(acc.begin(), acc.end());
            pulses /= n;
        } else {
            pulses = std::nan("");
        }
        out << to_string(axis) << ',' << fmt(rows[k].value) << ',' << (e - k) << ',' << failed << ',' << fmt(mean) << ','
            << fmt(sd) << ',' << fmt(lo) << ',' << fmt(hi) << ',' << fmt(pulses) << '\n';
        k = e;
    }
    return out.str();
}

}  // namespace nanosyn
