#include "nanosyn/config.hpp"

#include "nanosyn/errors.hpp"
#include "nanosyn/random.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace nanosyn {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string fmt_double(double v)
{
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

template <typename T>
T parse_unsigned(const std::string& key, const std::string& value)
{
    T v{};
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw config_error("config: '" + key + "' expects a non-negative integer, got '" + value + "'");
    return v;
}

double parse_double(const std::string& key, const std::string& value)
{
    double v = 0.0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw config_error("config: '" + key + "' expects a number, got '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    const auto v = lower(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw config_error("config: '" + key + "' expects a boolean, got '" + value + "'");
}

[[noreturn]] void bad_choice(const std::string& key, const std::string& value, const char* choices)
{
    throw config_error("config: '" + key + "' must be one of " + choices + ", got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty()) out.push_back(t);
    return out;
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (std::size_t k = 0; k < items.size(); ++k) out += (k ? "," : "") + items[k];
    return out;
}

}  // namespace

std::string to_string(Task task)
{
    switch (task) {
    case Task::mnist_frames: return "mnist";
    case Task::cochleagram: return "cochleagram";
    case Task::synthetic_cochleagram: return "synthetic";
    }
    return "?";
}

std::string to_string(DeviceMode mode)
{
    return mode == DeviceMode::perfect ? "perfect" : "imperfect";
}

std::string to_string(InputMode mode)
{
    return mode == InputMode::analog ? "analog" : "spiking";
}

SeedSet SeedSet::for_repetition(std::uint64_t rep) const
{
    if (rep == 0) return *this;
    return {derive_seed(projection, rep), derive_seed(masks, rep), derive_seed(shuffle, rep),
            derive_seed(noise, rep),      derive_seed(device, rep), derive_seed(data, rep)};
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [key, value] : ExperimentConfig{}.to_pairs()) k.push_back(key);
        return k;
    }();
    return keys;
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& raw_value)
{
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);

    if (key == "task") {
        const auto v = lower(value);
        if (v == "mnist" || v == "mnist_frames") task = Task::mnist_frames;
        else if (v == "cochleagram") task = Task::cochleagram;
        else if (v == "synthetic" || v == "synthetic_cochleagram") task = Task::synthetic_cochleagram;
        else bad_choice(key, value, "mnist|cochleagram|synthetic");
    } else if (key == "hidden_size") {
        hidden_size = parse_unsigned<std::size_t>(key, value);
    } else if (key == "mask_density") {
        mask_density = parse_double(key, value);
    } else if (key == "max_frames") {
        max_frames = parse_unsigned<std::size_t>(key, value);
    } else if (key == "device_mode") {
        const auto v = lower(value);
        if (v == "perfect") device_mode = DeviceMode::perfect;
        else if (v == "imperfect") device_mode = DeviceMode::imperfect;
        else bad_choice(key, value, "perfect|imperfect");
    } else if (key == "sigma") {
        sigma = parse_double(key, value);
    } else if (key == "projection_mode") {
        const auto v = lower(value);
        if (v == "auto") projection = ProjectionChoice::automatic;
        else if (v == "binary") projection = ProjectionChoice::binary;
        else if (v == "gaussian") projection = ProjectionChoice::gaussian;
        else bad_choice(key, value, "auto|binary|gaussian");
    } else if (key == "readout_init") {
        const auto v = lower(value);
        if (v == "min") readout_init = ReadoutInit::at_min;
        else if (v == "midpoint") readout_init = ReadoutInit::midpoint;
        else if (v == "random") readout_init = ReadoutInit::random;
        else bad_choice(key, value, "min|midpoint|random");
    } else if (key == "input_mode") {
        const auto v = lower(value);
        if (v == "analog") input_mode = InputMode::analog;
        else if (v == "spiking") input_mode = InputMode::spiking;
        else bad_choice(key, value, "analog|spiking");
    } else if (key == "noise") {
        noise = parse_double(key, value);
    } else if (key == "epochs") {
        epochs = static_cast<int>(parse_unsigned<unsigned>(key, value));
    } else if (key == "log_interval") {
        log_interval = parse_unsigned<std::size_t>(key, value);
    } else if (key == "max_train") {
        max_train = parse_unsigned<std::size_t>(key, value);
    } else if (key == "max_test") {
        max_test = parse_unsigned<std::size_t>(key, value);
    } else if (key == "seed_projection") {
        seeds.projection = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "seed_masks") {
        seeds.masks = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "seed_shuffle") {
        seeds.shuffle = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "seed_noise") {
        seeds.noise = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "seed_device") {
        seeds.device = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "seed_data") {
        seeds.data = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "technologies") {
        auto names = split_list(value);
        for (const auto& name : names)
            if (!TechnologySpec::builtin(name)) throw config_error("config: unknown technology '" + name + "'");
        technologies = std::move(names);
    } else if (key == "mnist_axis") {
        const auto v = lower(value);
        if (v == "rows") mnist_axis = MnistFrameAxis::rows;
        else if (v == "columns") mnist_axis = MnistFrameAxis::columns;
        else bad_choice(key, value, "rows|columns");
    } else if (key == "mnist_dir") {
        mnist_dir = value;
    } else if (key == "train_path") {
        train_path = value;
    } else if (key == "test_path") {
        test_path = value;
    } else if (key == "synthetic_samples") {
        synthetic_samples = parse_unsigned<std::size_t>(key, value);
    } else if (key == "synthetic_train") {
        synthetic_train = parse_unsigned<std::size_t>(key, value);
    } else if (key == "synthetic_classes") {
        synthetic_classes = parse_unsigned<std::size_t>(key, value);
    } else if (key == "synthetic_noise_sd") {
        synthetic_noise_sd = parse_double(key, value);
    } else if (key == "oracle") {
        oracle = parse_bool(key, value);
    } else if (key == "oracle_lambda") {
        oracle_lambda = parse_double(key, value);
    } else if (key == "workers") {
        workers = parse_unsigned<unsigned>(key, value);
    } else {
        throw config_error("config: unknown key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::to_pairs() const
{
    const char* projection_name = projection == ProjectionChoice::automatic ? "auto"
                                  : projection == ProjectionChoice::binary  ? "binary"
                                                                            : "gaussian";
    const char* init_name = readout_init == ReadoutInit::at_min     ? "min"
                            : readout_init == ReadoutInit::midpoint ? "midpoint"
                                                                    : "random";
    return {
        {"task", to_string(task)},
        {"hidden_size", std::to_string(hidden_size)},
        {"mask_density", fmt_double(mask_density)},
        {"max_frames", std::to_string(max_frames)},
        {"device_mode", to_string(device_mode)},
        {"sigma", fmt_double(sigma)},
        {"projection_mode", projection_name},
        {"readout_init", init_name},
        {"input_mode", to_string(input_mode)},
        {"noise", fmt_double(noise)},
        {"epochs", std::to_string(epochs)},
        {"log_interval", std::to_string(log_interval)},
        {"max_train", std::to_string(max_train)},
        {"max_test", std::to_string(max_test)},
        {"seed_projection", std::to_string(seeds.projection)},
        {"seed_masks", std::to_string(seeds.masks)},
        {"seed_shuffle", std::to_string(seeds.shuffle)},
        {"seed_noise", std::to_string(seeds.noise)},
        {"seed_device", std::to_string(seeds.device)},
        {"seed_data", std::to_string(seeds.data)},
        {"technologies", join(technologies)},
        {"mnist_axis", mnist_axis == MnistFrameAxis::rows ? "rows" : "columns"},
        {"mnist_dir", mnist_dir.string()},
        {"train_path", train_path.string()},
        {"test_path", test_path.string()},
        {"synthetic_samples", std::to_string(synthetic_samples)},
        {"synthetic_train", std::to_string(synthetic_train)},
        {"synthetic_classes", std::to_string(synthetic_classes)},
        {"synthetic_noise_sd", fmt_double(synthetic_noise_sd)},
        {"oracle", oracle ? "true" : "false"},
        {"oracle_lambda", fmt_double(oracle_lambda)},
        {"workers", std::to_string(workers)},
    };
}

ExperimentConfig ExperimentConfig::resolved() const
{
    ExperimentConfig out = *this;
    if (out.epochs == 0) out.epochs = task == Task::mnist_frames ? 1 : 10;
    return out;
}

void ExperimentConfig::validate() const
{
    if (hidden_size == 0) throw config_error("config: hidden_size must be positive");
    if (!(mask_density > 0.0 && mask_density <= 1.0)) throw config_error("config: mask_density must lie in (0, 1]");
    if (!(sigma >= 0.0 && sigma < 1.0)) throw config_error("config: sigma must lie in [0, 1)");
    if (!(noise >= 0.0 && noise <= 1.0)) throw config_error("config: noise must lie in [0, 1]");
    if (noise > 0.0 && input_mode != InputMode::spiking) throw config_error("config: noise applies only to spiking input");
    if (epochs < 0) throw config_error("config: epochs must be non-negative");
    if (!(oracle_lambda >= 0.0)) throw config_error("config: oracle_lambda must be non-negative");
    if (task == Task::cochleagram && (train_path.empty() || test_path.empty()))
        throw config_error("config: cochleagram task needs train_path and test_path");
    if (task == Task::synthetic_cochleagram && synthetic_train > synthetic_samples)
        throw config_error("config: synthetic_train exceeds synthetic_samples");
    for (const auto& name : technologies)
        if (!TechnologySpec::builtin(name)) throw config_error("config: unknown technology '" + name + "'");
}

std::vector<TechnologySpec> ExperimentConfig::technology_specs() const
{
    std::vector<TechnologySpec> out;
    for (const auto& name : technologies) {
        auto spec = TechnologySpec::builtin(name);
        if (!spec) throw config_error("config: unknown technology '" + name + "'");
        out.push_back(*spec);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(text);
    std::string line;
    for (int n = 1; std::getline(ss, line); ++n) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw config_error("config line " + std::to_string(n) + ": expected key = value");
        auto key = trim(line.substr(0, eq));
        if (key.empty()) throw config_error("config line " + std::to_string(n) + ": empty key");
        out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
    }
    return out;
}

ExperimentConfig load_config(const std::filesystem::path& file,
                             const std::vector<std::pair<std::string, std::string>>& overrides)
{
    ExperimentConfig cfg;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw config_error("cannot open config file " + file.string());
        std::stringstream buf;
        buf << in.rdbuf();
        for (const auto& [k, v] : parse_key_values(buf.str())) cfg.set(k, v);
    }
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    return cfg;
}

std::pair<std::string, std::string> split_override(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw config_error("override '" + text + "' is not key=value");
    return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

}  // namespace nanosyn
