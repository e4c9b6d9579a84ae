#include "nanosyn/learning.hpp"

#include "nanosyn/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <thread>

namespace nanosyn {

Eigen::MatrixXd FeatureMatrix::to_eigen() const
{
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = values[r * cols + c];
    return m;
}

FeatureMatrix integrate_dataset(const DifferentialCrossbar& projection, std::span<const FrameSequence> samples,
                                std::span<const WindowMask> masks, TieBreak tie, unsigned workers)
{
    FeatureMatrix out(samples.size(), projection.cols());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const auto act = integrate_sample(projection, samples[s], masks, tie);
            auto row = out.row(s);
            std::copy(act.outputs.begin(), act.outputs.end(), row.begin());
            out.labels[s] = samples[s].label;
        }
    };

    workers = std::max(1u, workers);
    if (workers == 1 || samples.size() < 2 * workers) {
        work(0, samples.size());
        return out;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (samples.size() + workers - 1) / workers;
    for (std::size_t b = 0; b < samples.size(); b += chunk)
        pool.emplace_back(work, b, std::min(samples.size(), b + chunk));
    return out;
}

void TrainConfig::validate() const
{
    if (epochs < 1) throw parameter_error("train config: epochs must be >= 1");
}

StepOutcome train_step(DifferentialCrossbar& readout, std::span<const float> inputs, int label,
                       EnergyLedger& ledger, const ProgrammingPulses& pulses)
{
    if (inputs.size() != readout.rows()) throw dimension_error("train_step: input length != readout rows");
    if (label < 0 || static_cast<std::size_t>(label) >= readout.cols())
        throw dimension_error("train_step: label outside class range");

    std::vector<double> y(readout.cols());
    readout.forward(inputs, y);

    StepOutcome out;
    out.column_error.assign(readout.cols(), false);
    std::vector<std::int8_t> directions(readout.rows());
    for (std::size_t j = 0; j < readout.cols(); ++j) {
        const std::int8_t target = static_cast<int>(j) == label ? 1 : -1;
        if (sign_of(y[j]) == target) continue;
        out.column_error[j] = true;
        for (std::size_t i = 0; i < readout.rows(); ++i) {
            const float x = inputs[i];
            directions[i] = static_cast<std::int8_t>(x > 0.0f ? target : (x < 0.0f ? -target : 0));
        }
        out.pulses += readout.program_column(j, directions, ledger, pulses);
    }
    return out;
}

StepOutcome train_step(DifferentialCrossbar& readout, const HiddenActivation& hidden, int label,
                       EnergyLedger& ledger, const ProgrammingPulses& pulses)
{
    std::vector<float> v(hidden.outputs.begin(), hidden.outputs.end());
    return train_step(readout, v, label, ledger, pulses);
}

int infer(const DifferentialCrossbar& readout, std::span<const float> inputs)
{
    std::vector<double> y(readout.cols());
    readout.forward(inputs, y);
    return static_cast<int>(std::max_element(y.begin(), y.end()) - y.begin());
}

int infer(const DifferentialCrossbar& readout, const HiddenActivation& hidden)
{
    std::vector<float> v(hidden.outputs.begin(), hidden.outputs.end());
    return infer(readout, v);
}

std::vector<int> argmax_rows(const Eigen::MatrixXd& scores)
{
    std::vector<int> out(static_cast<std::size_t>(scores.rows()));
    for (Eigen::Index r = 0; r < scores.rows(); ++r) {
        Eigen::Index best = 0;
        for (Eigen::Index c = 1; c < scores.cols(); ++c)
            if (scores(r, c) > scores(r, best)) best = c;
        out[static_cast<std::size_t>(r)] = static_cast<int>(best);
    }
    return out;
}

std::vector<int> predict(const DifferentialCrossbar& readout, const FeatureMatrix& features)
{
    std::vector<int> out(features.rows);
    for (std::size_t r = 0; r < features.rows; ++r) out[r] = infer(readout, features.row(r));
    return out;
}

double accuracy(const DifferentialCrossbar& readout, const FeatureMatrix& features)
{
    if (features.rows == 0) return 0.0;
    const auto pred = predict(readout, features);
    std::size_t hits = 0;
    for (std::size_t r = 0; r < features.rows; ++r) hits += pred[r] == features.labels[r];
    return static_cast<double>(hits) / static_cast<double>(features.rows);
}

Eigen::MatrixXd one_hot_targets(std::span<const int> labels, std::size_t classes)
{
    Eigen::MatrixXd z = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(labels.size()),
                                                  static_cast<Eigen::Index>(classes), -1.0);
    for (std::size_t r = 0; r < labels.size(); ++r) {
        if (labels[r] < 0 || static_cast<std::size_t>(labels[r]) >= classes)
            throw dimension_error("one_hot_targets: label outside class range");
        z(static_cast<Eigen::Index>(r), labels[r]) = 1.0;
    }
    return z;
}

Eigen::MatrixXd pseudo_inverse_readout(const Eigen::MatrixXd& activations, const Eigen::MatrixXd& targets,
                                       double regularization)
{
    if (activations.rows() < 1) throw dimension_error("pseudo_inverse_readout: need at least one sample");
    if (activations.rows() != targets.rows())
        throw dimension_error("pseudo_inverse_readout: activation and target row counts differ");
    if (!(regularization >= 0.0)) throw parameter_error("pseudo_inverse_readout: regularization must be >= 0");

    if (regularization == 0.0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(activations);
        if (qr.rank() < activations.cols())
            throw singular_system_error("pseudo_inverse_readout: activation matrix has rank " +
                                        std::to_string(qr.rank()) + " < " + std::to_string(activations.cols()) +
                                        "; use a positive regularization");
        return qr.solve(targets);
    }

    Eigen::MatrixXd gram = activations.transpose() * activations;
    gram.diagonal().array() += regularization;
    return gram.llt().solve(activations.transpose() * targets);
}

TrainResult run_training(DifferentialCrossbar& readout, const FeatureMatrix& train, const FeatureMatrix& test,
                         const TrainConfig& config, EnergyLedger& ledger)
{
    config.validate();
    if (train.rows > 0 && train.cols != readout.rows())
        throw dimension_error("run_training: feature width != readout rows");
    if (test.rows > 0 && test.cols != readout.rows())
        throw dimension_error("run_training: test feature width != readout rows");

    TrainResult result;
    rng_t rng(config.shuffle_seed);
    std::vector<std::size_t> order(train.rows);
    std::uint64_t seen = 0;
    const std::uint64_t total = static_cast<std::uint64_t>(train.rows) * static_cast<std::uint64_t>(config.epochs);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        shuffle(order, rng);
        for (const auto s : order) {
            train_step(readout, train.row(s), train.labels[s], ledger, config.pulses);
            ++seen;
            if (config.log_interval > 0 && seen % config.log_interval == 0 && seen != total)
                result.trace.add({seen, accuracy(readout, test), ledger.total_pulses()});
        }
    }
    result.test_accuracy = accuracy(readout, test);
    result.train_accuracy = accuracy(readout, train);
    if (seen > 0) result.trace.add({seen, result.test_accuracy, ledger.total_pulses()});
    return result;
}

TrainResult run_training(const DifferentialCrossbar& projection, DifferentialCrossbar& readout,
                         std::span<const FrameSequence> train, std::span<const FrameSequence> test,
                         std::span<const WindowMask> masks, const TrainConfig& config, EnergyLedger& ledger)
{
    config.validate();
    if (projection.cols() != readout.rows()) throw dimension_error("run_training: hidden size != readout rows");
    const auto train_features = integrate_dataset(projection, train, masks);
    const auto test_features = integrate_dataset(projection, test, masks);
    return run_training(readout, train_features, test_features, config, ledger);
}

}  // namespace nanosyn
