#pragma once

// Online training of the readout crossbar with the sign-conditional rule, argmax
// inference, and a regularized least-squares readout used as a software oracle.

#include "nanosyn/crossbar.hpp"
#include "nanosyn/energy.hpp"
#include "nanosyn/spatiotemporal.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nanosyn {

/// Readout inputs for a whole dataset: one row of `cols` voltages per sample.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> values;
    std::vector<int> labels;

    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols) : rows(rows), cols(cols), values(rows * cols), labels(rows) {}

    std::span<const float> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
    std::span<float> row(std::size_t r) { return {values.data() + r * cols, cols}; }

    Eigen::MatrixXd to_eigen() const;
};

/// Hidden activations (+1/-1) of every sample. Samples are independent, so `workers` > 1
/// fans them out across threads; the result does not depend on the worker count.
FeatureMatrix integrate_dataset(const DifferentialCrossbar& projection, std::span<const FrameSequence> samples,
                                std::span<const WindowMask> masks, TieBreak tie = TieBreak::zero_is_positive,
                                unsigned workers = 1);

struct TrainConfig {
    int epochs = 1;
    std::uint64_t shuffle_seed = 1;
    /// Test accuracy is logged every `log_interval` presented samples (0: only at the end).
    std::size_t log_interval = 0;
    ProgrammingPulses pulses{};

    void validate() const;
};

struct StepOutcome {
    /// Columns whose output sign disagreed with the target (and were programmed).
    std::vector<bool> column_error;
    std::uint64_t pulses = 0;
};

/// Column targets are +1 for `label` and -1 elsewhere. A column whose output sign
/// (sign(0) = +1) matches its target is left untouched; otherwise it is programmed with
/// direction sign(input[i]) * target (zero inputs fire nothing).
StepOutcome train_step(DifferentialCrossbar& readout, std::span<const float> inputs, int label,
                       EnergyLedger& ledger, const ProgrammingPulses& pulses = {});
StepOutcome train_step(DifferentialCrossbar& readout, const HiddenActivation& hidden, int label,
                       EnergyLedger& ledger, const ProgrammingPulses& pulses = {});

/// Argmax over column currents; ties resolve to the lowest class index.
int infer(const DifferentialCrossbar& readout, std::span<const float> inputs);
int infer(const DifferentialCrossbar& readout, const HiddenActivation& hidden);

/// Argmax of each row of `scores`, lowest index on ties.
std::vector<int> argmax_rows(const Eigen::MatrixXd& scores);

double accuracy(const DifferentialCrossbar& readout, const FeatureMatrix& features);
std::vector<int> predict(const DifferentialCrossbar& readout, const FeatureMatrix& features);

/// {+1 correct class, -1 otherwise} target matrix.
Eigen::MatrixXd one_hot_targets(std::span<const int> labels, std::size_t classes);

/// Minimizer of ||A W - Z||^2 + lambda ||W||^2. lambda = 0 gives the least-squares
/// (Moore-Penrose) solution and throws singular_system_error if A has deficient column rank.
Eigen::MatrixXd pseudo_inverse_readout(const Eigen::MatrixXd& activations, const Eigen::MatrixXd& targets,
                                       double regularization);

struct TrainResult {
    ConvergenceTrace trace;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
};

/// Online training on precomputed readout inputs: per epoch the training rows are
/// reshuffled with the seeded RNG, then presented one at a time to train_step.
/// `test` may be empty, in which case logged accuracies are 0.
TrainResult run_training(DifferentialCrossbar& readout, const FeatureMatrix& train, const FeatureMatrix& test,
                         const TrainConfig& config, EnergyLedger& ledger);

/// Full pipeline: integrate every sample through the projection, then train online.
TrainResult run_training(const DifferentialCrossbar& projection, DifferentialCrossbar& readout,
                         std::span<const FrameSequence> train, std::span<const FrameSequence> test,
                         std::span<const WindowMask> masks, const TrainConfig& config, EnergyLedger& ledger);

}  // namespace nanosyn
