#pragma once

// End-to-end experiment runs: dataset preparation, projection + masks, online
// readout training, optional least-squares oracle, energy report, and sweeps.

#include "nanosyn/config.hpp"
#include "nanosyn/energy.hpp"
#include "nanosyn/learning.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nanosyn {

enum class SystemKind : std::uint8_t { two_layer, one_layer };

struct MetricsRecord {
    ExperimentConfig config;
    SystemKind system = SystemKind::two_layer;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::size_t n_channels = 0;
    std::size_t n_classes = 0;
    std::size_t max_frames = 0;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    std::optional<double> oracle_test_accuracy;
    std::optional<double> oracle_train_accuracy;
    EnergyLedger ledger;
    ConvergenceTrace trace;
    EnergyReport energy;
};

/// Dataset after subsetting, spike encoding and noise injection.
Dataset prepare_dataset(const ExperimentConfig& config);

/// Intermediate products of a run, kept for snapshots and tests.
struct RunArtifacts {
    DifferentialCrossbar projection;
    DifferentialCrossbar readout;
    std::vector<WindowMask> masks;
};

/// Two-layer system. `artifacts`, when non-null, receives the crossbars and masks.
MetricsRecord run_experiment(const ExperimentConfig& config, RunArtifacts* artifacts = nullptr);

/// Same as run_experiment on an already prepared dataset (lets sweeps share loading).
MetricsRecord run_experiment(const ExperimentConfig& config, const Dataset& data, RunArtifacts* artifacts = nullptr);

/// Readout trained directly on per-channel integrated inputs (no projection, no sign).
MetricsRecord run_baseline_onelayer(const ExperimentConfig& config);
MetricsRecord run_baseline_onelayer(const ExperimentConfig& config, const Dataset& data);

enum class SweepAxis : std::uint8_t { hidden_size, density, sigma, noise };

SweepAxis parse_sweep_axis(const std::string& name);
std::string to_string(SweepAxis axis);

/// Copy of `base` with the axis set to `value` and repetition-derived seeds. sigma > 0
/// switches to imperfect devices; the noise axis always uses spiking input.
ExperimentConfig sweep_point(const ExperimentConfig& base, SweepAxis axis, double value, std::size_t repetition);

struct SweepRow {
    double value = 0.0;
    std::size_t repetition = 0;
    bool ok = false;
    std::string error;
    MetricsRecord record;
};

/// Runs every (value, repetition) pair with up to `workers` concurrent runs. A failing
/// point is recorded and the sweep continues. Rows are sorted by value then repetition,
/// and on_row sees them in that order, one at a time.
std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepAxis axis, const std::vector<double>& values,
                                std::size_t repetitions, unsigned workers = 1,
                                const std::function<void(const SweepRow&)>& on_row = {});

/// Metrics record as pretty-printed JSON; the "config" object holds every key.
std::string to_json(const MetricsRecord& record);
/// Rebuilds the config embedded in a metrics JSON record.
ExperimentConfig config_from_record(const std::string& json_text);

/// Tidy CSV: one row per checkpoint.
std::string trace_csv(const ConvergenceTrace& trace);
/// technology,full_performance_J,loss_10_J,loss_20_J,pulses_full,pulses_loss_10,pulses_loss_20
std::string energy_csv(const EnergyReport& report);
/// axis,value,repetition,status,test_accuracy,train_accuracy,pulses,<tech>_J...,error
std::string sweep_csv_header(const std::vector<std::string>& technologies);
std::string sweep_csv_row(SweepAxis axis, const SweepRow& row, const std::vector<std::string>& technologies);
std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows, const std::vector<std::string>& technologies);
/// axis,value,runs,failed,mean_accuracy,std_accuracy,min_accuracy,max_accuracy,mean_pulses
std::string sweep_summary_csv(SweepAxis axis, const std::vector<SweepRow>& rows);

}  // namespace nanosyn
