#pragma once

// Experiment configuration. Every field has a string key; a config file is a list of
// `key = value` lines (blank lines and `#` comments ignored). Command-line overrides use
// the same keys, and are applied after the file, which is applied after the defaults.

#include "nanosyn/crossbar.hpp"
#include "nanosyn/data.hpp"
#include "nanosyn/energy.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nanosyn {

enum class Task : std::uint8_t { mnist_frames, cochleagram, synthetic_cochleagram };
enum class DeviceMode : std::uint8_t { perfect, imperfect };
enum class InputMode : std::uint8_t { analog, spiking };
enum class ProjectionChoice : std::uint8_t { automatic, binary, gaussian };

/// Independent seeds for every stochastic stage.
struct SeedSet {
    std::uint64_t projection = 11;
    std::uint64_t masks = 12;
    std::uint64_t shuffle = 13;
    std::uint64_t noise = 14;
    std::uint64_t device = 15;
    std::uint64_t data = 16;

    /// Seeds for repetition `rep` of a sweep point; repetition 0 keeps the base seeds.
    SeedSet for_repetition(std::uint64_t rep) const;
    bool operator==(const SeedSet&) const = default;
};

struct ExperimentConfig {
    Task task = Task::mnist_frames;
    std::size_t hidden_size = 1200;
    double mask_density = 0.25;
    /// Frame range the masks cover; 0 derives it from the longest sample.
    std::size_t max_frames = 0;

    DeviceMode device_mode = DeviceMode::perfect;
    double sigma = 0.0;
    ProjectionChoice projection = ProjectionChoice::automatic;
    ReadoutInit readout_init = ReadoutInit::at_min;

    InputMode input_mode = InputMode::analog;
    double noise = 0.0;

    /// 0 selects the task default (1 for MNIST, 10 for cochleagram tasks).
    int epochs = 0;
    /// 0 logs 20 evenly spaced checkpoints.
    std::size_t log_interval = 0;
    /// 0 keeps the whole split.
    std::size_t max_train = 0;
    std::size_t max_test = 0;

    SeedSet seeds{};
    std::vector<std::string> technologies{"TBFe", "ENODe"};

    MnistFrameAxis mnist_axis = MnistFrameAxis::columns;
    std::filesystem::path mnist_dir = "data/mnist";
    std::filesystem::path train_path;
    std::filesystem::path test_path;

    std::size_t synthetic_samples = 500;
    std::size_t synthetic_train = 350;
    std::size_t synthetic_classes = 10;
    double synthetic_noise_sd = 0.15;

    /// Also fit the least-squares oracle on the same hidden activations.
    bool oracle = false;
    double oracle_lambda = 1.0;

    /// Threads for hidden-layer integration (results do not depend on it).
    unsigned workers = 1;

    /// Sets one field from its string form. Throws config_error on unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
    /// All keys and values in a fixed order.
    std::vector<std::pair<std::string, std::string>> to_pairs() const;

    /// Copy with task-dependent defaults (epochs) filled in.
    ExperimentConfig resolved() const;
    /// Throws config_error on invalid combinations.
    void validate() const;

    std::vector<TechnologySpec> technology_specs() const;
    DatasetKind dataset_kind() const { return task == Task::mnist_frames ? DatasetKind::mnist : DatasetKind::cochleagram; }

    bool operator==(const ExperimentConfig&) const = default;
};

/// Known keys, in to_pairs() order.
const std::vector<std::string>& config_keys();

/// Parses `key = value` text. Throws config_error with the line number on malformed lines.
std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text);

/// Defaults <- file (optional) <- overrides.
ExperimentConfig load_config(const std::filesystem::path& file,
                             const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Splits "key=value" into its parts. Throws config_error when '=' is missing.
std::pair<std::string, std::string> split_override(const std::string& text);

std::string to_string(Task task);
std::string to_string(DeviceMode mode);
std::string to_string(InputMode mode);

}  // namespace nanosyn
