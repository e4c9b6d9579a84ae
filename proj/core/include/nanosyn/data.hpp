#pragma once

// Dataset ingestion and presentation: MNIST IDX files replayed as 28 frames,
// a binary cochleagram container, spike encoding and bit-flip channel noise.

#include "nanosyn/spatiotemporal.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace nanosyn {

struct Dataset {
    std::vector<FrameSequence> train;
    std::vector<FrameSequence> test;
};

enum class DatasetKind : std::uint8_t { mnist, cochleagram };

/// Which image axis is replayed over time. `columns`: frame f is image column f and the
/// 28 pixels of that column drive the 28 channels. `rows`: frame f is image row f.
enum class MnistFrameAxis : std::uint8_t { rows, columns };

/// Raw IDX tensor (unsigned byte payloads only).
struct IdxArray {
    std::vector<std::uint32_t> dims;
    std::vector<std::uint8_t> data;
};

/// Parses an IDX file with an unsigned-byte payload. Errors: io, bad_magic, truncated.
IdxArray read_idx(const std::filesystem::path& path);

/// Pairs an idx3 image file with an idx1 label file; pixels are scaled by 1/255.
/// Errors: io, bad_magic (0x00000803 / 0x00000801 expected), truncated,
/// dimension_mismatch (count mismatch or images that are not 28 x 28).
std::vector<FrameSequence> load_mnist(const std::filesystem::path& images, const std::filesystem::path& labels,
                                      MnistFrameAxis axis = MnistFrameAxis::columns);

/// Loads `train-*` and `t10k-*` IDX files from a directory.
Dataset load_mnist_dir(const std::filesystem::path& dir, MnistFrameAxis axis = MnistFrameAxis::columns);

/// Cochleagram container (all integers little-endian):
///   8 bytes  magic "NSCOCHLG"
///   u32      version (1)
///   u32      channel count
///   u32      sample count
///   per sample: u8 label, u32 frame count, frames * channels f32 values, frame-major
inline constexpr char cochleagram_magic[8] = {'N', 'S', 'C', 'O', 'C', 'H', 'L', 'G'};
inline constexpr std::uint32_t cochleagram_version = 1;

/// Errors: io, bad_magic, version_mismatch, truncated, range_violation (values outside [-1, 1]).
std::vector<FrameSequence> load_cochleagram(const std::filesystem::path& path);

/// Writes samples (all with the same channel count) in the container format above.
/// `channels` is used for the header when `samples` is empty.
void save_cochleagram(const std::filesystem::path& path, std::span<const FrameSequence> samples,
                      std::uint32_t channels = 77);

/// Cochleagram: value > 0 spikes. MNIST: value > 0.5 spikes. Output mode is binary.
FrameSequence encode_spiking(const FrameSequence& sample, DatasetKind kind);

struct NoiseSpec {
    double flip_probability = 0.0;
    std::uint64_t rng_seed = 1;
};

/// Flips each element of a binary sample independently with flip_probability.
/// Throws data_error(mode_mismatch) on analog input, parameter_error on a bad probability.
FrameSequence inject_noise(const FrameSequence& sample, const NoiseSpec& spec);

}  // namespace nanosyn
