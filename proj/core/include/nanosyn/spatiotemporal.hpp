#pragma once

// Hidden neurons that integrate projection-layer currents over time frames and emit
// a binary excitatory/inhibitory activation. Each neuron integrates either every
// frame (uniform scheme) or a fixed random subset of frame indices (variable scheme).

#include "nanosyn/crossbar.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nanosyn {

/// Declared value range of a sample.
enum class ValueMode : std::uint8_t {
    /// [0, 1], e.g. pixel intensities.
    analog_unit,
    /// [-1, 1], e.g. cochleagram channels.
    analog_signed,
    /// {0, 1} spikes.
    binary,
};

/// One labeled sample: n_channels x n_frames values stored frame-major.
struct FrameSequence {
    int label = 0;
    std::size_t n_channels = 0;
    std::size_t n_frames = 0;
    ValueMode mode = ValueMode::analog_unit;
    std::vector<float> values;

    FrameSequence() = default;
    FrameSequence(int label, std::size_t channels, std::size_t frames, ValueMode mode)
      : label(label), n_channels(channels), n_frames(frames), mode(mode), values(channels * frames, 0.0f)
    {
    }

    float& at(std::size_t channel, std::size_t frame) { return values[frame * n_channels + channel]; }
    float at(std::size_t channel, std::size_t frame) const { return values[frame * n_channels + channel]; }

    std::span<const float> frame(std::size_t f) const { return {values.data() + f * n_channels, n_channels}; }

    /// Throws parameter_error on shape or range violations for the declared mode.
    void validate() const;

    bool operator==(const FrameSequence&) const = default;
};

/// Frame indices one hidden neuron integrates. Fixed once generated.
struct WindowMask {
    /// included[f] != 0 when frame f is integrated; covers frames [0, max_frames).
    std::vector<std::uint8_t> included;
    double density = 1.0;

    bool includes(std::size_t frame) const { return frame < included.size() && included[frame] != 0; }
    std::size_t count() const;
    std::size_t max_frames() const { return included.size(); }

    bool operator==(const WindowMask&) const = default;
};

/// Each neuron includes each frame index independently with probability `density`.
/// density == 1 yields the uniform scheme. Throws parameter_error unless 0 < density <= 1.
std::vector<WindowMask> generate_masks(std::size_t neurons, std::size_t max_frames, double density,
                                       std::uint64_t rng_seed);

enum class TieBreak : std::uint8_t { zero_is_positive, zero_is_negative };

inline std::int8_t sign_of(double x, TieBreak tie = TieBreak::zero_is_positive)
{
    if (x > 0.0) return 1;
    if (x < 0.0) return -1;
    return tie == TieBreak::zero_is_positive ? 1 : -1;
}

struct HiddenActivation {
    /// Pre-sign sums, one per neuron.
    std::vector<double> accumulators;
    /// +1 / -1 per neuron.
    std::vector<std::int8_t> outputs;
};

/// accumulators[m] = sum over frames f in mask_m (and f < n_frames) of forward(X[:, f])[m];
/// outputs = sign with the given tie-break. Mask frames beyond the sample are ignored.
/// Throws dimension_error when channels != projection rows or masks.size() != projection cols.
HiddenActivation integrate_sample(const DifferentialCrossbar& projection, const FrameSequence& sample,
                                  std::span<const WindowMask> masks,
                                  TieBreak tie = TieBreak::zero_is_positive);

/// Per-channel integration with no projection layer: out[i] = sum over frames in mask_i of X[i, f].
/// Used by the one-layer baseline; masks are indexed by channel.
std::vector<double> integrate_channels(const FrameSequence& sample, std::span<const WindowMask> masks);

}  // namespace nanosyn
