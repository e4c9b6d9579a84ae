#include "nanosyn/spatiotemporal.hpp"

#include "nanosyn/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace nanosyn {

void FrameSequence::validate() const
{
    if (n_frames < 1) throw parameter_error("frame sequence: needs at least one frame");
    if (n_channels < 1) throw parameter_error("frame sequence: needs at least one channel");
    if (values.size() != n_channels * n_frames) throw parameter_error("frame sequence: value count mismatch");
    for (const float v : values) {
        bool ok = false;
        switch (mode) {
        case ValueMode::analog_unit: ok = v >= 0.0f && v <= 1.0f; break;
        case ValueMode::analog_signed: ok = v >= -1.0f && v <= 1.0f; break;
        case ValueMode::binary: ok = v == 0.0f || v == 1.0f; break;
        }
        if (!ok) throw parameter_error("frame sequence: value " + std::to_string(v) + " outside declared range");
    }
}

std::size_t WindowMask::count() const
{
    return static_cast<std::size_t>(std::count_if(included.begin(), included.end(), [](auto b) { return b != 0; }));
}

std::vector<WindowMask> generate_masks(std::size_t neurons, std::size_t max_frames, double density,
                                       std::uint64_t rng_seed)
{
    if (!(density > 0.0 && density <= 1.0)) throw parameter_error("generate_masks: density must lie in (0, 1]");
    rng_t rng(rng_seed);
    std::vector<WindowMask> masks(neurons);
    for (auto& mask : masks) {
        mask.density = density;
        mask.included.resize(max_frames);
        for (auto& bit : mask.included) bit = bernoulli(rng, density) ? 1 : 0;
    }
    return masks;
}

HiddenActivation integrate_sample(const DifferentialCrossbar& projection, const FrameSequence& sample,
                                  std::span<const WindowMask> masks, TieBreak tie)
{
    if (sample.n_channels != projection.rows())
        throw dimension_error("integrate_sample: sample has " + std::to_string(sample.n_channels) +
                              " channels, projection has " + std::to_string(projection.rows()) + " rows");
    if (masks.size() != projection.cols())
        throw dimension_error("integrate_sample: mask count != hidden size");

    const std::size_t hidden = projection.cols();
    HiddenActivation act;
    act.accumulators.assign(hidden, 0.0);
    act.outputs.resize(hidden);

    std::vector<double> currents(hidden);
    for (std::size_t f = 0; f < sample.n_frames; ++f) {
        projection.forward(sample.frame(f), currents);
        for (std::size_t m = 0; m < hidden; ++m)
            if (masks[m].includes(f)) act.accumulators[m] += currents[m];
    }
    for (std::size_t m = 0; m < hidden; ++m) act.outputs[m] = sign_of(act.accumulators[m], tie);
    return act;
}

std::vector<double> integrate_channels(const FrameSequence& sample, std::span<const WindowMask> masks)
{
    if (masks.size() != sample.n_channels) throw dimension_error("integrate_channels: mask count != channels");
    std::vector<double> out(sample.n_channels, 0.0);
    for (std::size_t f = 0; f < sample.n_frames; ++f)
        for (std::size_t i = 0; i < sample.n_channels; ++i)
            if (masks[i].includes(f)) out[i] += sample.at(i, f);
    return out;
}

}  // namespace nanosyn
