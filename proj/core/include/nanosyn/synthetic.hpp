#pragma once

// Self-contained stand-in for a spoken-digit cochleagram corpus.
//
// Each class owns `speakers` prototypes. A prototype is a sequence of `segments`
// time segments; each segment activates `bands_per_segment` formant bands drawn from
// a shared pool of `bands` Gaussian channel profiles. A sample picks one prototype,
// stretches it to a random frame count, jitters the segment boundaries, shifts every
// band by a random channel offset and scales it by a random gain, then adds white noise:
//
//   value(c, t) = clip(baseline + contrast * gain * envelope(c, t) + N(0, noise_sd), -1, 1)
//
// Classes share bands, so the time-summed spectrum is only partially informative and a
// purely linear readout on the raw integrated channels does noticeably worse than a
// readout behind a random nonlinear projection.

#include "nanosyn/data.hpp"

#include <cstdint>

namespace nanosyn {

struct SyntheticSpec {
    std::size_t n_samples = 500;
    std::size_t n_train = 350;
    std::size_t n_classes = 10;
    std::size_t n_channels = 77;
    std::size_t min_frames = 50;
    std::size_t max_frames = 100;
    std::size_t bands = 20;
    std::size_t speakers = 2;
    std::size_t segments = 3;
    std::size_t bands_per_segment = 2;
    double min_band_width = 2.0;
    double max_band_width = 5.0;
    /// Uniform per-sample channel shift in [-max_shift, max_shift].
    double max_shift = 1.5;
    /// Uniform per-sample gain in [1 - gain_jitter, 1 + gain_jitter].
    double gain_jitter = 0.3;
    /// Segment boundaries move by up to this fraction of the sample length.
    double boundary_jitter = 0.05;
    double baseline = -0.6;
    double contrast = 1.4;
    double noise_sd = 0.15;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

/// Deterministic given the spec. Classes are balanced (sample i has class i mod n_classes
/// before shuffling); the first n_train shuffled samples form the training split.
Dataset generate_synthetic_cochleagrams(const SyntheticSpec& spec);

}  // namespace nanosyn
