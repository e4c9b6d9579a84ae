#include "nanosyn/synthetic.hpp"

#include "nanosyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace nanosyn {

void SyntheticSpec::validate() const
{
    if (n_classes < 1 || n_classes > 256) throw parameter_error("synthetic: n_classes must be in [1, 256]");
    if (n_train > n_samples) throw parameter_error("synthetic: n_train exceeds n_samples");
    if (n_channels < 1) throw parameter_error("synthetic: n_channels must be positive");
    if (min_frames < 1 || max_frames < min_frames) throw parameter_error("synthetic: bad frame range");
    if (bands < bands_per_segment || bands_per_segment < 1) throw parameter_error("synthetic: bad band counts");
    if (speakers < 1 || segments < 1) throw parameter_error("synthetic: speakers and segments must be positive");
    if (!(noise_sd >= 0.0)) throw parameter_error("synthetic: noise_sd must be non-negative");
}

namespace {

struct Band {
    double center;
    double width;
};

struct Segment {
    std::vector<std::size_t> bands;
    std::vector<double> amplitudes;
};

using Prototype = std::vector<Segment>;

double uniform(rng_t& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

std::size_t pick(rng_t& rng, std::size_t n)
{
    return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

}  // namespace

Dataset generate_synthetic_cochleagrams(const SyntheticSpec& spec)
{
    spec.validate();
    rng_t rng(spec.rng_seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const double edge = std::min(4.0, static_cast<double>(spec.n_channels) / 4.0);
    std::vector<Band> bands(spec.bands);
    for (auto& b : bands) {
        b.center = uniform(rng, edge, static_cast<double>(spec.n_channels) - edge);
        b.width = uniform(rng, spec.min_band_width, spec.max_band_width);
    }

    std::vector<std::vector<Prototype>> prototypes(spec.n_classes, std::vector<Prototype>(spec.speakers));
    for (auto& per_class : prototypes)
        for (auto& proto : per_class) {
            proto.resize(spec.segments);
            for (auto& seg : proto) {
                std::vector<std::size_t> pool(spec.bands);
                std::iota(pool.begin(), pool.end(), std::size_t{0});
                shuffle(pool, rng);
                seg.bands.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(spec.bands_per_segment));
                for (std::size_t k = 0; k < spec.bands_per_segment; ++k) seg.amplitudes.push_back(uniform(rng, 0.5, 1.0));
            }
        }

    std::vector<FrameSequence> all;
    all.reserve(spec.n_samples);
    std::vector<double> boundaries(spec.segments - 1);
    std::vector<double> envelope(spec.n_channels);
    for (std::size_t n = 0; n < spec.n_samples; ++n) {
        const int label = static_cast<int>(n % spec.n_classes);
        const Prototype& proto = prototypes[static_cast<std::size_t>(label)][pick(rng, spec.speakers)];
        const std::size_t frames = spec.min_frames + pick(rng, spec.max_frames - spec.min_frames + 1);
        for (std::size_t k = 0; k < boundaries.size(); ++k) {
            const double nominal = static_cast<double>(k + 1) / static_cast<double>(spec.segments);
            boundaries[k] = std::clamp(nominal + uniform(rng, -spec.boundary_jitter, spec.boundary_jitter), 0.05, 0.95);
        }
        std::sort(boundaries.begin(), boundaries.end());
        const double shift = uniform(rng, -spec.max_shift, spec.max_shift);
        const double gain = uniform(rng, 1.0 - spec.gain_jitter, 1.0 + spec.gain_jitter);

        FrameSequence s(label, spec.n_channels, frames, ValueMode::analog_signed);
        for (std::size_t t = 0; t < frames; ++t) {
            const double pos = (static_cast<double>(t) + 0.5) / static_cast<double>(frames);
            const auto seg_index = static_cast<std::size_t>(
                std::upper_bound(boundaries.begin(), boundaries.end(), pos) - boundaries.begin());
            const Segment& seg = proto[seg_index];
            std::fill(envelope.begin(), envelope.end(), 0.0);
            for (std::size_t k = 0; k < seg.bands.size(); ++k) {
                const Band& b = bands[seg.bands[k]];
                for (std::size_t c = 0; c < spec.n_channels; ++c) {
                    const double d = (static_cast<double>(c) - b.center - shift) / b.width;
                    envelope[c] += seg.amplitudes[k] * std::exp(-0.5 * d * d);
                }
            }
            for (std::size_t c = 0; c < spec.n_channels; ++c) {
                const double v = spec.baseline + spec.contrast * gain * envelope[c] + spec.noise_sd * normal(rng);
                s.at(c, t) = static_cast<float>(std::clamp(v, -1.0, 1.0));
            }
        }
        all.push_back(std::move(s));
    }

    shuffle(all, rng);
    Dataset out;
    out.train.assign(std::make_move_iterator(all.begin()),
                     std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(spec.n_train)));
    out.test.assign(std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(spec.n_train)),
                    std::make_move_iterator(all.end()));
    return out;
}

}  // namespace nanosyn
