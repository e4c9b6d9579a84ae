#include "nanosyn/crossbar.hpp"

#include "nanosyn/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nanosyn {

namespace {

template <typename T>
void forward_impl(std::size_t rows, std::size_t cols, const std::vector<double>& weights,
                  std::span<const T> input, std::span<double> out)
{
    if (input.size() != rows)
        throw dimension_error("crossbar forward: input length " + std::to_string(input.size()) +
                              " != rows " + std::to_string(rows));
    if (out.size() != cols)
        throw dimension_error("crossbar forward: output length " + std::to_string(out.size()) +
                              " != cols " + std::to_string(cols));
    std::fill(out.begin(), out.end(), 0.0);
    const double* w = weights.data();
    double* o = out.data();
    for (std::size_t i = 0; i < rows; ++i, w += cols) {
        const double x = static_cast<double>(input[i]);
        if (x == 0.0) continue;
        for (std::size_t j = 0; j < cols; ++j) o[j] += x * w[j];
    }
}

}  // namespace

DifferentialCrossbar::DifferentialCrossbar(std::size_t rows, std::size_t cols, const DeviceParams& params,
                                           int initial_step)
  : rows_(rows), cols_(cols)
{
    params.validate();
    if (initial_step < 0 || initial_step > params.n_states)
        throw parameter_error("crossbar: initial step outside [0, n_states]");
    pos_.assign(rows * cols, DeviceState{params, initial_step});
    neg_ = pos_;
    weights_.assign(rows * cols, 0.0);
}

DifferentialCrossbar::DifferentialCrossbar(std::size_t rows, std::size_t cols, std::vector<DeviceState> positive,
                                           std::vector<DeviceState> negative, bool frozen)
  : rows_(rows), cols_(cols), pos_(std::move(positive)), neg_(std::move(negative)), frozen_(frozen)
{
    if (pos_.size() != rows * cols || neg_.size() != rows * cols)
        throw dimension_error("crossbar: device matrices do not match rows x cols");
    weights_.resize(rows * cols);
    for (std::size_t k = 0; k < weights_.size(); ++k) refresh_weight(k);
}

std::vector<double> DifferentialCrossbar::forward(std::span<const double> input) const
{
    std::vector<double> out(cols_);
    forward(input, out);
    return out;
}

void DifferentialCrossbar::forward(std::span<const double> input, std::span<double> out) const
{
    forward_impl(rows_, cols_, weights_, input, out);
}

void DifferentialCrossbar::forward(std::span<const float> input, std::span<double> out) const
{
    forward_impl(rows_, cols_, weights_, input, out);
}

std::uint64_t DifferentialCrossbar::program_column(std::size_t col, std::span<const std::int8_t> directions,
                                                   EnergyLedger& ledger, const ProgrammingPulses& pulses,
                                                   const StepFunction& step)
{
    if (frozen_) throw std::logic_error("program_column: crossbar is frozen (projection layer)");
    if (col >= cols_) throw dimension_error("program_column: column index out of range");
    if (directions.size() != rows_) throw dimension_error("program_column: directions length != rows");

    std::uint64_t fired = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        const auto d = directions[i];
        if (d == 0) continue;
        const std::size_t k = i * cols_ + col;
        const PulseSpec& to_pos = d > 0 ? pulses.set : pulses.reset;
        const PulseSpec& to_neg = d > 0 ? pulses.reset : pulses.set;
        pos_[k] = apply_pulse(pos_[k], to_pos, step).state;
        neg_[k] = apply_pulse(neg_[k], to_neg, step).state;
        ledger.record(to_pos.kind);
        ledger.record(to_neg.kind);
        fired += 2;
        refresh_weight(k);
    }
    return fired;
}

DifferentialCrossbar init_projection(std::size_t rows, std::size_t cols, const ProjectionInitSpec& spec)
{
    if (rows == 0 || cols == 0) throw dimension_error("init_projection: dimensions must be positive");
    spec.dispersion.validate();

    // Extremum choices and parameter draws use separate streams so the ON/OFF pattern
    // depends only on the seed, not on the dispersion.
    rng_t pick(spec.rng_seed);
    rng_t params_rng(derive_seed(spec.rng_seed, 0x5eed));
    const bool dispersed = spec.mode == ProjectionMode::gaussian_imperfect;

    auto make = [&] {
        const bool on = bernoulli(pick, 0.5);
        const DeviceParams p = dispersed ? sample_imperfect(spec.dispersion, params_rng) : spec.dispersion.means;
        return on ? DeviceState::at_max(p) : DeviceState::at_min(p);
    };

    std::vector<DeviceState> pos, neg;
    pos.reserve(rows * cols);
    neg.reserve(rows * cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        pos.push_back(make());
        neg.push_back(make());
    }
    return DifferentialCrossbar(rows, cols, std::move(pos), std::move(neg), /*frozen=*/true);
}

DifferentialCrossbar init_readout(std::size_t rows, std::size_t cols, const ReadoutInitSpec& spec)
{
    if (rows == 0 || cols == 0) throw dimension_error("init_readout: dimensions must be positive");
    spec.dispersion.validate();

    rng_t params_rng(derive_seed(spec.rng_seed, 0x5eed));
    rng_t level_rng(spec.rng_seed);
    auto make = [&] {
        const DeviceParams p = sample_imperfect(spec.dispersion, params_rng);
        int step = 0;
        switch (spec.mode) {
        case ReadoutInit::at_min: step = 0; break;
        case ReadoutInit::midpoint: step = p.n_states / 2; break;
        case ReadoutInit::random:
            step = static_cast<int>(uniform01(level_rng) * (p.n_states + 1));
            break;
        }
        return DeviceState{p, step};
    };

    std::vector<DeviceState> pos, neg;
    pos.reserve(rows * cols);
    neg.reserve(rows * cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        pos.push_back(make());
        neg.push_back(make());
    }
    return DifferentialCrossbar(rows, cols, std::move(pos), std::move(neg));
}

}  // namespace nanosyn
