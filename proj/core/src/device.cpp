#include "nanosyn/device.hpp"

#include "nanosyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace nanosyn {

void DeviceParams::validate() const
{
    if (!(g_min > 0.0)) throw parameter_error("device: g_min must be positive");
    if (!(g_max > g_min)) throw parameter_error("device: g_max must exceed g_min");
    if (!(v_th1 > 0.0)) throw parameter_error("device: v_th1 must be positive");
    if (!(v_th2 > v_th1)) throw parameter_error("device: v_th2 must exceed v_th1");
    if (n_states < 2) throw parameter_error("device: n_states must be at least 2");
}

void PulseSpec::validate_against(const DeviceParams& nominal) const
{
    if (!(duration > 0.0)) throw parameter_error("pulse: duration must be positive");
    const auto response = classify(nominal, amplitude);
    if (kind == PulseKind::set && response != PulseResponse::potentiate)
        throw parameter_error("pulse: set amplitude " + std::to_string(amplitude) +
                              " V is outside (v_th1, v_th2)");
    if (kind == PulseKind::reset && response != PulseResponse::depress)
        throw parameter_error("pulse: reset amplitude " + std::to_string(amplitude) +
                              " V is below v_th2");
}

void DispersionSpec::validate() const
{
    if (!(sigma_fraction >= 0.0 && sigma_fraction < 1.0))
        throw parameter_error("dispersion: sigma_fraction must lie in [0, 1)");
    means.validate();
}

PulseResponse classify(const DeviceParams& params, double amplitude)
{
    const double v = std::abs(amplitude);
    if (v >= params.v_th2) return PulseResponse::depress;
    if (v > params.v_th1) return PulseResponse::potentiate;
    return PulseResponse::none;
}

const StepFunction& linear_step()
{
    static const LinearStep instance;
    return instance;
}

double DeviceState::conductance() const
{
    if (step_index >= params.n_states) return params.g_max;
    return params.g_min + step_index * params.step_size();
}

PulseOutcome apply_pulse(const DeviceState& state, const PulseSpec& pulse, const StepFunction& step)
{
    PulseOutcome out{state, classify(state.params, pulse.amplitude), false};
    const double v = std::abs(pulse.amplitude);
    switch (out.response) {
    case PulseResponse::none:
        break;
    case PulseResponse::potentiate: {
        const int delta = step.steps(state.params, v - state.params.v_th1);
        out.saturated = state.step_index >= state.params.n_states;
        out.state.step_index = std::min(state.step_index + delta, state.params.n_states);
        break;
    }
    case PulseResponse::depress: {
        const int delta = step.steps(state.params, v - state.params.v_th2);
        out.saturated = state.step_index <= 0;
        out.state.step_index = std::max(state.step_index - delta, 0);
        break;
    }
    }
    return out;
}

DeviceParams sample_imperfect(const DispersionSpec& spec, rng_t& rng, int max_attempts)
{
    spec.validate();
    if (spec.sigma_fraction == 0.0) return spec.means;

    const auto& m = spec.means;
    const double s = spec.sigma_fraction;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        DeviceParams p = m;
        p.g_min = m.g_min + s * m.g_min * normal(rng);
        p.g_max = m.g_max + s * m.g_max * normal(rng);
        p.v_th1 = m.v_th1 + s * m.v_th1 * normal(rng);
        p.v_th2 = m.v_th2 + s * m.v_th2 * normal(rng);
        if (p.g_min > 0.0 && p.g_max > p.g_min && p.v_th1 > 0.0 && p.v_th2 > p.v_th1) return p;
    }
    throw sampling_error("sample_imperfect: no valid device after " + std::to_string(max_attempts) +
                         " draws (sigma_fraction = " + std::to_string(s) + ")");
}

DeviceParams sample_imperfect(const DispersionSpec& spec, std::uint64_t seed)
{
    rng_t rng(seed);
    return sample_imperfect(spec, rng);
}

}  // namespace nanosyn
