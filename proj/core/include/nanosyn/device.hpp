#pragma once

// Behavioral model of a single analog nanosynapse programmed with constant-amplitude
// pulses. Conductance lives on a uniform grid of `n_states` steps between g_min and
// g_max; the state is stored as the integer step index so repeated programming never
// drifts off the grid.

#include "nanosyn/random.hpp"

#include <cstdint>

namespace nanosyn {

/// Bounds, thresholds and quantization of one device. Conductances in siemens, voltages in volts.
struct DeviceParams {
    double g_min = 2.1e-6;
    double g_max = 69.5e-6;
    /// Set threshold.
    double v_th1 = 3.1;
    /// Reset threshold.
    double v_th2 = 5.5;
    int n_states = 128;

    double write_range() const { return g_max - g_min; }
    double step_size() const { return write_range() / n_states; }

    /// Throws parameter_error unless g_max > g_min > 0, v_th2 > v_th1 > 0 and n_states >= 2.
    void validate() const;

    bool operator==(const DeviceParams&) const = default;
};

enum class PulseKind : std::uint8_t { set, reset };

struct PulseSpec {
    PulseKind kind = PulseKind::set;
    double amplitude = 3.3;
    double duration = 100e-6;

    /// V_p- = 3.3 V, 100 us.
    static PulseSpec set_pulse() { return {PulseKind::set, 3.3, 100e-6}; }
    /// V_p+ = 5.5 V, 100 us.
    static PulseSpec reset_pulse() { return {PulseKind::reset, 5.5, 100e-6}; }

    /// Checks the pulse lands in its intended window for `nominal`.
    void validate_against(const DeviceParams& nominal) const;
};

/// Relative Gaussian spread applied independently to g_min, g_max, v_th1 and v_th2.
struct DispersionSpec {
    double sigma_fraction = 0.0;
    DeviceParams means{};

    void validate() const;
};

/// What a pulse of a given amplitude does to a device with given thresholds.
enum class PulseResponse : std::int8_t { depress = -1, none = 0, potentiate = 1 };

/// Classifies |amplitude| against the device's own thresholds:
///   v_th1 < |V| < v_th2  -> potentiate
///   |V| >= v_th2         -> depress
///   |V| <= v_th1         -> none
PulseResponse classify(const DeviceParams& params, double amplitude);

/// Conductance change per pulse, in grid steps. The linear constant-pulse model
/// returns 1 regardless of overdrive; other models can scale with it.
class StepFunction {
public:
    virtual ~StepFunction() = default;
    virtual int steps(const DeviceParams& params, double overdrive) const = 0;
};

class LinearStep final : public StepFunction {
public:
    int steps(const DeviceParams&, double) const override { return 1; }
};

const StepFunction& linear_step();

struct DeviceState {
    DeviceParams params{};
    int step_index = 0;

    /// g_min + step_index * write_range / n_states, with the top step pinned to g_max exactly.
    double conductance() const;

    bool operator==(const DeviceState&) const = default;

    static DeviceState at_min(const DeviceParams& p) { return {p, 0}; }
    static DeviceState at_max(const DeviceParams& p) { return {p, p.n_states}; }
};

struct PulseOutcome {
    DeviceState state;
    PulseResponse response = PulseResponse::none;
    /// The device wanted to move but was already at the corresponding bound.
    bool saturated = false;
};

PulseOutcome apply_pulse(const DeviceState& state, const PulseSpec& pulse,
                         const StepFunction& step = linear_step());

/// Draws one imperfect device. Each dispersed field is N(mean, sigma_fraction * mean);
/// whole draws are rejected until the DeviceParams invariants hold. Throws sampling_error
/// after `max_attempts` rejections.
DeviceParams sample_imperfect(const DispersionSpec& spec, rng_t& rng, int max_attempts = 1000);
DeviceParams sample_imperfect(const DispersionSpec& spec, std::uint64_t seed);

}  // namespace nanosyn
