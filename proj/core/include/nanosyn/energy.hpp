#pragma once

// Programming-pulse bookkeeping and conversion to energy for a set of device
// technologies. Only raw write cost is counted; reads, integration and error
// routing are outside the ledger.

#include "nanosyn/device.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nanosyn {

struct TechnologySpec {
    std::string name;
    /// Joules per elementary write pulse.
    double energy_per_write = 0.0;
    /// Metadata only; energy_per_write is authoritative.
    double programming_voltage = 0.0;
    double programming_time = 0.0;

    void validate() const;

    /// Polymeric TBFe nanosynapse: 0.077 uJ per write, 4.4 V, 100 us.
    static TechnologySpec tbfe();
    /// Electrochemical ENODe nanosynapse: 0.325 nJ per write, 0.5 mV, 2 s.
    static TechnologySpec enode();
    /// Looks up a built-in technology by (case-insensitive) name.
    static std::optional<TechnologySpec> builtin(const std::string& name);
};

/// Counts every pulse fired, including pulses into already-saturated devices.
struct EnergyLedger {
    std::uint64_t set_pulses = 0;
    std::uint64_t reset_pulses = 0;

    std::uint64_t total_pulses() const { return set_pulses + reset_pulses; }
    double energy(const TechnologySpec& tech) const
    {
        return static_cast<double>(total_pulses()) * tech.energy_per_write;
    }

    void record(PulseKind kind, std::uint64_t count = 1)
    {
        (kind == PulseKind::set ? set_pulses : reset_pulses) += count;
    }

    /// Accumulates another run's counts (for aggregating parallel runs).
    void merge(const EnergyLedger& other)
    {
        set_pulses += other.set_pulses;
        reset_pulses += other.reset_pulses;
    }

    bool operator==(const EnergyLedger&) const = default;
};

struct Checkpoint {
    std::uint64_t samples_seen = 0;
    double test_accuracy = 0.0;
    std::uint64_t cumulative_pulses = 0;

    bool operator==(const Checkpoint&) const = default;
};

/// Test accuracy and pulse count logged during training; samples_seen strictly increases.
struct ConvergenceTrace {
    std::vector<Checkpoint> checkpoints;

    /// Appends a checkpoint; throws std::logic_error if samples_seen does not increase.
    void add(const Checkpoint& c);
    bool empty() const { return checkpoints.empty(); }
    const Checkpoint& final() const { return checkpoints.back(); }

    /// Earliest checkpoint whose accuracy reaches (1 - loss_fraction) * final accuracy.
    const Checkpoint& earliest_within(double loss_fraction) const;

    bool operator==(const ConvergenceTrace&) const = default;
};

/// One technology's row: energy at full training and at the 10% / 20% loss points.
struct EnergyRow {
    std::string technology;
    double full_performance = 0.0;
    double loss_10 = 0.0;
    double loss_20 = 0.0;
    std::uint64_t pulses_full = 0;
    std::uint64_t pulses_loss_10 = 0;
    std::uint64_t pulses_loss_20 = 0;
};

struct EnergyReport {
    std::vector<EnergyRow> rows;
    /// Samples needed to reach the 10% / 20% loss points.
    std::uint64_t samples_loss_10 = 0;
    std::uint64_t samples_loss_20 = 0;
};

/// Builds the full / 10% loss / 20% loss table. The full-training column uses the
/// ledger total; loss columns use the trace's cumulative pulse counts.
/// Throws std::invalid_argument when the trace is empty.
EnergyReport report(const EnergyLedger& ledger, const std::vector<TechnologySpec>& techs,
                    const ConvergenceTrace& trace);

}  // namespace nanosyn
