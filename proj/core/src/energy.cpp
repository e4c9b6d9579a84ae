#include "nanosyn/energy.hpp"

#include "nanosyn/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nanosyn {

void TechnologySpec::validate() const
{
    if (name.empty()) throw parameter_error("technology: empty name");
    if (!(energy_per_write > 0.0)) throw parameter_error("technology " + name + ": energy_per_write must be positive");
}

TechnologySpec TechnologySpec::tbfe()
{
    return {"TBFe", 0.077e-6, 4.4, 100e-6};
}

TechnologySpec TechnologySpec::enode()
{
    return {"ENODe", 0.325e-9, 0.5e-3, 2.0};
}

std::optional<TechnologySpec> TechnologySpec::builtin(const std::string& name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "tbfe") return tbfe();
    if (lower == "enode") return enode();
    return std::nullopt;
}

void ConvergenceTrace::add(const Checkpoint& c)
{
    if (!checkpoints.empty() && c.samples_seen <= checkpoints.back().samples_seen)
        throw std::logic_error("convergence trace: samples_seen must strictly increase");
    checkpoints.push_back(c);
}

const Checkpoint& ConvergenceTrace::earliest_within(double loss_fraction) const
{
    if (checkpoints.empty()) throw std::invalid_argument("convergence trace is empty");
    const double target = (1.0 - loss_fraction) * final().test_accuracy;
    for (const auto& c : checkpoints)
        if (c.test_accuracy >= target) return c;
    return final();
}

EnergyReport report(const EnergyLedger& ledger, const std::vector<TechnologySpec>& techs,
                    const ConvergenceTrace& trace)
{
    if (trace.empty())
        throw std::invalid_argument("energy report: convergence trace has no accuracy checkpoints");

    const auto& at10 = trace.earliest_within(0.10);
    const auto& at20 = trace.earliest_within(0.20);

    EnergyReport out;
    out.samples_loss_10 = at10.samples_seen;
    out.samples_loss_20 = at20.samples_seen;
    for (const auto& tech : techs) {
        tech.validate();
        EnergyRow row;
        row.technology = tech.name;
        row.pulses_full = ledger.total_pulses();
        row.pulses_loss_10 = at10.cumulative_pulses;
        row.pulses_loss_20 = at20.cumulative_pulses;
        row.full_performance = ledger.energy(tech);
        row.loss_10 = static_cast<double>(at10.cumulative_pulses) * tech.energy_per_write;
        row.loss_20 = static_cast<double>(at20.cumulative_pulses) * tech.energy_per_write;
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace nanosyn
