#pragma once

// Rows x columns of differential device pairs. The signed weight of a cell is
// G(pos) - G(neg); a forward pass computes column currents from row voltages.

#include "nanosyn/device.hpp"
#include "nanosyn/energy.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nanosyn {

enum class ProjectionMode : std::uint8_t { binary_perfect, gaussian_imperfect };

struct ProjectionInitSpec {
    ProjectionMode mode = ProjectionMode::binary_perfect;
    /// Device means and spread; sigma is ignored in binary_perfect mode.
    DispersionSpec dispersion{};
    std::uint64_t rng_seed = 1;
};

enum class ReadoutInit : std::uint8_t { at_min, midpoint, random };

struct ReadoutInitSpec {
    ReadoutInit mode = ReadoutInit::at_min;
    /// Zero sigma gives identical perfect devices.
    DispersionSpec dispersion{};
    std::uint64_t rng_seed = 1;
};

/// Pulses used by the pair-update protocol.
struct ProgrammingPulses {
    PulseSpec set = PulseSpec::set_pulse();
    PulseSpec reset = PulseSpec::reset_pulse();
};

class DifferentialCrossbar {
public:
    DifferentialCrossbar() = default;

    /// Every device at `initial_step` of identical `params`.
    DifferentialCrossbar(std::size_t rows, std::size_t cols, const DeviceParams& params = {},
                         int initial_step = 0);

    /// Takes ownership of row-major device matrices; both must hold rows * cols entries.
    DifferentialCrossbar(std::size_t rows, std::size_t cols, std::vector<DeviceState> positive,
                         std::vector<DeviceState> negative, bool frozen = false);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const DeviceState& positive(std::size_t row, std::size_t col) const { return pos_[row * cols_ + col]; }
    const DeviceState& negative(std::size_t row, std::size_t col) const { return neg_[row * cols_ + col]; }
    double weight(std::size_t row, std::size_t col) const { return weights_[row * cols_ + col]; }
    std::span<const double> weights() const { return weights_; }

    /// Projection crossbars are frozen: programming them is a logic error.
    bool frozen() const { return frozen_; }

    /// out[j] = sum_i input[i] * W[i][j]. Throws dimension_error on length mismatch.
    std::vector<double> forward(std::span<const double> input) const;
    void forward(std::span<const double> input, std::span<double> out) const;
    void forward(std::span<const float> input, std::span<double> out) const;

    /// Pair-update of one column. Direction +1 fires Set on the positive device and Reset on
    /// the negative one, -1 the mirror, 0 nothing. Every fired pulse is recorded in `ledger`.
    /// Returns the number of pulses fired.
    std::uint64_t program_column(std::size_t col, std::span<const std::int8_t> directions,
                                 EnergyLedger& ledger, const ProgrammingPulses& pulses = {},
                                 const StepFunction& step = linear_step());

    bool operator==(const DifferentialCrossbar& other) const
    {
        return rows_ == other.rows_ && cols_ == other.cols_ && frozen_ == other.frozen_ &&
               pos_ == other.pos_ && neg_ == other.neg_;
    }

private:
    void refresh_weight(std::size_t index)
    {
        weights_[index] = pos_[index].conductance() - neg_[index].conductance();
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<DeviceState> pos_;
    std::vector<DeviceState> neg_;
    /// Cached pos - neg, kept in sync by every mutation.
    std::vector<double> weights_;
    bool frozen_ = false;
};

/// Fixed random projection. binary_perfect: each device independently at g_min or g_max
/// with probability 1/2. gaussian_imperfect: each device gets its own sampled parameters
/// and sits at a random one of its own extrema. The result is frozen.
DifferentialCrossbar init_projection(std::size_t rows, std::size_t cols, const ProjectionInitSpec& spec);

/// Trainable readout crossbar, optionally with per-device parameter dispersion.
DifferentialCrossbar init_readout(std::size_t rows, std::size_t cols, const ReadoutInitSpec& spec);

}  // namespace nanosyn
