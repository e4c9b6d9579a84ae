#pragma once

// Plain-text dumps of crossbars and window masks for run reproduction and inspection.
//
// Crossbar CSV:
//   # nanosyn-crossbar v1
//   rows,<R>,cols,<C>,frozen,<0|1>
//   side,row,col,step,g_min,g_max,v_th1,v_th2,n_states
//   pos,0,0,128,2.1e-06,6.95e-05,3.1,5.5,128
//   ...  (R*C "pos" lines then R*C "neg" lines, row-major; doubles printed with 17 digits)
//
// Masks:
//   # nanosyn-masks v1
//   neurons,<M>,max_frames,<F>,density,<rho>
//   0110...  (one line of F '0'/'1' characters per neuron)

#include "nanosyn/crossbar.hpp"
#include "nanosyn/spatiotemporal.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace nanosyn {

void write_crossbar(std::ostream& out, const DifferentialCrossbar& xbar);
DifferentialCrossbar read_crossbar(std::istream& in);
void save_crossbar(const std::filesystem::path& path, const DifferentialCrossbar& xbar);
DifferentialCrossbar load_crossbar(const std::filesystem::path& path);

void write_masks(std::ostream& out, const std::vector<WindowMask>& masks);
std::vector<WindowMask> read_masks(std::istream& in);
void save_masks(const std::filesystem::path& path, const std::vector<WindowMask>& masks);
std::vector<WindowMask> load_masks(const std::filesystem::path& path);

struct CrossbarSummary {
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool frozen = false;
    double weight_min = 0.0;
    double weight_max = 0.0;
    double weight_mean = 0.0;
    /// Fraction of devices sitting at step 0 or n_states.
    double saturated_fraction = 0.0;
    /// Device count per step-index decile (10 bins over [0, n_states]).
    std::vector<std::size_t> step_histogram;
};

CrossbarSummary summarize(const DifferentialCrossbar& xbar);

}  // namespace nanosyn
