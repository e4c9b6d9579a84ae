#include "nanosyn/snapshot.hpp"

#include "nanosyn/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace nanosyn {

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

std::string next_line(std::istream& in, const char* what)
{
    std::string line;
    if (!std::getline(in, line)) throw data_error(data_error_kind::truncated, std::string("snapshot: missing ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::size_t to_size(const std::string& s)
{
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw data_error(data_error_kind::range_violation, "snapshot: bad integer '" + s + "'");
    return v;
}

double to_double(const std::string& s)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw data_error(data_error_kind::range_violation, "snapshot: bad number '" + s + "'");
    }
}

void write_devices(std::ostream& out, const char* side, const DifferentialCrossbar& xbar, bool positive)
{
    for (std::size_t i = 0; i < xbar.rows(); ++i)
        for (std::size_t j = 0; j < xbar.cols(); ++j) {
            const auto& d = positive ? xbar.positive(i, j) : xbar.negative(i, j);
            const auto& p = d.params;
            out << side << ',' << i << ',' << j << ',' << d.step_index << ',' << p.g_min << ',' << p.g_max << ','
                << p.v_th1 << ',' << p.v_th2 << ',' << p.n_states << '\n';
        }
}

}  // namespace

void write_crossbar(std::ostream& out, const DifferentialCrossbar& xbar)
{
    const auto old_precision = out.precision(17);
    out << "# nanosyn-crossbar v1\n";
    out << "rows," << xbar.rows() << ",cols," << xbar.cols() << ",frozen," << (xbar.frozen() ? 1 : 0) << '\n';
    out << "side,row,col,step,g_min,g_max,v_th1,v_th2,n_states\n";
    write_devices(out, "pos", xbar, true);
    write_devices(out, "neg", xbar, false);
    out.precision(old_precision);
}

DifferentialCrossbar read_crossbar(std::istream& in)
{
    if (next_line(in, "header") != "# nanosyn-crossbar v1")
        throw data_error(data_error_kind::bad_magic, "not a nanosyn crossbar snapshot");
    const auto dims = split_csv(next_line(in, "dimensions"));
    if (dims.size() != 6 || dims[0] != "rows" || dims[2] != "cols" || dims[4] != "frozen")
        throw data_error(data_error_kind::dimension_mismatch, "snapshot: malformed dimension line");
    const std::size_t rows = to_size(dims[1]);
    const std::size_t cols = to_size(dims[3]);
    const bool frozen = to_size(dims[5]) != 0;
    next_line(in, "column names");

    std::vector<DeviceState> pos(rows * cols), neg(rows * cols);
    for (std::size_t n = 0; n < 2 * rows * cols; ++n) {
        const auto f = split_csv(next_line(in, "device line"));
        if (f.size() != 9 || (f[0] != "pos" && f[0] != "neg"))
            throw data_error(data_error_kind::dimension_mismatch, "snapshot: malformed device line");
        const std::size_t i = to_size(f[1]), j = to_size(f[2]);
        if (i >= rows || j >= cols) throw data_error(data_error_kind::dimension_mismatch, "snapshot: device index out of range");
        DeviceState d;
        d.step_index = static_cast<int>(to_size(f[3]));
        d.params = {to_double(f[4]), to_double(f[5]), to_double(f[6]), to_double(f[7]), static_cast<int>(to_size(f[8]))};
        d.params.validate();
        if (d.step_index > d.params.n_states) throw data_error(data_error_kind::range_violation, "snapshot: step beyond n_states");
        (f[0] == "pos" ? pos : neg)[i * cols + j] = d;
    }
    return DifferentialCrossbar(rows, cols, std::move(pos), std::move(neg), frozen);
}

void save_crossbar(const std::filesystem::path& path, const DifferentialCrossbar& xbar)
{
    std::ofstream out(path);
    if (!out) throw data_error(data_error_kind::io, "cannot write " + path.string());
    write_crossbar(out, xbar);
}

DifferentialCrossbar load_crossbar(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw data_error(data_error_kind::io, "cannot open " + path.string());
    return read_crossbar(in);
}

void write_masks(std::ostream& out, const std::vector<WindowMask>& masks)
{
    const auto old_precision = out.precision(17);
    const std::size_t frames = masks.empty() ? 0 : masks.front().max_frames();
    const double density = masks.empty() ? 1.0 : masks.front().density;
    out << "# nanosyn-masks v1\n";
    out << "neurons," << masks.size() << ",max_frames," << frames << ",density," << density << '\n';
    for (const auto& m : masks) {
        if (m.max_frames() != frames) throw dimension_error("write_masks: masks cover different frame ranges");
        for (const auto b : m.included) out << (b ? '1' : '0');
        out << '\n';
    }
    out.precision(old_precision);
}

std::vector<WindowMask> read_masks(std::istream& in)
{
    if (next_line(in, "header") != "# nanosyn-masks v1") throw data_error(data_error_kind::bad_magic, "not a nanosyn mask file");
    const auto f = split_csv(next_line(in, "dimensions"));
    if (f.size() != 6 || f[0] != "neurons" || f[2] != "max_frames" || f[4] != "density")
        throw data_error(data_error_kind::dimension_mismatch, "masks: malformed dimension line");
    const std::size_t neurons = to_size(f[1]);
    const std::size_t frames = to_size(f[3]);
    const double density = to_double(f[5]);
    std::vector<WindowMask> out(neurons);
    for (auto& m : out) {
        const auto line = next_line(in, "mask line");
        if (line.size() != frames) throw data_error(data_error_kind::dimension_mismatch, "masks: wrong line length");
        m.density = density;
        m.included.resize(frames);
        for (std::size_t k = 0; k < frames; ++k) {
            if (line[k] != '0' && line[k] != '1') throw data_error(data_error_kind::range_violation, "masks: expected 0/1");
            m.included[k] = line[k] == '1';
        }
    }
    return out;
}

void save_masks(const std::filesystem::path& path, const std::vector<WindowMask>& masks)
{
    std::ofstream out(path);
    if (!out) throw data_error(data_error_kind::io, "cannot write " + path.string());
    write_masks(out, masks);
}

std::vector<WindowMask> load_masks(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw data_error(data_error_kind::io, "cannot open " + path.string());
    return read_masks(in);
}

CrossbarSummary summarize(const DifferentialCrossbar& xbar)
{
    CrossbarSummary s;
    s.rows = xbar.rows();
    s.cols = xbar.cols();
    s.frozen = xbar.frozen();
    s.step_histogram.assign(10, 0);
    const auto w = xbar.weights();
    if (w.empty()) return s;
    s.weight_min = *std::min_element(w.begin(), w.end());
    s.weight_max = *std::max_element(w.begin(), w.end());
    double sum = 0.0;
    for (const double x : w) sum += x;
    s.weight_mean = sum / static_cast<double>(w.size());

    std::size_t saturated = 0;
    auto visit = [&](const DeviceState& d) {
        if (d.step_index == 0 || d.step_index == d.params.n_states) ++saturated;
        const auto bin = std::min<std::size_t>(9, static_cast<std::size_t>(d.step_index) * 10 /
                                                      static_cast<std::size_t>(d.params.n_states));
        ++s.step_histogram[bin];
    };
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t j = 0; j < s.cols; ++j) {
            visit(xbar.positive(i, j));
            visit(xbar.negative(i, j));
        }
    s.saturated_fraction = static_cast<double>(saturated) / static_cast<double>(2 * w.size());
    return s;
}

}  // namespace nanosyn
