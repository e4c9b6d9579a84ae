#include "nanosyn/data.hpp"

#include "nanosyn/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace nanosyn {

const char* to_string(data_error_kind kind)
{
    switch (kind) {
    case data_error_kind::io: return "io error";
    case data_error_kind::bad_magic: return "bad magic number";
    case data_error_kind::truncated: return "truncated file";
    case data_error_kind::dimension_mismatch: return "dimension mismatch";
    case data_error_kind::version_mismatch: return "version mismatch";
    case data_error_kind::range_violation: return "range violation";
    case data_error_kind::mode_mismatch: return "mode mismatch";
    }
    return "data error";
}

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error(data_error_kind::io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::uint8_t* p)
{
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

/// Little-endian cursor over a byte buffer; every read is bounds-checked.
class LeReader {
public:
    LeReader(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) : bytes_(bytes), path_(path) {}

    const std::uint8_t* take(std::size_t n)
    {
        if (bytes_.size() - pos_ < n)
            throw data_error(data_error_kind::truncated, path_.string() + " ends at byte " + std::to_string(bytes_.size()));
        const auto* p = bytes_.data() + pos_;
        pos_ += n;
        return p;
    }

    std::uint8_t u8() { return *take(1); }
    std::uint32_t u32()
    {
        const auto* p = take(4);
        return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
    }
    float f32() { return std::bit_cast<float>(u32()); }

private:
    const std::vector<std::uint8_t>& bytes_;
    const std::filesystem::path& path_;
    std::size_t pos_ = 0;
};

void put_u32(std::ofstream& out, std::uint32_t v)
{
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

}  // namespace

IdxArray read_idx(const std::filesystem::path& path)
{
    const auto bytes = read_file(path);
    if (bytes.size() < 4) throw data_error(data_error_kind::truncated, path.string() + " has no IDX header");
    // Magic: two zero bytes, type code 0x08 (unsigned byte), dimension count.
    if (bytes[0] != 0 || bytes[1] != 0 || bytes[2] != 0x08 || bytes[3] == 0)
        throw data_error(data_error_kind::bad_magic, path.string() + ": magic " + std::to_string(read_be32(bytes.data())));

    IdxArray out;
    const std::size_t n_dims = bytes[3];
    if (bytes.size() < 4 + 4 * n_dims) throw data_error(data_error_kind::truncated, path.string() + " header");
    std::size_t count = 1;
    for (std::size_t d = 0; d < n_dims; ++d) {
        out.dims.push_back(read_be32(bytes.data() + 4 + 4 * d));
        count *= out.dims.back();
    }
    const std::size_t offset = 4 + 4 * n_dims;
    if (bytes.size() - offset < count)
        throw data_error(data_error_kind::truncated, path.string() + ": expected " + std::to_string(count) +
                                                         " payload bytes, found " + std::to_string(bytes.size() - offset));
    out.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                    bytes.begin() + static_cast<std::ptrdiff_t>(offset + count));
    return out;
}

std::vector<FrameSequence> load_mnist(const std::filesystem::path& images, const std::filesystem::path& labels,
                                      MnistFrameAxis axis)
{
    const auto img = read_idx(images);
    const auto lab = read_idx(labels);
    if (img.dims.size() != 3)
        throw data_error(data_error_kind::bad_magic, images.string() + ": expected magic 0x00000803 (3-d images)");
    if (lab.dims.size() != 1)
        throw data_error(data_error_kind::bad_magic, labels.string() + ": expected magic 0x00000801 (1-d labels)");
    if (img.dims[0] != lab.dims[0])
        throw data_error(data_error_kind::dimension_mismatch,
                         std::to_string(img.dims[0]) + " images vs " + std::to_string(lab.dims[0]) + " labels");
    if (img.dims[1] != 28 || img.dims[2] != 28)
        throw data_error(data_error_kind::dimension_mismatch, images.string() + ": images are not 28 x 28");

    constexpr std::size_t side = 28;
    std::vector<FrameSequence> out;
    out.reserve(img.dims[0]);
    for (std::size_t n = 0; n < img.dims[0]; ++n) {
        const int label = lab.data[n];
        if (label > 9) throw data_error(data_error_kind::range_violation, "label " + std::to_string(label));
        FrameSequence s(label, side, side, ValueMode::analog_unit);
        const std::uint8_t* px = img.data.data() + n * side * side;
        for (std::size_t r = 0; r < side; ++r)
            for (std::size_t c = 0; c < side; ++c) {
                const float v = static_cast<float>(px[r * side + c]) / 255.0f;
                if (axis == MnistFrameAxis::rows)
                    s.at(c, r) = v;
                else
                    s.at(r, c) = v;
            }
        out.push_back(std::move(s));
    }
    return out;
}

Dataset load_mnist_dir(const std::filesystem::path& dir, MnistFrameAxis axis)
{
    return {load_mnist(dir / "train-images-idx3-ubyte", dir / "train-labels-idx1-ubyte", axis),
            load_mnist(dir / "t10k-images-idx3-ubyte", dir / "t10k-labels-idx1-ubyte", axis)};
}

std::vector<FrameSequence> load_cochleagram(const std::filesystem::path& path)
{
    const auto bytes = read_file(path);
    LeReader in(bytes, path);
    if (bytes.size() < sizeof cochleagram_magic ||
        std::memcmp(bytes.data(), cochleagram_magic, sizeof cochleagram_magic) != 0)
        throw data_error(data_error_kind::bad_magic, path.string() + " is not a cochleagram container");
    in.take(sizeof cochleagram_magic);
    const auto version = in.u32();
    if (version != cochleagram_version)
        throw data_error(data_error_kind::version_mismatch, path.string() + ": version " + std::to_string(version));
    const std::size_t channels = in.u32();
    const std::size_t count = in.u32();
    if (channels == 0) throw data_error(data_error_kind::dimension_mismatch, path.string() + ": zero channels");

    std::vector<FrameSequence> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        const int label = in.u8();
        const std::size_t frames = in.u32();
        if (frames == 0) throw data_error(data_error_kind::dimension_mismatch, "sample " + std::to_string(n) + " has no frames");
        FrameSequence s(label, channels, frames, ValueMode::analog_signed);
        for (auto& v : s.values) {
            v = in.f32();
            if (!(v >= -1.0f && v <= 1.0f))
                throw data_error(data_error_kind::range_violation,
                                 "sample " + std::to_string(n) + " value " + std::to_string(v) + " outside [-1, 1]");
        }
        out.push_back(std::move(s));
    }
    return out;
}

void save_cochleagram(const std::filesystem::path& path, std::span<const FrameSequence> samples, std::uint32_t channels)
{
    if (!samples.empty()) channels = static_cast<std::uint32_t>(samples.front().n_channels);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error(data_error_kind::io, "cannot write " + path.string());
    out.write(cochleagram_magic, sizeof cochleagram_magic);
    put_u32(out, cochleagram_version);
    put_u32(out, channels);
    put_u32(out, static_cast<std::uint32_t>(samples.size()));
    for (const auto& s : samples) {
        if (s.n_channels != channels)
            throw data_error(data_error_kind::dimension_mismatch, "save_cochleagram: mixed channel counts");
        if (s.label < 0 || s.label > 255) throw data_error(data_error_kind::range_violation, "label does not fit in 8 bits");
        out.put(static_cast<char>(s.label));
        put_u32(out, static_cast<std::uint32_t>(s.n_frames));
        for (const float v : s.values) put_u32(out, std::bit_cast<std::uint32_t>(v));
    }
    if (!out) throw data_error(data_error_kind::io, "write failed: " + path.string());
}

FrameSequence encode_spiking(const FrameSequence& sample, DatasetKind kind)
{
    const float threshold = kind == DatasetKind::mnist ? 0.5f : 0.0f;
    FrameSequence out = sample;
    out.mode = ValueMode::binary;
    for (auto& v : out.values) v = v > threshold ? 1.0f : 0.0f;
    return out;
}

FrameSequence inject_noise(const FrameSequence& sample, const NoiseSpec& spec)
{
    if (sample.mode != ValueMode::binary)
        throw data_error(data_error_kind::mode_mismatch, "inject_noise: sample is not spike-encoded");
    if (!(spec.flip_probability >= 0.0 && spec.flip_probability <= 1.0))
        throw parameter_error("inject_noise: flip_probability must lie in [0, 1]");
    FrameSequence out = sample;
    if (spec.flip_probability == 0.0) return out;
    rng_t rng(spec.rng_seed);
    for (auto& v : out.values)
        if (bernoulli(rng, spec.flip_probability)) v = 1.0f - v;
    return out;
}

}  // namespace nanosyn
