#include "aqg/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace aqg {
namespace {

constexpr char kMagic[4] = {'A', 'Q', 'G', 'S'};
constexpr std::size_t kHeaderBytes = 4 + 3 * 4 + 6 * 8;

void put_u32(std::vector<std::byte>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffU));
    }
}

void put_f64(std::vector<std::byte>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<std::byte>((bits >> (8 * i)) & 0xffU));
    }
}

class Reader {
  public:
    explicit Reader(std::span<const std::byte> bytes) : bytes_(bytes) {}

    std::uint32_t u32(const char* field) {
        need(4, field);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += 4;
        return v;
    }

    double f64(const char* field) {
        need(8, field);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) {
            bits |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += 8;
        return std::bit_cast<double>(bits);
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

  private:
    void need(std::size_t n, const char* field) const {
        if (bytes_.size() - pos_ < n) {
            throw CheckpointError(CheckpointError::Kind::corrupt, field,
                                  std::string("corrupt checkpoint: truncated at ") + field);
        }
    }

    std::span<const std::byte> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::byte> encode_checkpoint(const Checkpoint& cp) {
    const auto& grid = cp.state.grid();
    std::vector<std::byte> out;
    out.reserve(kHeaderBytes + 16 * grid.size());
    for (char c : kMagic) {
        out.push_back(static_cast<std::byte>(c));
    }
    put_u32(out, kCheckpointVersion);
    put_u32(out, static_cast<std::uint32_t>(grid.n1));
    put_u32(out, static_cast<std::uint32_t>(grid.n2));
    put_f64(out, cp.params.alpha);
    put_f64(out, cp.params.beta);
    put_f64(out, cp.params.mu);
    put_f64(out, cp.params.nu);
    put_f64(out, cp.params.s);
    put_f64(out, cp.t);
    for (const auto& c : cp.state.coeffs()) {
        put_f64(out, c.real());
        put_f64(out, c.imag());
    }
    return out;
}

Checkpoint decode_checkpoint(std::span<const std::byte> bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw CheckpointError(CheckpointError::Kind::bad_magic, "magic", "corrupt checkpoint: bad magic");
    }
    Reader in(bytes.subspan(4));
    const auto version = in.u32("version");
    if (version != kCheckpointVersion) {
        throw CheckpointError(CheckpointError::Kind::unsupported_version, "version",
                              "unsupported version " + std::to_string(version));
    }
    GridSpec grid;
    grid.n1 = static_cast<int>(in.u32("n1"));
    grid.n2 = static_cast<int>(in.u32("n2"));
    try {
        grid.validate();
    } catch (const std::invalid_argument& e) {
        throw CheckpointError(CheckpointError::Kind::corrupt, "grid", std::string("corrupt checkpoint: ") + e.what());
    }
    Checkpoint cp;
    cp.params.alpha = in.f64("alpha");
    cp.params.beta = in.f64("beta");
    cp.params.mu = in.f64("mu");
    cp.params.nu = in.f64("nu");
    cp.params.s = in.f64("s");
    cp.t = in.f64("t");
    if (in.remaining() != 16 * grid.size()) {
        throw CheckpointError(CheckpointError::Kind::corrupt, "coefficients",
                              "corrupt checkpoint: expected " + std::to_string(16 * grid.size()) +
                                  " coefficient bytes, found " + std::to_string(in.remaining()));
    }
    std::vector<Complex> coeffs(grid.size());
    for (auto& c : coeffs) {
        const double re = in.f64("coefficients");
        const double im = in.f64("coefficients");
        c = Complex(re, im);
    }
    cp.state = SpectralField(grid, std::move(coeffs));
    return cp;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
    const auto bytes = encode_checkpoint(cp);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CheckpointError(CheckpointError::Kind::io, "path", "cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw CheckpointError(CheckpointError::Kind::io, "path", "write failed for " + path.string());
    }
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CheckpointError(CheckpointError::Kind::io, "path", "cannot open " + path.string());
    }
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::byte> bytes(raw.size());
    std::memcpy(bytes.data(), raw.data(), raw.size());
    return decode_checkpoint(bytes);
}

void require_compatible(const Checkpoint& cp, const GridSpec& grid, const DissipParams& p) {
    const auto& g = cp.state.grid();
    if (g.n1 != grid.n1) {
        throw CheckpointError(CheckpointError::Kind::grid_mismatch, "n1",
                              "grid mismatch: n1 is " + std::to_string(g.n1) + ", expected " + std::to_string(grid.n1));
    }
    if (g.n2 != grid.n2) {
        throw CheckpointError(CheckpointError::Kind::grid_mismatch, "n2",
                              "grid mismatch: n2 is " + std::to_string(g.n2) + ", expected " + std::to_string(grid.n2));
    }
    const std::pair<const char*, std::pair<double, double>> fields[] = {
        {"alpha", {cp.params.alpha, p.alpha}}, {"beta", {cp.params.beta, p.beta}}, {"mu", {cp.params.mu, p.mu}},
        {"nu", {cp.params.nu, p.nu}},          {"s", {cp.params.s, p.s}},
    };
    for (const auto& [name, values] : fields) {
        if (values.first != values.second) {
            throw CheckpointError(CheckpointError::Kind::param_mismatch, name,
                                  std::string("parameter mismatch: ") + name);
        }
    }
}

}  // namespace aqg
