#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqg/params.hpp"
#include "aqg/spectral_field.hpp"

namespace aqg {

/// Solver state at time t together with the parameters it was produced with.
struct Checkpoint {
    SpectralField state;
    DissipParams params;
    double t = 0.0;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
  public:
    enum class Kind { io, bad_magic, unsupported_version, corrupt, grid_mismatch, param_mismatch };

    CheckpointError(Kind kind, std::string field, const std::string& message)
        : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

    Kind kind() const { return kind_; }
    /// Name of the mismatched or unreadable field, when one applies.
    const std::string& field() const { return field_; }

  private:
    Kind kind_;
    std::string field_;
};

/// Little-endian layout: "AQGS", u32 version, u32 n1, u32 n2, f64 alpha, beta,
/// mu, nu, s, t, then n1*n2 (re, im) f64 pairs in transform ordering.
std::vector<std::byte> encode_checkpoint(const Checkpoint& cp);
Checkpoint decode_checkpoint(std::span<const std::byte> bytes);

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// Throws CheckpointError naming the first field that differs.
void require_compatible(const Checkpoint& cp, const GridSpec& grid, const DissipParams& p);

}  // namespace aqg
