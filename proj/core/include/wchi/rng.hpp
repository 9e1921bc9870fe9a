#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace wchi {

inline constexpr const char* kGeneratorId = "philox4x32-10/box-muller";

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

/// Fills `out` with standard normals belonging to sample `index` of `stream`.
///
/// The counter is (index low, index high, block, stream) and the key is the
/// seed, so every sample owns a fixed substream and results never depend on
/// how samples are distributed over threads. Each block yields two normals.
void standard_normals(std::uint64_t seed, std::uint64_t index, std::uint32_t stream,
                      std::span<double> out);

}  // namespace wchi
