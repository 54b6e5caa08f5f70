#pragma once

#include <filesystem>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wavemu/phy/types.hpp"

namespace wavemu {

// Flat little-endian layout: "WMFR" magic, u32 version (1), u64 sample
// count, then sample count (I, Q) pairs of IEEE-754 binary64.
inline constexpr char kFrameMagic[4] = {'W', 'M', 'F', 'R'};
inline constexpr std::uint32_t kFrameVersion = 1;

void write_frame(std::ostream& os, std::span<const cplx> samples);
std::vector<cplx> read_frame(std::istream& is);

void save_frame(const std::filesystem::path& path, std::span<const cplx> samples);
std::vector<cplx> load_frame(const std::filesystem::path& path);

}  // namespace wavemu
