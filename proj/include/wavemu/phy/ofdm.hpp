#pragma once

#include <span>
#include <vector>

#include "wavemu/phy/config.hpp"
#include "wavemu/phy/types.hpp"

namespace wavemu {

/// Places N data points and the pilots for `symbol_index`; nulls are zero.
FreqGrid assemble_grid(std::span<const cplx> data, int symbol_index, const PhyConfig& cfg);
std::vector<cplx> extract_data(const FreqGrid& grid, const PhyConfig& cfg);

/// IFFT then cyclic prefix; returns fft_size + cp_len samples.
std::vector<cplx> ofdm_modulate(const FreqGrid& grid, const PhyConfig& cfg);
/// Drops the cyclic prefix then FFT.
FreqGrid ofdm_demodulate(std::span<const cplx> segment, const PhyConfig& cfg);

}  // namespace wavemu
