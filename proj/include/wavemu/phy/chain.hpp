#pragma once

#include <span>
#include <vector>

#include "wavemu/phy/config.hpp"
#include "wavemu/phy/types.hpp"

namespace wavemu {

/// Interleaved coded bits (T1..T3) for a whole packet, one n_cbps block per
/// OFDM symbol, concatenated. Encoder state starts at zero.
Bits tx_coded_bits(std::span<const std::uint8_t> info, const PhyConfig& cfg);

/// T1..T6. |info| must be a multiple of data_bits_per_symbol().
BasebandFrame tx_chain(std::span<const std::uint8_t> info, const PhyConfig& cfg);

/// R1..R2: per-symbol equalized data points (N per symbol, concatenated).
/// `channel` holds one tap per data subcarrier or is empty for a unit channel.
std::vector<cplx> rx_equalized_points(const BasebandFrame& frame, const PhyConfig& cfg,
                                      std::span<const cplx> channel = {});

/// R1..R6 with hard-decision demapping and Viterbi decoding.
Bits rx_chain(const BasebandFrame& frame, const PhyConfig& cfg, std::span<const cplx> channel = {});

double mean_power(std::span<const cplx> samples);

}  // namespace wavemu
