#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "wavemu/phy/config.hpp"
#include "wavemu/phy/types.hpp"

namespace wavemu {

// Scrambler: x^7 + x^4 + 1, seed is the 7-bit register (bit 6 = x7).
Bits scrambler_sequence(std::uint8_t seed, std::size_t length);
Bits scramble(std::span<const std::uint8_t> bits, std::uint8_t seed);

// K=7 rate-1/2 mother code, generators 133/171 octal. Output is the pair
// stream A0 B0 A1 B1 ...
inline constexpr unsigned kGenA = 0133;
inline constexpr unsigned kGenB = 0171;

std::pair<Bits, ConvState> conv_encode(std::span<const std::uint8_t> bits, ConvState state = {});

/// Register after feeding `bits` (only the last six matter once |bits| >= 6).
ConvState conv_advance(std::span<const std::uint8_t> bits, ConvState state);

/// Keep mask over one period of the mother pair stream.
std::span<const std::uint8_t> puncture_pattern(CodeRate rate);

Bits puncture(std::span<const std::uint8_t> mother, CodeRate rate);
/// Reinserts kErasure at every removed position.
Bits depuncture(std::span<const std::uint8_t> kept, CodeRate rate);

/// Two-permutation block interleaver over one OFDM symbol of coded bits.
/// Returns the destination index of input bit k.
std::size_t interleave_index(std::size_t k, int n_cbps, int n_bpsc);
Bits interleave(std::span<const std::uint8_t> block, int n_cbps, int n_bpsc);
Bits deinterleave(std::span<const std::uint8_t> block, int n_cbps, int n_bpsc);

/// Hard-decision Viterbi over the 64-state trellis. Input is a depunctured
/// pair stream; erasures cost nothing. Unterminated: the survivor ending in
/// the best final state is returned.
Bits viterbi_decode(std::span<const std::uint8_t> mother, ConvState start = {});

/// Hamming distance between the re-encoding of `info` and the non-erased
/// positions of `mother`.
std::size_t path_metric(std::span<const std::uint8_t> info, std::span<const std::uint8_t> mother,
                        ConvState start = {});

}  // namespace wavemu
