#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "wavemu/phy/config.hpp"
#include "wavemu/phy/types.hpp"

namespace wavemu {

/// Symbol-to-waveform map used on both sides of the link: symbol k goes to
/// chosen[k % N'] of OFDM symbol k / N', every other bin is zero, then IDFT
/// and cyclic prefix. Symbols past K are zero.
std::vector<cplx> synth(std::span<const cplx> symbols, const PhyConfig& cfg, std::span<const int> chosen,
                        int ofdm_symbols);
int ofdm_symbols_for(std::size_t k, std::size_t n_chosen);

/// Inverse of synth on its range: drop the CP of each symbol window, DFT,
/// read the chosen bins. For an arbitrary waveform this is the orthogonal
/// projection of each body window onto the chosen subcarriers.
std::vector<cplx> analyze(std::span<const cplx> wave, const PhyConfig& cfg, std::span<const int> chosen,
                          std::size_t k);

/// Adjoints of synth and analyze (as real-linear maps), used to
/// backpropagate through them.
std::vector<cplx> synth_adjoint(std::span<const cplx> wave, const PhyConfig& cfg, std::span<const int> chosen,
                                std::size_t k);
std::vector<cplx> analyze_adjoint(std::span<const cplx> symbols, const PhyConfig& cfg, std::span<const int> chosen,
                                  int ofdm_symbols);

/// Gaussian waveform whose spectrum occupies the band lo_bin..hi_bin (in
/// units of the OFDM subcarrier spacing, both signs, DC excluded). Power is
/// set so each occupied subcarrier carries unit power on average.
std::vector<cplx> band_limited_waveform(std::size_t samples, int lo_bin, int hi_bin, const PhyConfig& cfg,
                                        std::uint64_t seed);

/// Unit-power complex Gaussian symbols.
std::vector<cplx> gaussian_symbols(std::size_t k, std::uint64_t seed);

}  // namespace wavemu
