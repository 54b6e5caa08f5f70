#pragma once

#include <span>

#include "wavemu/phy/types.hpp"

namespace wavemu {

/// Unitary DFT (1/sqrt(n) scaling). `inverse` selects the e^{+j} kernel.
/// Backed by FFTW; plans are cached per (size, direction).
void dft_unitary(std::span<const cplx> in, std::span<cplx> out, bool inverse);

}  // namespace wavemu
