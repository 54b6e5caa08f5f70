#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace wavemu {

using cplx = std::complex<double>;

/// One bit per element, values 0 or 1.
using Bits = std::vector<std::uint8_t>;

/// Marker used by depuncture for removed mother-code positions.
inline constexpr std::uint8_t kErasure = 2;

/// 6-bit shift register of the K=7 convolutional encoder. Bit 5 holds the
/// most recent input bit.
struct ConvState {
    std::uint8_t reg = 0;

    friend bool operator==(ConvState, ConvState) = default;
};

/// Frequency-domain content of one OFDM symbol, indexed by FFT bin.
struct FreqGrid {
    std::vector<cplx> bins;
};

/// Complex baseband samples for a whole packet.
struct BasebandFrame {
    std::vector<cplx> samples;
    int ofdm_symbol_count = 0;
};

}  // namespace wavemu
