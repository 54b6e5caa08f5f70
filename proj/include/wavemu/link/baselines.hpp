#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "wavemu/phy/config.hpp"
#include "wavemu/phy/types.hpp"

namespace wavemu {

/// targets + complex AWGN of variance 10^(-snr/10) (unit-power convention).
std::vector<cplx> ideal_analog_link(std::span<const cplx> targets, double snr_db, std::uint64_t seed);

struct FloatLinkResult {
    std::vector<double> values;
    double ber = 0.0;
};

/// IEEE-754 binary32 bit patterns (MSB first) sent as ordinary data through
/// tx_chain -> awgn -> rx_chain. Reassembled values that are non-finite or
/// exceed `bound` in magnitude are saturated to +-bound (NaN to 0).
FloatLinkResult float_serialization_link(std::span<const double> values, double snr_db, std::uint64_t seed,
                                         const PhyConfig& cfg, double bound = 10.0);

Bits pack_floats(std::span<const double> values);
std::vector<double> unpack_floats(std::span<const std::uint8_t> bits, std::size_t count, double bound);

}  // namespace wavemu
