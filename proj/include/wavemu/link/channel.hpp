#pragma once
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wavemu/phy/types.hpp"

namespace wavemu {

/// SNR value that disables noise.
inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

/// signal_power / 10^(snr_db/10); zero for kNoiseless.
double noise_variance(double signal_power, double snr_db);

/// Adds circularly symmetric complex Gaussian noise of total variance
/// `variance` (variance/2 per axis). Deterministic in `seed`.
std::vector<cplx> add_complex_noise(std::span<const cplx> x, double variance, std::uint64_t seed);

/// AWGN with the noise variance referenced to the measured frame power.
BasebandFrame awgn(const BasebandFrame& frame, double snr_db, std::uint64_t seed);

}  // namespace wavemu
