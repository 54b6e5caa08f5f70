#include "wavemu/link/channel.hpp"

#include <cmath>
#include <random>

#include "wavemu/phy/chain.hpp"

namespace wavemu {

double noise_variance(double signal_power, double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    return signal_power / std::pow(10.0, snr_db / 10.0);
}

std::vector<cplx> add_complex_noise(std::span<const cplx> x, double variance, std::uint64_t seed) {
    std::vector<cplx> out(x.begin(), x.end());
    if (variance <= 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
    for (auto& v : out) {
        const double re = g(rng);
        const double im = g(rng);
        v += cplx(re, im);
    }
    return out;
}

BasebandFrame awgn(const BasebandFrame& frame, double snr_db, std::uint64_t seed) {
    BasebandFrame out;
    out.ofdm_symbol_count = frame.ofdm_symbol_count;
    out.samples = add_complex_noise(frame.samples, noise_variance(mean_power(frame.samples), snr_db), seed);
    return out;
}

}  // namespace wavemu
