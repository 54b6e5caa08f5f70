#include "wavemu/link/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "wavemu/link/channel.hpp"
#include "wavemu/phy/chain.hpp"

namespace wavemu {

std::vector<cplx> ideal_analog_link(std::span<const cplx> targets, double snr_db, std::uint64_t seed) {
    return add_complex_noise(targets, noise_variance(1.0, snr_db), seed);
}

Bits pack_floats(std::span<const double> values) {
    Bits out;
    out.reserve(values.size() * 32);
    for (double v : values) {
        const auto word = std::bit_cast<std::uint32_t>(static_cast<float>(v));
        for (int b = 31; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((word >> b) & 1u));
    }
    return out;
}

std::vector<double> unpack_floats(std::span<const std::uint8_t> bits, std::size_t count, double bound) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t word = 0;
        for (std::size_t b = 0; b < 32; ++b) word = (word << 1) | (bits[i * 32 + b] & 1u);
        const double v = std::bit_cast<float>(word);
        if (std::isnan(v))
            out[i] = 0.0;
        else
            out[i] = std::clamp(v, -bound, bound);
    }
    return out;
}

FloatLinkResult float_serialization_link(std::span<const double> values, double snr_db, std::uint64_t seed,
                                         const PhyConfig& cfg, double bound) {
    Bits payload = pack_floats(values);
    const std::size_t n_bits = payload.size();
    const auto n_dbps = static_cast<std::size_t>(cfg.data_bits_per_symbol());
    payload.resize((n_bits + n_dbps - 1) / n_dbps * n_dbps, 0);
    FloatLinkResult out;
    if (payload.empty()) return out;
    const auto rx = awgn(tx_chain(payload, cfg), snr_db, seed);
    const Bits decoded = rx_chain(rx, cfg);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < n_bits; ++i) errors += decoded[i] != payload[i];
    out.ber = n_bits ? static_cast<double>(errors) / static_cast<double>(n_bits) : 0.0;
    out.values = unpack_floats(decoded, values.size(), bound);
    return out;
}

}  // namespace wavemu
