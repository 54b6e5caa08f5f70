#include "wavemu/phy/chain.hpp"

#include <string>

#include "wavemu/error.hpp"
#include "wavemu/phy/coding.hpp"
#include "wavemu/phy/ofdm.hpp"
#include "wavemu/phy/qam.hpp"

namespace wavemu {

Bits tx_coded_bits(std::span<const std::uint8_t> info, const PhyConfig& cfg) {
    const auto n_dbps = static_cast<std::size_t>(cfg.data_bits_per_symbol());
    if (info.size() % n_dbps != 0)
        throw FramingError("tx_chain: " + std::to_string(info.size()) + " bits is not a multiple of " +
                           std::to_string(n_dbps));
    const Bits scrambled = scramble(info, cfg.scrambler_seed);
    const auto [mother, end_state] = conv_encode(scrambled);
    const Bits coded = puncture(mother, cfg.rate);
    const int n_cbps = cfg.coded_bits_per_symbol();
    Bits out;
    out.reserve(coded.size());
    for (std::size_t off = 0; off < coded.size(); off += static_cast<std::size_t>(n_cbps)) {
        const Bits block = interleave(std::span(coded).subspan(off, static_cast<std::size_t>(n_cbps)), n_cbps,
                                      cfg.bits_per_subcarrier());
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

BasebandFrame tx_chain(std::span<const std::uint8_t> info, const PhyConfig& cfg) {
    const Bits coded = tx_coded_bits(info, cfg);
    const Constellation qam(cfg.modulation);
    const auto n_cbps = static_cast<std::size_t>(cfg.coded_bits_per_symbol());
    const auto bpsc = static_cast<std::size_t>(cfg.bits_per_subcarrier());
    BasebandFrame frame;
    frame.ofdm_symbol_count = static_cast<int>(coded.size() / n_cbps);
    frame.samples.reserve(static_cast<std::size_t>(frame.ofdm_symbol_count * cfg.samples_per_ofdm()));
    std::vector<cplx> points(static_cast<std::size_t>(cfg.n_data()));
    for (int sym = 0; sym < frame.ofdm_symbol_count; ++sym) {
        const auto block = std::span(coded).subspan(static_cast<std::size_t>(sym) * n_cbps, n_cbps);
        for (std::size_t k = 0; k < points.size(); ++k) points[k] = qam.map(block.subspan(k * bpsc, bpsc));
        const auto samples = ofdm_modulate(assemble_grid(points, sym, cfg), cfg);
        frame.samples.insert(frame.samples.end(), samples.begin(), samples.end());
    }
    return frame;
}

std::vector<cplx> rx_equalized_points(const BasebandFrame& frame, const PhyConfig& cfg, std::span<const cplx> channel) {
    const auto sps = static_cast<std::size_t>(cfg.samples_per_ofdm());
    if (frame.samples.size() % sps != 0)
        throw FramingError("rx_chain: frame length " + std::to_string(frame.samples.size()) +
                           " is not a multiple of " + std::to_string(sps));
    if (!channel.empty() && static_cast<int>(channel.size()) != cfg.n_data())
        throw FramingError("rx_chain: channel vector must have one tap per data subcarrier");
    std::vector<cplx> out;
    out.reserve(frame.samples.size() / sps * static_cast<std::size_t>(cfg.n_data()));
    for (std::size_t off = 0; off < frame.samples.size(); off += sps) {
        auto data = extract_data(ofdm_demodulate(std::span(frame.samples).subspan(off, sps), cfg), cfg);
        if (!channel.empty())
            for (std::size_t k = 0; k < data.size(); ++k) data[k] /= channel[k];
        out.insert(out.end(), data.begin(), data.end());
    }
    return out;
}

Bits rx_chain(const BasebandFrame& frame, const PhyConfig& cfg, std::span<const cplx> channel) {
    const auto points = rx_equalized_points(frame, cfg, channel);
    const Constellation qam(cfg.modulation);
    const int n_cbps = cfg.coded_bits_per_symbol();
    const auto bpsc = static_cast<std::size_t>(cfg.bits_per_subcarrier());
    const auto n_data = static_cast<std::size_t>(cfg.n_data());
    Bits coded;
    coded.reserve(points.size() * bpsc);
    Bits block(static_cast<std::size_t>(n_cbps));
    for (std::size_t off = 0; off < points.size(); off += n_data) {
        for (std::size_t k = 0; k < n_data; ++k)
            qam.hard_demap(points[off + k], std::span(block).subspan(k * bpsc, bpsc));
        const Bits d = deinterleave(block, n_cbps, cfg.bits_per_subcarrier());
        coded.insert(coded.end(), d.begin(), d.end());
    }
    const Bits mother = depuncture(coded, cfg.rate);
    const Bits scrambled = viterbi_decode(mother);
    return scramble(scrambled, cfg.scrambler_seed);
}

double mean_power(std::span<const cplx> samples) {
    if (samples.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& s : samples) acc += std::norm(s);
    return acc / static_cast<double>(samples.size());
}

}  // namespace wavemu
