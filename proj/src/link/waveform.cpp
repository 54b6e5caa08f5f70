#include "wavemu/link/waveform.hpp"

#include <cmath>
#include <random>
#include <string>

#include "wavemu/error.hpp"
#include "wavemu/phy/dft.hpp"

namespace wavemu {

int ofdm_symbols_for(std::size_t k, std::size_t n_chosen) {
    if (n_chosen == 0) throw SelectionError("empty subcarrier selection");
    return static_cast<int>((k + n_chosen - 1) / n_chosen);
}

std::vector<cplx> synth(std::span<const cplx> symbols, const PhyConfig& cfg, std::span<const int> chosen,
                        int ofdm_symbols) {
    const auto n = static_cast<std::size_t>(cfg.fft_size);
    const auto cp = static_cast<std::size_t>(cfg.cp_len);
    const std::size_t np = chosen.size();
    if (symbols.size() > static_cast<std::size_t>(ofdm_symbols) * np)
        throw CapacityError("synth: " + std::to_string(symbols.size()) + " symbols exceed " +
                            std::to_string(ofdm_symbols) + " OFDM symbols");
    std::vector<cplx> out(static_cast<std::size_t>(ofdm_symbols) * (n + cp));
    std::vector<cplx> grid(n), body(n);
    for (int s = 0; s < ofdm_symbols; ++s) {
        std::fill(grid.begin(), grid.end(), cplx{});
        for (std::size_t j = 0; j < np; ++j) {
            const std::size_t idx = static_cast<std::size_t>(s) * np + j;
            if (idx < symbols.size()) grid[static_cast<std::size_t>(cfg.bin_of(chosen[j]))] = symbols[idx];
        }
        dft_unitary(grid, body, true);
        auto* dst = out.data() + static_cast<std::size_t>(s) * (n + cp);
        std::copy(body.end() - static_cast<std::ptrdiff_t>(cp), body.end(), dst);
        std::copy(body.begin(), body.end(), dst + cp);
    }
    return out;
}

std::vector<cplx> analyze(std::span<const cplx> wave, const PhyConfig& cfg, std::span<const int> chosen,
                          std::size_t k) {
    const auto n = static_cast<std::size_t>(cfg.fft_size);
    const auto sps = static_cast<std::size_t>(cfg.samples_per_ofdm());
    const std::size_t np = chosen.size();
    const int symbols = ofdm_symbols_for(k, np);
    if (wave.size() < static_cast<std::size_t>(symbols) * sps)
        throw FramingError("analyze: waveform of " + std::to_string(wave.size()) + " samples is shorter than " +
                           std::to_string(symbols) + " OFDM symbols");
    std::vector<cplx> out(k);
    std::vector<cplx> grid(n);
    for (int s = 0; s < symbols; ++s) {
        dft_unitary(wave.subspan(static_cast<std::size_t>(s) * sps + static_cast<std::size_t>(cfg.cp_len), n), grid,
                    false);
        for (std::size_t j = 0; j < np; ++j) {
            const std::size_t idx = static_cast<std::size_t>(s) * np + j;
            if (idx < k) out[idx] = grid[static_cast<std::size_t>(cfg.bin_of(chosen[j]))];
        }
    }
    return out;
}

std::vector<cplx> synth_adjoint(std::span<const cplx> wave, const PhyConfig& cfg, std::span<const int> chosen,
                                std::size_t k) {
    const auto n = static_cast<std::size_t>(cfg.fft_size);
    const auto cp = static_cast<std::size_t>(cfg.cp_len);
    const std::size_t np = chosen.size();
    const int symbols = ofdm_symbols_for(k, np);
    if (wave.size() != static_cast<std::size_t>(symbols) * (n + cp))
        throw FramingError("synth_adjoint: waveform length does not match " + std::to_string(symbols) + " OFDM symbols");
    std::vector<cplx> out(k), body(n), grid(n);
    for (int s = 0; s < symbols; ++s) {
        const cplx* src = wave.data() + static_cast<std::size_t>(s) * (n + cp);
        std::copy(src + cp, src + cp + n, body.begin());
        for (std::size_t i = 0; i < cp; ++i) body[n - cp + i] += src[i];
        dft_unitary(body, grid, false);
        for (std::size_t j = 0; j < np; ++j) {
            const std::size_t idx = static_cast<std::size_t>(s) * np + j;
            if (idx < k) out[idx] = grid[static_cast<std::size_t>(cfg.bin_of(chosen[j]))];
        }
    }
    return out;
}

std::vector<cplx> analyze_adjoint(std::span<const cplx> symbols, const PhyConfig& cfg, std::span<const int> chosen,
                                  int ofdm_symbols) {
    const auto n = static_cast<std::size_t>(cfg.fft_size);
    const auto cp = static_cast<std::size_t>(cfg.cp_len);
    const std::size_t np = chosen.size();
    std::vector<cplx> out(static_cast<std::size_t>(ofdm_symbols) * (n + cp));
    std::vector<cplx> grid(n), body(n);
    for (int s = 0; s < ofdm_symbols; ++s) {
        std::fill(grid.begin(), grid.end(), cplx{});
        for (std::size_t j = 0; j < np; ++j) {
            const std::size_t idx = static_cast<std::size_t>(s) * np + j;
            if (idx < symbols.size()) grid[static_cast<std::size_t>(cfg.bin_of(chosen[j]))] = symbols[idx];
        }
        dft_unitary(grid, body, true);
        std::copy(body.begin(), body.end(), out.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(s) * (n + cp) + cp));
    }
    return out;
}

std::vector<cplx> band_limited_waveform(std::size_t samples, int lo_bin, int hi_bin, const PhyConfig& cfg,
                                        std::uint64_t seed) {
    if (samples == 0 || lo_bin < 1 || hi_bin < lo_bin || hi_bin >= cfg.fft_size / 2)
        throw ConfigError("band_limited_waveform: need 1 <= lo_bin <= hi_bin < fft_size/2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> spec(samples), out(samples);
    const double bins_per_sc = static_cast<double>(samples) / cfg.fft_size;
    for (std::size_t i = 0; i < samples; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        double f = static_cast<double>(i);
        if (f >= samples / 2.0) f -= static_cast<double>(samples);
        const double sc = std::abs(f) / bins_per_sc;
        if (sc >= lo_bin - 0.5 && sc < hi_bin + 0.5) spec[i] = cplx(re, im);
    }
    dft_unitary(spec, out, true);
    double power = 0.0;
    for (const auto& v : out) power += std::norm(v);
    power /= static_cast<double>(samples);
    if (power > 0.0) {
        const double want = 2.0 * (hi_bin - lo_bin + 1) / cfg.fft_size;
        const double gain = std::sqrt(want / power);
        for (auto& v : out) v *= gain;
    }
    return out;
}

std::vector<cplx> gaussian_symbols(std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    std::vector<cplx> out(k);
    for (auto& v : out) {
        const double re = g(rng);
        const double im = g(rng);
        v = cplx(re, im);
    }
    return out;
}

}  // namespace wavemu
