#include "wavemu/nn/compensator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wavemu/error.hpp"

namespace wavemu::nn {

Tensor wave_tensor(std::span<const cplx> samples) {
    Tensor t({samples.size(), 2});
    for (std::size_t i = 0; i < samples.size(); ++i) {
        t[2 * i] = samples[i].real();
        t[2 * i + 1] = samples[i].imag();
    }
    return t;
}

std::vector<cplx> to_complex(const Tensor& t) {
    std::vector<cplx> out(t.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {t[2 * i], t[2 * i + 1]};
    return out;
}

Tensor reshape_period(const Tensor& w, std::size_t period) {
    if (period == 0) throw ConfigError("period must be at least 1");
    const std::size_t ns = w.size() / 2;
    const std::size_t rows = (ns + period - 1) / period;
    Tensor out({rows, period, 2});
    std::copy(w.data.begin(), w.data.end(), out.data.begin());
    return out;
}

Tensor inverse_reshape_trunc(const Tensor& t, std::size_t ns) {
    if (ns * 2 > t.size()) throw FramingError("inverse_reshape_trunc: target length exceeds folded size");
    return Tensor({ns, 2}, std::vector<double>(t.data.begin(), t.data.begin() + static_cast<std::ptrdiff_t>(ns * 2)));
}

std::size_t default_period_j(const PhyConfig& cfg, std::size_t n_chosen) {
    if (n_chosen == 0) return 1;
    const auto p = static_cast<long>(std::lround(static_cast<double>(cfg.samples_per_ofdm()) / static_cast<double>(n_chosen)));
    return static_cast<std::size_t>(std::max(1L, p));
}

double snr_feature(double snr_db) { return std::clamp(snr_db, -10.0, 40.0) / 20.0; }

Compensator::Compensator(CompensatorConfig cfg, std::uint64_t seed) : cfg_(cfg) {
    if (cfg_.periods.period_o == 0 || cfg_.periods.period_j == 0) throw ConfigError("compensator periods must be >= 1");
    if (cfg_.layers == 0 || cfg_.kernel % 2 == 0 || cfg_.channels == 0)
        throw ConfigError("compensator needs >= 1 layer, odd kernel, >= 1 channel");
    const std::size_t in_ch = 2 + (cfg_.positional ? 2 : 0) + (cfg_.snr_input ? 1 : 0);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < cfg_.layers; ++i) {
        const std::size_t ci = i == 0 ? in_ch : cfg_.channels;
        const std::size_t co = i + 1 == cfg_.layers ? 2 : cfg_.channels;
        conv_.layers.emplace_back(ci, co, cfg_.kernel, cfg_.kernel, "comp.conv" + std::to_string(i));
        conv_.layers.back().init(rng, std::sqrt(2.0));
    }
    conv_.layers.back().zero();
}

Var Compensator::branch(Tape& t, Var w, std::size_t ns, std::size_t period, double snr_db, bool frozen) {
    const std::size_t rows = (ns + period - 1) / period;
    const std::size_t plane = rows * period;
    std::vector<std::ptrdiff_t> fold(2 * plane);
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t n = 0; n < plane; ++n)
            fold[c * plane + n] = n < ns ? static_cast<std::ptrdiff_t>(2 * n + c) : -1;
    Var img = gather(t, w, std::move(fold), {2, rows, period});
    if (cfg_.positional) {
        const std::size_t o = cfg_.periods.period_o;
        Tensor pos({2, rows, period});
        for (std::size_t n = 0; n < plane; ++n) {
            const std::size_t phase = n % o;
            pos[n] = o > 1 ? static_cast<double>(phase) / static_cast<double>(o - 1) : 0.0;
            pos[plane + n] = phase < cfg_.cp_len ? 1.0 : 0.0;
        }
        img = concat(t, img, t.constant(std::move(pos)), {t.value(img).shape[0] + 2, rows, period});
    }
    if (cfg_.snr_input) {
        Tensor level({1, rows, period});
        std::fill(level.data.begin(), level.data.end(), snr_feature(snr_db));
        img = concat(t, img, t.constant(std::move(level)), {t.value(img).shape[0] + 1, rows, period});
    }
    Var y = conv_(t, img, frozen);
    std::vector<std::ptrdiff_t> unfold(2 * ns);
    for (std::size_t n = 0; n < ns; ++n)
        for (std::size_t c = 0; c < 2; ++c) unfold[2 * n + c] = static_cast<std::ptrdiff_t>(c * plane + n);
    return gather(t, y, std::move(unfold), {ns, 2});
}

Var Compensator::forward(Tape& t, Var w, double snr_db, bool frozen) {
    const std::size_t ns = t.value(w).size() / 2;
    if (ns == 0) throw FramingError("compensate: empty waveform");
    Var out = add(t, branch(t, w, ns, cfg_.periods.period_o, snr_db, frozen),
                  branch(t, w, ns, cfg_.periods.period_j, snr_db, frozen));
    if (cfg_.residual) out = add(t, out, w);
    return out;
}

std::vector<cplx> Compensator::apply(std::span<const cplx> samples, double snr_db) {
    Tape t;
    return to_complex(t.value(forward(t, t.constant(wave_tensor(samples)), snr_db, true)));
}

std::vector<cplx> Compensator::apply_chunked(std::span<const cplx> samples, std::size_t chunk, double snr_db) {
    if (chunk == 0) return apply(samples, snr_db);
    std::vector<cplx> out;
    out.reserve(samples.size());
    for (std::size_t off = 0; off < samples.size(); off += chunk) {
        const auto part = apply(samples.subspan(off, std::min(chunk, samples.size() - off)), snr_db);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::string Compensator::fingerprint() const {
    return "comp-O" + std::to_string(cfg_.periods.period_o) + "-J" + std::to_string(cfg_.periods.period_j) + "-cp" +
           std::to_string(cfg_.cp_len) + "-L" + std::to_string(cfg_.layers) + "-k" + std::to_string(cfg_.kernel) +
           "-c" + std::to_string(cfg_.channels) + (cfg_.residual ? "-res" : "-lit") + (cfg_.positional ? "-pos" : "") + (cfg_.snr_input ? "-snr" : "");
}

}  // namespace wavemu::nn
