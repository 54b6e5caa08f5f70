#include "wavemu/nn/proxy.hpp"

#include <cmath>
#include <random>

#include "wavemu/error.hpp"
#include "wavemu/link/channel.hpp"
#include "wavemu/nn/compensator.hpp"

namespace wavemu::nn {

namespace {

void build(Stack<Conv1d>& s, const ProxyConfig& cfg, std::mt19937_64& rng, const std::string& name) {
    for (std::size_t i = 0; i < cfg.layers; ++i) {
        const std::size_t ci = i == 0 ? 2 : cfg.channels;
        const std::size_t co = i + 1 == cfg.layers ? 2 : cfg.channels;
        s.layers.emplace_back(ci, co, cfg.kernel, name + ".conv" + std::to_string(i));
        s.layers.back().init(rng, std::sqrt(2.0));
    }
    if (cfg.residual) s.layers.back().zero();
}

}  // namespace

Proxy::Proxy(ProxyConfig cfg, std::uint64_t seed) : cfg_(cfg) {
    if (cfg_.layers == 0 || cfg_.kernel % 2 == 0 || cfg_.channels == 0)
        throw ConfigError("proxy needs >= 1 layer, odd kernel, >= 1 channel");
    std::mt19937_64 rng(seed);
    build(send_, cfg_, rng, "proxy.send");
    build(recv_, cfg_, rng, "proxy.recv");
}

std::vector<Param*> Proxy::params() {
    auto p = send_.params();
    for (Param* q : recv_.params()) p.push_back(q);
    return p;
}

double Proxy::noise_variance(double snr_db) const {
    return cfg_.noise ? wavemu::noise_variance(cfg_.ref_power, snr_db) : 0.0;
}

Var Proxy::net(Tape& t, Stack<Conv1d>& s, Var w, bool frozen) {
    const std::size_t ns = t.value(w).size() / 2;
    std::vector<std::ptrdiff_t> to_cl(2 * ns), to_nc(2 * ns);
    for (std::size_t n = 0; n < ns; ++n)
        for (std::size_t c = 0; c < 2; ++c) {
            to_cl[c * ns + n] = static_cast<std::ptrdiff_t>(2 * n + c);
            to_nc[2 * n + c] = static_cast<std::ptrdiff_t>(c * ns + n);
        }
    Var y = s(t, gather(t, w, std::move(to_cl), {2, ns}), frozen);
    y = gather(t, y, std::move(to_nc), {ns, 2});
    return cfg_.residual ? add(t, y, w) : y;
}

Var Proxy::forward(Tape& t, Var w, double snr_db, std::uint64_t noise_seed, bool frozen) {
    if (t.value(w).size() == 0) throw FramingError("proxy: empty waveform");
    Var x = net(t, send_, w, frozen);
    const double var = noise_variance(snr_db);
    if (var > 0.0) {
        const std::size_t ns = t.value(x).size() / 2;
        const auto n = add_complex_noise(std::vector<cplx>(ns), var, noise_seed);
        x = add(t, x, t.constant(wave_tensor(n)));
    }
    return net(t, recv_, x, frozen);
}

std::vector<cplx> Proxy::apply(std::span<const cplx> samples, double snr_db, std::uint64_t noise_seed) {
    Tape t;
    return to_complex(t.value(forward(t, t.constant(wave_tensor(samples)), snr_db, noise_seed, true)));
}

std::string Proxy::fingerprint() const {
    return "proxy-L" + std::to_string(cfg_.layers) + "-k" + std::to_string(cfg_.kernel) + "-c" +
           std::to_string(cfg_.channels) + (cfg_.residual ? "-res" : "-plain");
}

}  // namespace wavemu::nn
