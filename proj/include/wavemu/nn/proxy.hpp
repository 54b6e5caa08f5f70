#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wavemu/nn/layers.hpp"
#include "wavemu/phy/types.hpp"

namespace wavemu::nn {

struct ProxyConfig {
    std::size_t layers = 3;
    std::size_t kernel = 5;
    std::size_t channels = 8;
    /// Sender/receiver nets add their input back (zero-initialized last
    /// layer), so a fresh proxy is the identity when noise is off.
    bool residual = true;
    /// Channel-net noise: per-sample complex variance ref_power * 10^(-snr/10).
    bool noise = true;
    double ref_power = 1.0;
};

/// g_proxy(s) = f_recv(f_send(s) + n). The channel net has no parameters.
class Proxy {
public:
    Proxy(ProxyConfig cfg, std::uint64_t seed);

    Var forward(Tape& t, Var w, double snr_db, std::uint64_t noise_seed, bool frozen = false);
    std::vector<cplx> apply(std::span<const cplx> samples, double snr_db, std::uint64_t noise_seed);

    std::vector<Param*> params();
    ProxyConfig& config() { return cfg_; }
    const ProxyConfig& config() const { return cfg_; }
    double noise_variance(double snr_db) const;
    std::string fingerprint() const;

private:
    Var net(Tape& t, Stack<Conv1d>& s, Var w, bool frozen);

    ProxyConfig cfg_;
    Stack<Conv1d> send_;
    Stack<Conv1d> recv_;
};

}  // namespace wavemu::nn
