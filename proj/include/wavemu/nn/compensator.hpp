#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wavemu/nn/layers.hpp"
#include "wavemu/phy/config.hpp"
#include "wavemu/phy/types.hpp"

namespace wavemu::nn {

/// Waveforms on the tape are (N_s, 2) tensors holding I and Q.
Tensor wave_tensor(std::span<const cplx> samples);
std::vector<cplx> to_complex(const Tensor& t);

/// Zero-pads N_s to a multiple of `period` and folds to (rows, period, 2).
Tensor reshape_period(const Tensor& w, std::size_t period);
/// Unfolds (rows, period, 2) and keeps the first `ns` samples.
Tensor inverse_reshape_trunc(const Tensor& t, std::size_t ns);

struct PeriodSpec {
    std::size_t period_o = 80;  // samples per OFDM symbol
    std::size_t period_j = 2;   // samples per JSCC symbol
};

/// round(samples_per_ofdm / n_chosen), at least 1.
std::size_t default_period_j(const PhyConfig& cfg, std::size_t n_chosen);

struct CompensatorConfig {
    PeriodSpec periods;
    std::size_t cp_len = 16;
    std::size_t layers = 2;
    std::size_t kernel = 3;
    std::size_t channels = 8;
    bool residual = true;
    /// Adds two input channels computed from the sample index: the phase
    /// within the OFDM period and a cyclic-prefix indicator.
    bool positional = true;
    /// Adds a constant input channel carrying the channel SNR, so one model
    /// can denoise at low SNR and stay near identity at high SNR.
    bool snr_input = true;
};

/// SNR channel value: snr clamped to [-10, 40] dB, divided by 20.
double snr_feature(double snr_db);

/// s' = sum over i in {O, J} of Trunc(Unfold_i(f_conv(Fold_i(s)))) [+ s].
/// One f_conv is shared by both folds.
class Compensator {
public:
    Compensator(CompensatorConfig cfg, std::uint64_t seed);

    Var forward(Tape& t, Var w, double snr_db, bool frozen = false);
    std::vector<cplx> apply(std::span<const cplx> samples, double snr_db);
    /// Applies the model independently to consecutive `chunk`-sample blocks.
    std::vector<cplx> apply_chunked(std::span<const cplx> samples, std::size_t chunk, double snr_db);

    std::vector<Param*> params() { return conv_.params(); }
    const CompensatorConfig& config() const { return cfg_; }
    std::string fingerprint() const;

private:
    Var branch(Tape& t, Var w, std::size_t ns, std::size_t period, double snr_db, bool frozen);

    CompensatorConfig cfg_;
    Stack<Conv2d> conv_;
};

}  // namespace wavemu::nn
