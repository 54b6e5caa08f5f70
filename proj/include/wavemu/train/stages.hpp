#pragma once
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "wavemu/link/sdm.hpp"
#include "wavemu/nn/compensator.hpp"
#include "wavemu/nn/jscc.hpp"
#include "wavemu/nn/proxy.hpp"

namespace wavemu::train {

/// splitmix64 of (master, tag): independent sub-seeds from one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);

struct Curriculum {
    enum class Snr { Fixed, Uniform };
    enum class Source { Gaussian, Jscc };
    Snr snr = Snr::Uniform;
    double fixed_snr_db = 20.0;
    double snr_min_db = -5.0;
    double snr_max_db = 35.0;
    Source source = Source::Jscc;

    double sample(std::mt19937_64& rng) const;
    void validate() const;
};

struct TrainConfig {
    std::size_t batch_size = 16;
    double momentum = 0.9;
    double gamma = 0.5;
    double tolerance = 1e-3;
    std::uint64_t seed = 1;

    // AWGN pretraining of the JSCC model (ideal analog link only).
    std::size_t train_images = 512;
    std::size_t pretrain_epochs = 60;
    double lr_jscc = 0.02;

    // Stage 1: compensator on known band-limited waveforms.
    std::size_t stage1_epochs = 150;
    std::size_t stage1_waveforms = 256;
    double stage1_snr_db = 35.0;
    int stage1_band_lo = 1;
    int stage1_band_hi = 0;  // 0: half the number of chosen subcarriers
    double lr_comp = 0.01;

    // Stage 2: proxy on link records.
    std::size_t stage2_epochs = 10;
    std::size_t stage2_records = 128;
    double heldout_fraction = 0.25;
    double lr_proxy = 0.005;

    // Stage 3: alternating joint optimization.
    std::size_t max_cycles = 20;
    std::size_t phase_a_epochs = 5;
    std::size_t phase_b_epochs = 2;
    std::size_t refresh_batch_count = 4;
    bool relax_quantizer = true;
    double lr_joint = 0.005;

    Curriculum curriculum;

    void validate() const;
};

struct LossRow {
    std::size_t cycle = 0;
    std::string phase;
    double total = 0.0;
    double jscc = 0.0;
    double comp = 0.0;
};
using LossTrace = std::vector<LossRow>;

/// Header: cycle,phase,loss_total,loss_jscc,loss_comp.
void write_loss_csv(const std::filesystem::path& path, const LossTrace& trace);
std::string loss_csv(const LossTrace& trace);

// ---- AWGN pretraining ------------------------------------------------------

LossTrace pretrain_awgn(nn::ToyJscc& jscc, std::span<const nn::Tensor> images, const TrainConfig& cfg);

// ---- Stage 1 ---------------------------------------------------------------

struct WavePair {
    std::vector<cplx> input;   // what the compensator sees
    std::vector<cplx> target;  // ground truth
    double snr_db = 0.0;
};

/// Known waveforms through the real link: band-limited per-sample targets,
/// projected by the sender, recovered by the soft receiver. One OFDM symbol
/// per pair.
std::vector<WavePair> known_waveform_pairs(const Emulator& link, std::size_t count, double snr_db,
                                           const TrainConfig& cfg, std::uint64_t seed);

struct Stage1Result {
    LossTrace trace;            // one row per epoch (mean training loss)
    double initial_mse = 0.0;   // held-out, untrained model
    double final_mse = 0.0;     // held-out, trained model
};

Stage1Result train_compensator(nn::Compensator& comp, std::span<const WavePair> train, std::span<const WavePair> heldout,
                               const TrainConfig& cfg);
Stage1Result stage1_train_compensator(const Emulator& link, nn::Compensator& comp, const TrainConfig& cfg);

// ---- Stage 2 ---------------------------------------------------------------

/// Link records for `symbol_sets` (one OFDM symbol each) at curriculum SNRs.
std::vector<LinkRecord> collect_records(const Emulator& link, std::span<const std::vector<cplx>> symbol_sets,
                                        const Curriculum& cur, std::uint64_t seed);

/// One record per image, encoded by `jscc`, or Gaussian symbols when the
/// curriculum asks for them.
std::vector<LinkRecord> stage2_records(const Emulator& link, nn::ToyJscc& jscc, std::span<const nn::Tensor> images,
                                       const TrainConfig& cfg, std::uint64_t seed);

struct Fidelity {
    double heldout_mse = 0.0;  // MSE(proxy(s), real s~)
    double sigma2 = 0.0;       // channel noise variance in waveform units
    double floor = 0.0;        // MSE(noiseless s~, s)
    double bound() const { return 2.0 * sigma2 + floor; }
};

/// Sets ref_power from the transmitted frames: mean |x|^2 / scale^2.
void calibrate_proxy(nn::Proxy& proxy, const Emulator& link, std::span<const LinkRecord> records);
Fidelity proxy_fidelity(nn::Proxy& proxy, const Emulator& link, std::span<const LinkRecord> heldout, std::uint64_t seed);
LossTrace fit_proxy(nn::Proxy& proxy, std::span<const LinkRecord> records, std::size_t epochs, const TrainConfig& cfg,
                    std::uint64_t seed, std::size_t cycle = 0, const std::string& phase = "stage2");

struct Stage2Result {
    LossTrace trace;
    Fidelity fidelity;
};

/// Splits `records` into train / held-out, calibrates, trains, evaluates.
Stage2Result stage2_train_proxy(std::span<const LinkRecord> records, nn::Proxy& proxy, const Emulator& link,
                                const TrainConfig& cfg);

// ---- Stage 3 ---------------------------------------------------------------

struct PhaseALoss {
    nn::Var total, jscc, comp;
    struct Values {
        double total = 0.0, jscc = 0.0, comp = 0.0;
    };
};

/// image -> enc -> synth -> proxy -> comp -> analyze -> dec, with
/// L_total = L_JSCC + gamma L_comp and L_comp = MSE(comp output, synth(S)).
/// quant_width > 0 adds uniform noise of that width per axis to S before
/// synth, standing in for the sender's quantizer.
PhaseALoss phase_a_loss(nn::Tape& t, nn::ToyJscc& jscc, nn::Compensator& comp, nn::Proxy& proxy, const Emulator& link,
                        nn::Var image, double snr_db, std::uint64_t noise_seed, double gamma, bool freeze_proxy = true,
                        double quant_width = 0.0);

/// Quantizer step of the link in unit-symbol units.
double quantizer_width(const Emulator& link);

struct Stage3Result {
    LossTrace trace;
    std::size_t cycles = 0;
    std::vector<Fidelity> refresh_before;  // per cycle, on that cycle's fresh records
    std::vector<Fidelity> refresh_after;
};

Stage3Result stage3_alternate(nn::ToyJscc& jscc, nn::Compensator& comp, nn::Proxy& proxy, const Emulator& link,
                              std::span<const nn::Tensor> images, const TrainConfig& cfg);

// ---- Evaluation ------------------------------------------------------------

struct ImageEval {
    double image_mse = 0.0;
    double symbol_mse = 0.0;
    std::vector<double> per_image;  // per-image MSE, for standard errors
};

/// Images through the real emulated link, one OFDM symbol per image; the
/// compensator (if any) runs per OFDM symbol.
ImageEval evaluate_real_link(nn::ToyJscc& jscc, nn::Compensator* comp, const Emulator& link,
                             std::span<const nn::Tensor> images, double snr_db, std::uint64_t seed,
                             RecoveryMode mode = RecoveryMode::Soft);

/// AWGN-trained JSCC over the emulated link without adaptation.
std::vector<double> zero_shot_deploy(nn::ToyJscc& jscc_awgn, const Emulator& link, std::span<const nn::Tensor> images,
                                     std::span<const double> snrs, std::uint64_t seed);

/// The image link: the first K certified subcarriers nearest DC, so each
/// image occupies exactly one OFDM symbol.
Emulator image_link(const PhyConfig& cfg, std::size_t k);

// ---- Whole pipeline --------------------------------------------------------

struct ModelSet {
    nn::ToyJscc jscc_awgn;       // ideal-link pretrained (zero-shot baseline)
    nn::Compensator comp_stage1; // stage-1 compensator (stage-0 baseline)
    nn::ToyJscc jscc;            // stage-3
    nn::Compensator comp;        // stage-3
    nn::Proxy proxy;             // stage-3
};

struct PipelineResult {
    LossTrace trace;
    Stage1Result stage1;
    Stage2Result stage2;
    Stage3Result stage3;
};

ModelSet make_models(const PhyConfig& cfg, const nn::JsccConfig& jc, const nn::CompensatorConfig& cc,
                     const nn::ProxyConfig& pc, std::uint64_t seed);
nn::CompensatorConfig default_compensator_config(const PhyConfig& cfg, std::size_t n_chosen);

/// Pretrain, stage 1, stage 2, stage 3 on procedurally generated glyphs.
PipelineResult run_pipeline(ModelSet& models, const PhyConfig& cfg, const TrainConfig& tc);

}  // namespace wavemu::train
