#include "wavemu/train/stages.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "wavemu/error.hpp"
#include "wavemu/gf2/symbol_system.hpp"
#include "wavemu/link/channel.hpp"
#include "wavemu/link/waveform.hpp"
#include "wavemu/nn/optim.hpp"
#include "wavemu/phy/chain.hpp"

namespace wavemu::train {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Curriculum::sample(std::mt19937_64& rng) const {
    if (snr == Snr::Fixed) return fixed_snr_db;
    return std::uniform_real_distribution<double>(snr_min_db, snr_max_db)(rng);
}

void Curriculum::validate() const {
    if (!(snr_min_db <= snr_max_db)) throw ConfigError("curriculum: snr_min must not exceed snr_max");
    if (!std::isfinite(snr_min_db) || !std::isfinite(snr_max_db)) throw ConfigError("curriculum: SNR range must be finite");
}

void TrainConfig::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
    const std::size_t counts[] = {batch_size,       train_images,  pretrain_epochs, stage1_epochs,
                                  stage1_waveforms, stage2_epochs, stage2_records,  max_cycles,
                                  phase_a_epochs,   phase_b_epochs, refresh_batch_count};
    for (std::size_t c : counts)
        if (c < 1) throw ConfigError("training counts must all be >= 1");
    if (!(lr_jscc > 0 && lr_comp > 0 && lr_proxy > 0 && lr_joint > 0)) throw ConfigError("step sizes must be positive");
    if (!(momentum >= 0 && momentum < 1)) throw ConfigError("momentum must lie in [0, 1)");
    if (!(heldout_fraction > 0 && heldout_fraction < 1)) throw ConfigError("heldout_fraction must lie in (0, 1)");
    if (!(tolerance >= 0)) throw ConfigError("tolerance must be non-negative");
    if (stage1_band_lo < 1 || (stage1_band_hi != 0 && stage1_band_hi < stage1_band_lo))
        throw ConfigError("stage-1 band must satisfy 1 <= lo <= hi");
    curriculum.validate();
}

std::string loss_csv(const LossTrace& trace) {
    std::ostringstream os;
    os << "cycle,phase,loss_total,loss_jscc,loss_comp\n";
    os.precision(10);
    for (const auto& r : trace) os << r.cycle << ',' << r.phase << ',' << r.total << ',' << r.jscc << ',' << r.comp << '\n';
    return os.str();
}

void write_loss_csv(const std::filesystem::path& path, const LossTrace& trace) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path.string());
    os << loss_csv(trace);
}

namespace {

std::vector<std::size_t> shuffled(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    return idx;
}

void check_finite(double v, const char* stage, const LossTrace& trace) {
    if (std::isfinite(v)) return;
    throw NumericError(std::string(stage) + ": non-finite loss after " + std::to_string(trace.size()) + " trace rows");
}

/// Per-real-component mean squared error between two waveforms.
double wave_mse(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size() || a.empty()) throw FramingError("waveform size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
    return acc / (2.0 * static_cast<double>(a.size()));
}

}  // namespace

// ---- AWGN pretraining ------------------------------------------------------

LossTrace pretrain_awgn(nn::ToyJscc& jscc, std::span<const nn::Tensor> images, const TrainConfig& cfg) {
    cfg.validate();
    if (images.empty()) throw ConfigError("pretraining needs images");
    nn::Sgd opt(jscc.params(), cfg.lr_jscc, cfg.momentum);
    std::mt19937_64 rng(derive_seed(cfg.seed, 100));
    LossTrace trace;
    const std::size_t lat = 2 * jscc.config().k;
    for (std::size_t epoch = 0; epoch < cfg.pretrain_epochs; ++epoch) {
        const auto order = shuffled(images.size(), rng);
        double sum = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            for (std::size_t i = start; i < end; ++i) {
                const double snr = cfg.curriculum.sample(rng);
                const auto noise = add_complex_noise(std::vector<cplx>(lat / 2), noise_variance(1.0, snr), rng());
                nn::Tape t;
                nn::Var img = t.constant(images[order[i]]);
                nn::Var z = jscc.encode(t, img);
                z = nn::add(t, z, t.constant(nn::Tensor({lat}, nn::unpair_latent(noise))));
                nn::Var loss = nn::mse(t, jscc.decode(t, z), img);
                sum += t.value(loss)[0];
                t.backward(loss);
            }
            opt.step(1.0 / static_cast<double>(end - start));
        }
        const double mean = sum / static_cast<double>(images.size());
        trace.push_back({epoch, "pretrain", mean, mean, 0.0});
        check_finite(mean, "pretrain", trace);
    }
    return trace;
}

// ---- Stage 1 ---------------------------------------------------------------

std::vector<WavePair> known_waveform_pairs(const Emulator& link, std::size_t count, double snr_db,
                                           const TrainConfig& cfg, std::uint64_t seed) {
    const PhyConfig& pc = link.config();
    const std::size_t np = link.chosen().size();
    const int hi = cfg.stage1_band_hi > 0 ? cfg.stage1_band_hi : std::max(cfg.stage1_band_lo, static_cast<int>(np / 2));
    std::vector<WavePair> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto w = band_limited_waveform(static_cast<std::size_t>(pc.samples_per_ofdm()), cfg.stage1_band_lo, hi, pc,
                                       derive_seed(seed, 2 * i));
        const auto plan = link.sender_invert_waveform(w, np);
        const auto rx = awgn(link.transmit(plan), snr_db, derive_seed(seed, 2 * i + 1));
        out.push_back({link.receiver_recover_soft(rx, plan).reconstructed, std::move(w), snr_db});
    }
    return out;
}

namespace {

double compensator_mse(nn::Compensator& comp, std::span<const WavePair> pairs) {
    double acc = 0.0;
    for (const auto& p : pairs) acc += wave_mse(comp.apply(p.input, p.snr_db), p.target);
    return acc / static_cast<double>(pairs.size());
}

}  // namespace

Stage1Result train_compensator(nn::Compensator& comp, std::span<const WavePair> train, std::span<const WavePair> heldout,
                               const TrainConfig& cfg) {
    cfg.validate();
    if (train.empty() || heldout.empty()) throw ConfigError("stage 1 needs training and held-out waveforms");
    Stage1Result res;
    res.initial_mse = compensator_mse(comp, heldout);
    nn::Sgd opt(comp.params(), cfg.lr_comp, cfg.momentum);
    std::mt19937_64 rng(derive_seed(cfg.seed, 200));
    for (std::size_t epoch = 0; epoch < cfg.stage1_epochs; ++epoch) {
        const auto order = shuffled(train.size(), rng);
        double sum = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            for (std::size_t i = start; i < end; ++i) {
                const auto& p = train[order[i]];
                nn::Tape t;
                nn::Var out = comp.forward(t, t.constant(nn::wave_tensor(p.input)), p.snr_db);
                nn::Var loss = nn::mse(t, out, t.constant(nn::wave_tensor(p.target)));
                sum += t.value(loss)[0];
                t.backward(loss);
            }
            opt.step(1.0 / static_cast<double>(end - start));
        }
        const double mean = sum / static_cast<double>(train.size());
        res.trace.push_back({epoch, "stage1", mean, 0.0, mean});
        check_finite(mean, "stage 1", res.trace);
    }
    res.final_mse = compensator_mse(comp, heldout);
    return res;
}

Stage1Result stage1_train_compensator(const Emulator& link, nn::Compensator& comp, const TrainConfig& cfg) {
    const std::size_t n = cfg.stage1_waveforms;
    const auto held = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(cfg.heldout_fraction * n)));
    const auto train = known_waveform_pairs(link, n, cfg.stage1_snr_db, cfg, derive_seed(cfg.seed, 201));
    const auto test = known_waveform_pairs(link, held, cfg.stage1_snr_db, cfg, derive_seed(cfg.seed, 202));
    return train_compensator(comp, train, test, cfg);
}

// ---- Stage 2 ---------------------------------------------------------------

std::vector<LinkRecord> collect_records(const Emulator& link, std::span<const std::vector<cplx>> symbol_sets,
                                        const Curriculum& cur, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<LinkRecord> out;
    out.reserve(symbol_sets.size());
    for (const auto& s : symbol_sets) {
        const double snr = cur.sample(rng);
        const std::uint64_t noise_seed = rng();
        out.push_back(link.emulated_link(s, snr, noise_seed).record);
    }
    return out;
}

std::vector<LinkRecord> stage2_records(const Emulator& link, nn::ToyJscc& jscc, std::span<const nn::Tensor> images,
                                       const TrainConfig& cfg, std::uint64_t seed) {
    std::vector<std::vector<cplx>> sets;
    const std::size_t n = cfg.stage2_records;
    for (std::size_t i = 0; i < n; ++i) {
        if (cfg.curriculum.source == Curriculum::Source::Jscc && !images.empty())
            sets.push_back(jscc.encode(images[i % images.size()]));
        else
            sets.push_back(gaussian_symbols(link.chosen().size(), derive_seed(seed, 1000 + i)));
    }
    return collect_records(link, sets, cfg.curriculum, derive_seed(seed, 1));
}

void calibrate_proxy(nn::Proxy& proxy, const Emulator& link, std::span<const LinkRecord> records) {
    if (records.empty()) throw ConfigError("proxy calibration needs records");
    double p = 0.0;
    for (const auto& r : records) p += mean_power(r.input_waveform);
    proxy.config().ref_power = p / static_cast<double>(records.size()) / (link.scale() * link.scale());
}

Fidelity proxy_fidelity(nn::Proxy& proxy, const Emulator& link, std::span<const LinkRecord> heldout, std::uint64_t seed) {
    if (heldout.empty()) throw ConfigError("fidelity needs held-out records");
    Fidelity f;
    for (std::size_t i = 0; i < heldout.size(); ++i) {
        const auto& r = heldout[i];
        f.heldout_mse += wave_mse(proxy.apply(r.target_waveform, r.snr_db, derive_seed(seed, i)), r.reconstructed);
        f.sigma2 += proxy.noise_variance(r.snr_db) / 2.0;
        const auto symbols = link.analyze(r.target_waveform, r.estimates.size());
        f.floor += wave_mse(link.emulated_link(symbols, kNoiseless, 0).record.reconstructed, r.target_waveform);
    }
    const double n = static_cast<double>(heldout.size());
    f.heldout_mse /= n;
    f.sigma2 /= n;
    f.floor /= n;
    return f;
}

LossTrace fit_proxy(nn::Proxy& proxy, std::span<const LinkRecord> records, std::size_t epochs, const TrainConfig& cfg,
                    std::uint64_t seed, std::size_t cycle, const std::string& phase) {
    if (records.empty()) throw ConfigError("proxy training needs records");
    nn::Sgd opt(proxy.params(), cfg.lr_proxy, cfg.momentum);
    std::mt19937_64 rng(seed);
    LossTrace trace;
    // Fitted with the channel net off: with independent injected noise the
    // MSE-optimal receiver net learns to cancel its own noise.
    const bool noise = proxy.config().noise;
    proxy.config().noise = false;
    struct Restore {
        nn::Proxy& p;
        bool v;
        ~Restore() { p.config().noise = v; }
    } restore{proxy, noise};
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        const auto order = shuffled(records.size(), rng);
        double sum = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            for (std::size_t i = start; i < end; ++i) {
                const auto& r = records[order[i]];
                nn::Tape t;
                nn::Var out = proxy.forward(t, t.constant(nn::wave_tensor(r.target_waveform)), r.snr_db, rng());
                nn::Var loss = nn::mse(t, out, t.constant(nn::wave_tensor(r.reconstructed)));
                sum += t.value(loss)[0];
                t.backward(loss);
            }
            opt.step(1.0 / static_cast<double>(end - start));
        }
        const double mean = sum / static_cast<double>(records.size());
        trace.push_back({cycle, phase, mean, 0.0, 0.0});
        check_finite(mean, "proxy training", trace);
    }
    return trace;
}

Stage2Result stage2_train_proxy(std::span<const LinkRecord> records, nn::Proxy& proxy, const Emulator& link,
                                const TrainConfig& cfg) {
    cfg.validate();
    const auto held = static_cast<std::size_t>(std::lround(cfg.heldout_fraction * static_cast<double>(records.size())));
    if (records.size() < 2 * cfg.batch_size || held == 0 || held >= records.size())
        throw ConfigError("stage 2 needs at least two batches of records (" + std::to_string(2 * cfg.batch_size) +
                          "), got " + std::to_string(records.size()));
    const auto train = records.first(records.size() - held);
    const auto test = records.last(held);
    Stage2Result res;
    calibrate_proxy(proxy, link, train);
    res.trace = fit_proxy(proxy, train, cfg.stage2_epochs, cfg, derive_seed(cfg.seed, 300));
    res.fidelity = proxy_fidelity(proxy, link, test, derive_seed(cfg.seed, 301));
    return res;
}

// ---- Stage 3 ---------------------------------------------------------------

PhaseALoss phase_a_loss(nn::Tape& t, nn::ToyJscc& jscc, nn::Compensator& comp, nn::Proxy& proxy, const Emulator& link,
                        nn::Var image, double snr_db, std::uint64_t noise_seed, double gamma, bool freeze_proxy,
                        double quant_width) {
    const PhyConfig& pc = link.config();
    const std::vector<int> chosen = link.chosen();
    const std::size_t k = jscc.config().k;
    const int symbols = ofdm_symbols_for(k, chosen.size());
    const std::size_t ns = static_cast<std::size_t>(symbols * pc.samples_per_ofdm());

    auto synth_f = [pc, chosen, symbols](std::span<const double> z) {
        return nn::unpair_latent(synth(nn::pair_latent(z), pc, chosen, symbols));
    };
    auto synth_a = [pc, chosen, k](std::span<const double> w) {
        return nn::unpair_latent(synth_adjoint(nn::pair_latent(w), pc, chosen, k));
    };
    auto analyze_f = [pc, chosen, k](std::span<const double> w) {
        return nn::unpair_latent(analyze(nn::pair_latent(w), pc, chosen, k));
    };
    auto analyze_a = [pc, chosen, symbols](std::span<const double> z) {
        return nn::unpair_latent(analyze_adjoint(nn::pair_latent(z), pc, chosen, symbols));
    };

    nn::Var z = jscc.encode(t, image);
    nn::Var s = nn::linear_map(t, z, synth_f, synth_a, {ns, 2});
    nn::Var sent = s;
    if (quant_width > 0.0) {
        nn::Tensor u({2 * k});
        std::mt19937_64 rng(derive_seed(noise_seed, 77));
        std::uniform_real_distribution<double> d(-quant_width / 2.0, quant_width / 2.0);
        for (auto& v : u.data) v = d(rng);
        sent = nn::linear_map(t, nn::add(t, z, t.constant(std::move(u))), synth_f, synth_a, {ns, 2});
    }
    nn::Var shat = proxy.forward(t, sent, snr_db, noise_seed, freeze_proxy);
    nn::Var sprime = comp.forward(t, shat, snr_db);
    nn::Var zhat = nn::linear_map(t, sprime, analyze_f, analyze_a, {2 * k});
    nn::Var out = jscc.decode(t, zhat);
    PhaseALoss l;
    l.jscc = nn::mse(t, out, image);
    l.comp = nn::mse(t, sprime, s);
    l.total = nn::add(t, l.jscc, nn::scale(t, l.comp, gamma));
    return l;
}

double quantizer_width(const Emulator& link) { return link.constellation().step() / link.scale(); }

namespace {

// Fixed images, SNR grid and noise seeds, so cycle-to-cycle changes are not
// sampling noise.
PhaseALoss::Values joint_validation(nn::ToyJscc& jscc, nn::Compensator& comp, nn::Proxy& proxy, const Emulator& link,
                                    std::span<const nn::Tensor> images, const TrainConfig& cfg, double qw) {
    const std::size_t n = std::min<std::size_t>(images.size(), 64);
    const Curriculum& cur = cfg.curriculum;
    std::vector<double> snrs;
    if (cur.snr == Curriculum::Snr::Fixed) snrs = {cur.fixed_snr_db};
    else
        for (int i = 0; i < 5; ++i) snrs.push_back(cur.snr_min_db + (cur.snr_max_db - cur.snr_min_db) * i / 4.0);
    PhaseALoss::Values v;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < snrs.size(); ++j) {
            nn::Tape t;
            const auto l = phase_a_loss(t, jscc, comp, proxy, link, t.constant(images[i]), snrs[j],
                                        derive_seed(cfg.seed, 500 + i * snrs.size() + j), cfg.gamma, true, qw);
            v.total += t.value(l.total)[0];
            v.jscc += t.value(l.jscc)[0];
            v.comp += t.value(l.comp)[0];
        }
    const double m = static_cast<double>(n * snrs.size());
    v.total /= m;
    v.jscc /= m;
    v.comp /= m;
    return v;
}

}  // namespace

Stage3Result stage3_alternate(nn::ToyJscc& jscc, nn::Compensator& comp, nn::Proxy& proxy, const Emulator& link,
                              std::span<const nn::Tensor> images, const TrainConfig& cfg) {
    cfg.validate();
    if (images.empty()) throw ConfigError("stage 3 needs images");
    nn::Sgd opt(jscc.params(), cfg.lr_joint, cfg.momentum);
    nn::Sgd opt_comp(comp.params(), cfg.lr_comp, cfg.momentum);
    std::mt19937_64 rng(derive_seed(cfg.seed, 400));
    Stage3Result res;
    const double qw = cfg.relax_quantizer ? quantizer_width(link) : 0.0;
    const auto v0 = joint_validation(jscc, comp, proxy, link, images, cfg, qw);
    res.trace.push_back({0, "val", v0.total, v0.jscc, v0.comp});
    const double first = v0.total;
    double prev = first;
    for (std::size_t cycle = 1; cycle <= cfg.max_cycles; ++cycle) {
        for (std::size_t epoch = 0; epoch < cfg.phase_a_epochs; ++epoch) {
            const auto order = shuffled(images.size(), rng);
            double st = 0.0, sj = 0.0, sc = 0.0;
            for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
                const std::size_t end = std::min(order.size(), start + cfg.batch_size);
                for (std::size_t i = start; i < end; ++i) {
                    const double snr = cfg.curriculum.sample(rng);
                    nn::Tape t;
                    const auto l = phase_a_loss(t, jscc, comp, proxy, link, t.constant(images[order[i]]), snr, rng(),
                                                cfg.gamma, true, qw);
                    st += t.value(l.total)[0];
                    sj += t.value(l.jscc)[0];
                    sc += t.value(l.comp)[0];
                    t.backward(l.total);
                }
                opt.step(1.0 / static_cast<double>(end - start));
                opt_comp.step(1.0 / static_cast<double>(end - start));
            }
            const double n = static_cast<double>(images.size());
            res.trace.push_back({cycle, "A", st / n, sj / n, sc / n});
            check_finite(st, "stage 3 phase A", res.trace);
        }
        const auto v = joint_validation(jscc, comp, proxy, link, images, cfg, qw);
        res.trace.push_back({cycle, "val", v.total, v.jscc, v.comp});
        const double cycle_loss = v.total;
        if (!(cycle_loss <= 10.0 * first))
            throw NumericError("stage 3 diverged: joint loss " + std::to_string(cycle_loss) + " vs initial " +
                               std::to_string(first) + "\n" + loss_csv(res.trace));

        // Phase B: fresh waveforms from the current encoder through the real link.
        const std::size_t fresh_n = cfg.refresh_batch_count * cfg.batch_size;
        std::vector<std::vector<cplx>> sets;
        std::uniform_int_distribution<std::size_t> pick(0, images.size() - 1);
        for (std::size_t i = 0; i < fresh_n; ++i) sets.push_back(jscc.encode(images[pick(rng)]));
        const auto fresh = collect_records(link, sets, cfg.curriculum, rng());
        const std::size_t held = std::max<std::size_t>(1, fresh.size() / 4);
        const auto fresh_train = std::span(fresh).first(fresh.size() - held);
        const auto fresh_test = std::span(fresh).last(held);
        const std::uint64_t eval_seed = rng();
        res.refresh_before.push_back(proxy_fidelity(proxy, link, fresh_test, eval_seed));
        const auto tb = fit_proxy(proxy, fresh_train, cfg.phase_b_epochs, cfg, rng(), cycle, "B");
        res.trace.insert(res.trace.end(), tb.begin(), tb.end());
        res.refresh_after.push_back(proxy_fidelity(proxy, link, fresh_test, eval_seed));
        res.cycles = cycle;

        if ((prev - cycle_loss) / prev < cfg.tolerance) break;
        prev = cycle_loss;
    }
    return res;
}

// ---- Evaluation ------------------------------------------------------------

ImageEval evaluate_real_link(nn::ToyJscc& jscc, nn::Compensator* comp, const Emulator& link,
                             std::span<const nn::Tensor> images, double snr_db, std::uint64_t seed, RecoveryMode mode) {
    if (images.empty()) throw ConfigError("evaluation needs images");
    const std::size_t k = jscc.config().k;
    if (k % link.chosen().size() != 0 && link.chosen().size() % k != 0)
        throw ConfigError("JSCC symbol count must tile the chosen subcarriers");
    std::vector<cplx> all;
    all.reserve(images.size() * k);
    for (const auto& img : images) {
        const auto s = jscc.encode(img);
        all.insert(all.end(), s.begin(), s.end());
    }
    WaveformMap map;
    if (comp) {
        const auto chunk = static_cast<std::size_t>(ofdm_symbols_for(k, link.chosen().size()) *
                                                    link.config().samples_per_ofdm());
        map = [comp, chunk, snr_db](std::span<const cplx> w) { return comp->apply_chunked(w, chunk, snr_db); };
    }
    const auto out = link.emulated_link(all, snr_db, seed, mode, map);
    ImageEval ev;
    double sym = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) sym += std::norm(all[i] - out.estimates[i]);
    ev.symbol_mse = sym / static_cast<double>(all.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto dec = jscc.decode(std::span(out.estimates).subspan(i * k, k));
        double e = 0.0;
        for (std::size_t p = 0; p < dec.size(); ++p) e += (dec[p] - images[i][p]) * (dec[p] - images[i][p]);
        e /= static_cast<double>(dec.size());
        ev.per_image.push_back(e);
        acc += e;
    }
    ev.image_mse = acc / static_cast<double>(images.size());
    return ev;
}

std::vector<double> zero_shot_deploy(nn::ToyJscc& jscc_awgn, const Emulator& link, std::span<const nn::Tensor> images,
                                     std::span<const double> snrs, std::uint64_t seed) {
    std::vector<double> out;
    for (std::size_t i = 0; i < snrs.size(); ++i)
        out.push_back(evaluate_real_link(jscc_awgn, nullptr, link, images, snrs[i], derive_seed(seed, i)).image_mse);
    return out;
}

Emulator image_link(const PhyConfig& cfg, std::size_t k) {
    const auto sys = gf2::SymbolSystem::build(cfg);
    auto cert = gf2::certify_subset(sys, cfg, gf2::default_subcarrier_subset(cfg));
    if (!cert.full_rank()) throw CapacityError("no full-rank subcarrier subset for this configuration");
    auto subset = cert.subcarriers;
    if (k >= subset.size()) return Emulator(cfg, subset);
    std::stable_sort(subset.begin(), subset.end(), [](int a, int b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        return a < b;
    });
    subset.resize(k);
    return Emulator(cfg, subset);
}

// ---- Whole pipeline --------------------------------------------------------

nn::CompensatorConfig default_compensator_config(const PhyConfig& cfg, std::size_t n_chosen) {
    nn::CompensatorConfig c;
    c.periods.period_o = static_cast<std::size_t>(cfg.samples_per_ofdm());
    c.periods.period_j = nn::default_period_j(cfg, n_chosen);
    c.cp_len = static_cast<std::size_t>(cfg.cp_len);
    return c;
}

ModelSet make_models(const PhyConfig&, const nn::JsccConfig& jc, const nn::CompensatorConfig& cc,
                     const nn::ProxyConfig& pc, std::uint64_t seed) {
    nn::ToyJscc j(jc, derive_seed(seed, 1));
    nn::Compensator c(cc, derive_seed(seed, 2));
    return ModelSet{j, c, j, c, nn::Proxy(pc, derive_seed(seed, 3))};
}

PipelineResult run_pipeline(ModelSet& models, const PhyConfig& cfg, const TrainConfig& tc) {
    tc.validate();
    const Emulator link = image_link(cfg, models.jscc_awgn.config().k);
    const auto images = nn::glyph_images(tc.train_images, derive_seed(tc.seed, 10), models.jscc_awgn.config().side);
    PipelineResult res;
    res.trace = pretrain_awgn(models.jscc_awgn, images, tc);
    res.stage1 = stage1_train_compensator(link, models.comp_stage1, tc);
    res.trace.insert(res.trace.end(), res.stage1.trace.begin(), res.stage1.trace.end());
    models.jscc = models.jscc_awgn;
    models.comp = models.comp_stage1;
    const auto records = stage2_records(link, models.jscc, images, tc, derive_seed(tc.seed, 11));
    res.stage2 = stage2_train_proxy(records, models.proxy, link, tc);
    res.trace.insert(res.trace.end(), res.stage2.trace.begin(), res.stage2.trace.end());
    res.stage3 = stage3_alternate(models.jscc, models.comp, models.proxy, link, images, tc);
    res.trace.insert(res.trace.end(), res.stage3.trace.begin(), res.stage3.trace.end());
    return res;
}

}  // namespace wavemu::train
