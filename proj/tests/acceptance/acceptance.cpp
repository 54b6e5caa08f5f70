// Acceptance run: one PASS/FAIL line per requirement, nonzero exit on any failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "wavemu/gf2/solver.hpp"
#include "wavemu/gf2/symbol_system.hpp"
#include "wavemu/harness/sweep.hpp"
#include "wavemu/link/channel.hpp"
#include "wavemu/link/sdm.hpp"
#include "wavemu/link/waveform.hpp"
#include "wavemu/nn/compensator.hpp"
#include "wavemu/nn/grad_check.hpp"
#include "wavemu/nn/jscc.hpp"
#include "wavemu/nn/layers.hpp"
#include "wavemu/nn/proxy.hpp"
#include "wavemu/phy/chain.hpp"
#include "wavemu/phy/coding.hpp"
#include "wavemu/train/stages.hpp"

using namespace wavemu;
using Clock = std::chrono::steady_clock;

namespace {

const int kMods[] = {2, 4, 16, 64};
const CodeRate kRates[] = {CodeRate::R1_2, CodeRate::R2_3, CodeRate::R3_4, CodeRate::R5_6};

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += " FAILED(" + what + ")";
        }
    }
    void note(const std::string& s) { detail += " " + s; }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Bits random_bits(std::size_t n, std::mt19937_64& rng) {
    Bits b(n);
    for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

gf2::Vector random_vector(std::size_t n, std::mt19937_64& rng) {
    gf2::Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1u);
    return v;
}

// ---------------------------------------------------------------------------

Outcome phy_conformance() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    const std::size_t n_vec = 1000;

    std::size_t bad = 0;
    for (std::size_t t = 0; t < n_vec; ++t) {
        const auto b = random_bits(1 + rng() % 400, rng);
        const auto seed = static_cast<std::uint8_t>(1 + rng() % 127);
        bad += scramble(b, seed) != oracle::scramble(b, seed);
    }
    o.require(bad == 0, "scrambler " + std::to_string(bad));

    const int nums[] = {1, 2, 3, 5}, dens[] = {2, 3, 4, 6};
    bad = 0;
    for (std::size_t t = 0; t < n_vec; ++t) {
        const int r = static_cast<int>(rng() % 4);
        const auto m = random_bits(60 * (1 + rng() % 6), rng);
        bad += puncture(m, kRates[r]) != oracle::puncture(m, nums[r], dens[r]);
    }
    o.require(bad == 0, "puncturer " + std::to_string(bad));

    bad = 0;
    for (std::size_t t = 0; t < n_vec; ++t) {
        const int bpsc = std::array{1, 2, 4, 6}[rng() % 4];
        const int n = 48 * bpsc;
        const auto block = random_bits(static_cast<std::size_t>(n), rng);
        Bits ref(block.size());
        for (std::size_t k = 0; k < block.size(); ++k)
            ref[oracle::interleave_dest(k, static_cast<std::size_t>(n), static_cast<std::size_t>(bpsc))] = block[k];
        bad += interleave(block, n, bpsc) != ref;
    }
    o.require(bad == 0, "interleaver " + std::to_string(bad));

    std::size_t errors = 0, total = 0;
    for (int m : kMods)
        for (auto r : kRates) {
            const auto cfg = PhyConfig::standard(m, r);
            const auto b = random_bits(static_cast<std::size_t>(20 * cfg.data_bits_per_symbol()), rng);
            const auto out = rx_chain(tx_chain(b, cfg), cfg);
            for (std::size_t i = 0; i < b.size(); ++i) errors += out[i] != b[i];
            total += b.size();
        }
    o.require(errors == 0, "loopback bit errors " + std::to_string(errors));
    const double secs = seconds_since(t0);
    o.require(secs < 30.0, "runtime");
    o.note("vectors=3x" + std::to_string(n_vec) + " loopback_bits=" + std::to_string(total) + " ber=" +
           fmt("%.1e", static_cast<double>(errors) / static_cast<double>(total)) + fmt(" time=%.2fs", secs));
    return o;
}

Outcome gf2_inversion() {
    Outcome o;
    std::mt19937_64 rng(202);
    std::size_t probes = 0, mismatched = 0, rank_ok = 0, configs = 0;
    for (int m : kMods)
        for (auto r : kRates) {
            const auto cfg = PhyConfig::standard(m, r);
            const auto sys = gf2::SymbolSystem::build(cfg);
            for (int t = 0; t < 1000; ++t) {
                const auto x = random_vector(sys.beta(), rng);
                const ConvState s{static_cast<std::uint8_t>(rng() & 0x3F)};
                mismatched += sys.coded_bits(x, s).to_bits() != gf2::pipeline_symbol_bits(x.to_bits(), s, cfg);
                ++probes;
            }
            const auto cert = gf2::certify_subset(sys, cfg, gf2::default_subcarrier_subset(cfg));
            const auto cp = gf2::restrict_rows(sys, cfg, cert.subcarriers);
            ++configs;
            rank_ok += cert.subcarriers.size() == gf2::max_usable_subcarriers(cfg) && gf2::rank(cp) == cp.rows();
        }
    o.require(mismatched == 0, "probe mismatches " + std::to_string(mismatched));
    o.require(rank_ok == configs, "full rank " + std::to_string(rank_ok) + "/" + std::to_string(configs));

    const auto cfg = PhyConfig::standard();
    const auto sys = gf2::SymbolSystem::build(cfg);
    const auto cert = gf2::certify_subset(sys, cfg, gf2::default_subcarrier_subset(cfg));
    const auto cp = gf2::restrict_rows(sys, cfg, cert.subcarriers);
    const gf2::Solver solver(cp);
    std::size_t solved = 0;
    for (int t = 0; t < 500; ++t) {
        const auto y = random_vector(cp.rows(), rng);
        const auto res = solver.solve(y);
        solved += res.ok() && cp.multiply(res.solution()) == y;
    }
    o.require(solved == 500, "targets solved " + std::to_string(solved));

    // All 48 data subcarriers: 288 rows over 216 unknowns.
    const auto over = gf2::restrict_rows(sys, cfg, cfg.data_subcarriers);
    const gf2::Solver over_solver(over);
    std::size_t unsolvable = 0, certified = 0;
    for (int t = 0; t < 20; ++t) {
        const auto y = random_vector(over.rows(), rng);
        const auto res = over_solver.solve(y);
        if (res.ok()) continue;
        ++unsolvable;
        // Certificate: appending y as a column raises the rank.
        gf2::Matrix aug(over.rows(), over.cols() + 1);
        for (std::size_t i = 0; i < over.rows(); ++i) {
            for (std::size_t j = 0; j < over.cols(); ++j) aug.set(i, j, over.get(i, j));
            aug.set(i, over.cols(), y.get(i));
        }
        certified += gf2::rank(aug) > over_solver.rank() && res.failure().row < over.rows();
    }
    o.require(unsolvable >= 1 && certified == unsolvable, "oversized selection");

    std::vector<gf2::Vector> ys;
    for (int t = 0; t < 256; ++t) ys.push_back(random_vector(cp.rows(), rng));
    const std::size_t n_solves = 50000;
    std::size_t sink = 0;
    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < n_solves; ++i) sink += solver.solve(ys[i % ys.size()]).ok();
    const double rate = static_cast<double>(n_solves) / seconds_since(t0);
    o.require(sink == n_solves && rate >= 1e4, "throughput");
    o.note("probes=" + std::to_string(probes) + " configs=" + std::to_string(configs) + " solved=" +
           std::to_string(solved) + "/500 oversized_unsolvable=" + std::to_string(unsolvable) + "/20" +
           fmt(" solves_per_s=%.3g", rate) + " at " + std::to_string(cp.rows()) + "x" + std::to_string(cp.cols()));
    return o;
}

Outcome emulation_fidelity() {
    Outcome o;
    const auto t0 = Clock::now();
    const Emulator e(PhyConfig::standard(64, CodeRate::R3_4));
    const double edge = e.constellation().box_edge() / e.scale();
    const std::size_t n = 100000;
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(-edge, edge);
    std::vector<cplx> s(n);
    for (auto& v : s) v = {u(rng), u(rng)};
    const auto out = e.emulated_link(s, kNoiseless, 1);
    // Errors measured in constellation units.
    double worst = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx d = (out.estimates[i] - s[i]) * e.scale();
        worst = std::max({worst, std::abs(d.real()), std::abs(d.imag())});
        sq += std::norm(d);
    }
    const double rms = std::sqrt(sq / static_cast<double>(n));
    const double expect = std::sqrt(2.0) * (2.0 / std::sqrt(42.0)) / std::sqrt(12.0);
    const double axis_bound = 1.0 / std::sqrt(42.0);
    o.require(worst <= axis_bound * (1 + 1e-12), "per-axis bound");
    o.require(std::abs(rms / expect - 1.0) <= 0.05, "rms");
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, "runtime");
    o.note("symbols=" + std::to_string(n) + fmt(" max_axis_err=%.6f", worst) + fmt(" (bound %.6f)", axis_bound) +
           fmt(" rms=%.6f", rms) + fmt(" expected=%.6f", expect) + fmt(" rel_dev=%.4f", rms / expect - 1.0) +
           fmt(" time=%.1fs", secs));
    return o;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
        return r;
    };
    const auto rx = ranks(x), ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double d2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

harness::ExperimentSpec curve_spec() {
    harness::ExperimentSpec spec;
    spec.snrs = {-5, 0, 5, 10, 15, 20, 25, 30, 35};
    spec.symbols = 10000;
    spec.systems = {"ideal", "emulated", "float"};
    spec.seed = 1;
    return spec;
}

Outcome degradation_curves() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto spec = curve_spec();
    const auto rows = harness::run_sweep(spec);
    auto curve = [&](const std::string& sys) {
        std::vector<double> v;
        for (const auto& r : rows)
            if (r.system == sys) v.push_back(r.symbol_mse);
        return v;
    };
    const auto ideal = curve("ideal"), emu = curve("emulated"), flt = curve("float");
    const double rho = spearman(spec.snrs, emu);
    double max_ratio = 0.0, float_drop = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < emu.size(); ++i) {
        max_ratio = std::max(max_ratio, emu[i] / emu[i + 1]);
        monotone = monotone && emu[i + 1] <= emu[i];
        float_drop = std::max(float_drop, flt[i] / std::max(flt[i + 1], 1e-300));
    }
    const double ideal10 = ideal[3];
    o.require(monotone && rho == -1.0, "emulated monotone");
    o.require(max_ratio < 3.0, "emulated step ratio");
    o.require(float_drop > 10.0, "float cliff");
    o.require(std::abs(ideal10 / 0.1 - 1.0) <= 0.02, "ideal at 10 dB");
    const double secs = seconds_since(t0);
    o.require(secs < 300.0, "runtime");
    o.note(fmt("spearman=%.3f", rho) + fmt(" max_step_ratio=%.3f", max_ratio) + fmt(" float_max_drop=%.3g", float_drop) +
           fmt(" ideal_10dB=%.5f", ideal10) + fmt(" emulated[-5]=%.4f", emu.front()) +
           fmt(" emulated[35]=%.4f", emu.back()) + fmt(" time=%.1fs", secs));
    return o;
}

Outcome viterbi_optimality() {
    Outcome o;
    std::mt19937_64 rng(505);
    std::size_t agree = 0;
    for (int t = 0; t < 200; ++t) {
        const auto info = random_bits(12, rng);
        auto rx = conv_encode(info).first;
        const int flips = static_cast<int>(rng() % 6);
        for (int f = 0; f < flips; ++f) rx[rng() % rx.size()] ^= 1u;
        std::size_t best = SIZE_MAX;
        for (unsigned v = 0; v < 4096; ++v) {
            Bits cand(12);
            for (int i = 0; i < 12; ++i) cand[static_cast<std::size_t>(i)] = (v >> i) & 1u;
            best = std::min(best, oracle::hamming(oracle::conv_encode(cand), rx));
        }
        agree += oracle::hamming(oracle::conv_encode(viterbi_decode(rx)), rx) == best;
    }
    o.require(agree == 200, "ML metric");

    std::size_t corrected = 0, trials = 0;
    for (int blk = 0; blk < 10; ++blk) {
        auto info = random_bits(96, rng);
        info.insert(info.end(), 6, 0);
        const auto coded = conv_encode(info).first;
        for (std::size_t i = 0; i < coded.size(); ++i) {
            auto rx = coded;
            rx[i] ^= 1u;
            corrected += viterbi_decode(rx) == info;
            ++trials;
        }
    }
    o.require(corrected == trials, "single-bit correction");
    o.note("ml_agree=" + std::to_string(agree) + "/200 single_bit_corrected=" + std::to_string(corrected) + "/" +
           std::to_string(trials));
    return o;
}

void jitter(const std::vector<nn::Param*>& ps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 0.1);
    for (auto* p : ps)
        for (auto& v : p->value.data) v += n(rng);
}

nn::Tensor rand_tensor(std::vector<std::size_t> shape, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 0.5);
    nn::Tensor t(std::move(shape));
    for (auto& v : t.data) v = n(rng);
    return t;
}

Outcome gradient_integrity() {
    Outcome o;
    double worst = 0.0;
    std::size_t checked = 0;
    auto check = [&](const std::string& name, const std::function<nn::Var(nn::Tape&)>& loss,
                     const std::vector<nn::Param*>& ps, double abs_floor) {
        nn::GradCheckOptions opt;
        opt.tolerance = 1e-4;
        opt.abs_floor = abs_floor;
        const auto r = nn::grad_check(loss, ps, opt);
        worst = std::max(worst, r.max_rel_error);
        checked += r.checked;
        o.require(r.passed, name + " " + r.worst_param + fmt(" %.2e", r.max_rel_error));
    };
    using nn::Tape;
    using nn::Var;

    std::mt19937_64 rng(606);
    nn::Dense dense(6, 4, "dense");
    dense.init(rng, 1.0);
    jitter(dense.params(), 1);
    const auto xd = rand_tensor({3, 6}, 2);
    check("dense", [&](Tape& t) { return nn::mse(t, nn::tanh(t, dense(t, t.constant(xd))), t.constant(nn::Tensor({3, 4}, 0.2))); },
          dense.params(), 1e-8);

    nn::Conv2d conv(3, 4, 3, 5, "conv2d");
    conv.init(rng, 1.0);
    jitter(conv.params(), 3);
    const auto xc = rand_tensor({3, 5, 7}, 4);
    check("conv2d", [&](Tape& t) { return nn::mse(t, nn::relu(t, conv(t, t.constant(xc))), t.constant(nn::Tensor({4, 5, 7}, 0.1))); },
          conv.params(), 1e-8);

    nn::Conv1d conv1(2, 3, 5, "conv1d");
    conv1.init(rng, 1.0);
    jitter(conv1.params(), 5);
    const auto x1 = rand_tensor({2, 11}, 6);
    check("conv1d", [&](Tape& t) { return nn::mse(t, conv1(t, t.constant(x1)), t.constant(nn::Tensor({3, 11}, -0.1))); },
          conv1.params(), 1e-8);

    const auto phy = PhyConfig::standard();
    const Emulator link = train::image_link(phy, 18);

    nn::Compensator comp(train::default_compensator_config(phy, 18), 7);
    jitter(comp.params(), 8);
    const auto w = nn::wave_tensor(gaussian_symbols(80, 9));
    const auto wt = nn::wave_tensor(gaussian_symbols(80, 10));
    check("compensator", [&](Tape& t) { return nn::mse(t, comp.forward(t, t.constant(w), 12.0), t.constant(wt)); },
          comp.params(), 1e-8);

    nn::Proxy proxy(nn::ProxyConfig{}, 11);
    jitter(proxy.params(), 12);
    check("proxy", [&](Tape& t) { return nn::mse(t, proxy.forward(t, t.constant(w), 15.0, 3), t.constant(wt)); },
          proxy.params(), 1e-8);

    nn::ToyJscc jscc({8, 18, 0}, 13);
    const auto img = nn::glyph_images(1, 14)[0];
    check("jscc", [&](Tape& t) { Var x = t.constant(img); return nn::mse(t, jscc.decode(t, jscc.encode(t, x)), x); },
          jscc.params(), 1e-8);

    std::vector<nn::Param*> all = jscc.params();
    for (auto* p : comp.params()) all.push_back(p);
    for (auto* p : proxy.params()) all.push_back(p);
    const double qw = train::quantizer_width(link);
    for (double g : {0.0, 0.5, 1.0}) {
        // Output-bias entries only shift DC, which analyze discards; their
        // exact gradient is zero and the difference quotient is roundoff.
        check("L_total gamma=" + fmt("%.1f", g),
              [&](Tape& t) {
                  return train::phase_a_loss(t, jscc, comp, proxy, link, t.constant(img), 10.0, 21, g, false, qw).total;
              },
              all, 1e-6);
    }
    o.note("entries=" + std::to_string(checked) + fmt(" worst_rel=%.2e", worst) + " tol=1e-4");
    return o;
}

struct Trained {
    train::ModelSet models;
    train::PipelineResult res;
    nn::Proxy proxy_stage2;
    double seconds = 0.0;
};

// Same steps as run_pipeline, keeping a copy of the proxy as stage 2 left it.
Trained staged_pipeline(const PhyConfig& phy, const train::TrainConfig& tc) {
    const auto t0 = Clock::now();
    auto models = train::make_models(phy, {}, train::default_compensator_config(phy, 18), {}, tc.seed);
    const Emulator link = train::image_link(phy, models.jscc_awgn.config().k);
    const auto images = nn::glyph_images(tc.train_images, train::derive_seed(tc.seed, 10), models.jscc_awgn.config().side);
    train::PipelineResult res;
    res.trace = train::pretrain_awgn(models.jscc_awgn, images, tc);
    res.stage1 = train::stage1_train_compensator(link, models.comp_stage1, tc);
    res.trace.insert(res.trace.end(), res.stage1.trace.begin(), res.stage1.trace.end());
    models.jscc = models.jscc_awgn;
    models.comp = models.comp_stage1;
    const auto records = train::stage2_records(link, models.jscc, images, tc, train::derive_seed(tc.seed, 11));
    res.stage2 = train::stage2_train_proxy(records, models.proxy, link, tc);
    res.trace.insert(res.trace.end(), res.stage2.trace.begin(), res.stage2.trace.end());
    nn::Proxy snapshot = models.proxy;
    res.stage3 = train::stage3_alternate(models.jscc, models.comp, models.proxy, link, images, tc);
    res.trace.insert(res.trace.end(), res.stage3.trace.begin(), res.stage3.trace.end());
    return {std::move(models), std::move(res), std::move(snapshot), seconds_since(t0)};
}

Outcome training_efficacy(Trained& tr, const train::TrainConfig& tc) {
    Outcome o;
    const auto t0 = Clock::now();
    const auto phy = PhyConfig::standard();
    const Emulator link = train::image_link(phy, 18);
    auto& m = tr.models;

    const double s1 = 1.0 - tr.res.stage1.final_mse / tr.res.stage1.initial_mse;
    o.require(s1 >= 0.20, "stage-1 reduction");

    // Held-out records at the fixed curriculum SNR, encoded by the model the
    // proxy was fitted against.
    const double fixed_snr = train::Curriculum{}.fixed_snr_db;
    train::Curriculum fixed;
    fixed.snr = train::Curriculum::Snr::Fixed;
    fixed.fixed_snr_db = fixed_snr;
    const auto held_imgs = nn::glyph_images(64, train::derive_seed(tc.seed, 900), m.jscc_awgn.config().side);
    std::vector<std::vector<cplx>> sets;
    for (const auto& im : held_imgs) sets.push_back(m.jscc_awgn.encode(im));
    const auto recs = train::collect_records(link, sets, fixed, train::derive_seed(tc.seed, 901));
    const auto fid = train::proxy_fidelity(tr.proxy_stage2, link, recs, train::derive_seed(tc.seed, 902));
    o.require(fid.heldout_mse <= fid.bound(), "proxy fidelity");

    const std::vector<double> snrs = {-5, 0, 5, 10, 15, 20, 25, 30, 35};
    const auto eval_imgs = nn::glyph_images(256, train::derive_seed(tc.seed, 8), m.jscc.config().side);
    std::size_t wins = 0;
    std::string curve;
    for (std::size_t i = 0; i < snrs.size(); ++i) {
        const auto seed = train::derive_seed(tc.seed, 950 + i);
        const double e2e = train::evaluate_real_link(m.jscc, &m.comp, link, eval_imgs, snrs[i], seed).image_mse;
        const double s0 = train::evaluate_real_link(m.jscc_awgn, &m.comp_stage1, link, eval_imgs, snrs[i], seed).image_mse;
        const double zs = train::evaluate_real_link(m.jscc_awgn, nullptr, link, eval_imgs, snrs[i], seed).image_mse;
        wins += e2e < s0 && e2e < zs;
        if (i == 0 || i + 1 == snrs.size())
            curve += fmt(" [%gdB", snrs[i]) + fmt(" e2e=%.4f", e2e) + fmt(" stage0=%.4f", s0) + fmt(" zeroshot=%.4f]", zs);
    }
    o.require(wins == snrs.size(), "stage-3 vs baselines");
    const double secs = tr.seconds + seconds_since(t0);
    o.require(secs < 600.0, "runtime");
    o.note(fmt("stage1_reduction=%.1f%%", 100.0 * s1) + fmt(" proxy@%gdB", fixed_snr) +
           fmt(" mse=%.5f", fid.heldout_mse) + fmt(" bound=%.5f", fid.bound()) + fmt(" (2s2=%.5f", 2 * fid.sigma2) +
           fmt(" floor=%.5f)", fid.floor) + " e2e_wins=" + std::to_string(wins) + "/" + std::to_string(snrs.size()) +
           curve + " cycles=" + std::to_string(tr.res.stage3.cycles) + fmt(" time=%.1fs", secs));
    return o;
}

Outcome determinism(const Trained& tr, const train::TrainConfig& tc) {
    Outcome o;
    const auto spec = curve_spec();
    const auto a = harness::metrics_csv(harness::run_sweep(spec));
    const auto b = harness::metrics_csv(harness::run_sweep(spec));
    o.require(a == b, "sweep csv");

    const auto phy = PhyConfig::standard();
    auto run = [&] {
        auto models = train::make_models(phy, {}, train::default_compensator_config(phy, 18), {}, tc.seed);
        return train::loss_csv(train::run_pipeline(models, phy, tc).trace);
    };
    const auto c = run();
    const auto d = run();
    o.require(c == d, "training csv");
    o.require(c == train::loss_csv(tr.res.trace), "staged run differs from pipeline");
    o.note("sweep_csv_bytes=" + std::to_string(a.size()) + " loss_csv_bytes=" + std::to_string(c.size()));
    return o;
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const char* name, const Outcome& o) {
        std::printf("[%s] %d %s:%s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    };
    auto guarded = [&](int id, const char* name, const std::function<Outcome()>& f) {
        try {
            report(id, name, f());
        } catch (const std::exception& e) {
            Outcome o;
            o.require(false, std::string("exception: ") + e.what());
            report(id, name, o);
        }
    };
    guarded(1, "phy_conformance", phy_conformance);
    guarded(2, "gf2_inversion", gf2_inversion);
    guarded(3, "emulation_fidelity", emulation_fidelity);
    guarded(4, "degradation_vs_cliff", degradation_curves);
    guarded(5, "viterbi_optimality", viterbi_optimality);
    guarded(6, "gradient_integrity", gradient_integrity);

    train::TrainConfig tc;
    std::optional<Trained> tr;
    guarded(7, "training_efficacy", [&] {
        tr.emplace(staged_pipeline(PhyConfig::standard(), tc));
        return training_efficacy(*tr, tc);
    });
    guarded(8, "determinism", [&] {
        if (!tr) throw std::runtime_error("training run unavailable");
        return determinism(*tr, tc);
    });
    std::printf("%d of 8 failed\n", failed);
    return failed == 0 ? 0 : 1;
}
