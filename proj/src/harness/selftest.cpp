#include "wavemu/harness/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "wavemu/gf2/solver.hpp"
#include "wavemu/gf2/symbol_system.hpp"
#include "wavemu/link/sdm.hpp"
#include "wavemu/link/waveform.hpp"
#include "wavemu/nn/compensator.hpp"
#include "wavemu/nn/grad_check.hpp"
#include "wavemu/nn/jscc.hpp"
#include "wavemu/nn/proxy.hpp"
#include "wavemu/phy/chain.hpp"
#include "wavemu/phy/coding.hpp"
#include "wavemu/phy/qam.hpp"

namespace wavemu::harness {

bool SelftestReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

std::string SelftestReport::text() const {
    std::ostringstream os;
    for (const auto& c : checks) os << (c.passed ? "PASS " : "FAIL ") << c.invariant << " : " << c.measured << '\n';
    os << (passed() ? "selftest passed" : "selftest FAILED") << '\n';
    return os.str();
}

namespace {

Bits random_bits(std::size_t n, std::mt19937_64& rng) {
    Bits b(n);
    for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Straight-line references, written independently of the library code.
Bits ref_scramble(const Bits& in, unsigned seed) {
    unsigned x[8];
    for (int i = 1; i <= 7; ++i) x[i] = (seed >> (i - 1)) & 1u;  // bit 0 holds x1
    Bits out(in.size());
    for (std::size_t n = 0; n < in.size(); ++n) {
        const unsigned fb = x[7] ^ x[4];
        for (int i = 7; i > 1; --i) x[i] = x[i - 1];
        x[1] = fb;
        out[n] = static_cast<std::uint8_t>(in[n] ^ fb);
    }
    return out;
}

std::size_t ref_interleave(std::size_t k, std::size_t ncbps, std::size_t nbpsc) {
    const std::size_t s = std::max<std::size_t>(nbpsc / 2, 1);
    const std::size_t i = (ncbps / 16) * (k % 16) + k / 16;
    return s * (i / s) + (i + ncbps - (16 * i / ncbps)) % s;
}

}  // namespace

SelftestReport selftest(const SelftestOptions& opt) {
    SelftestReport rep;
    std::mt19937_64 rng(20240917);
    auto add = [&](std::string name, bool ok, std::string measured) {
        rep.checks.push_back({std::move(name), ok, std::move(measured)});
    };

    {
        std::size_t bad = 0;
        for (int t = 0; t < 200; ++t) {
            const auto b = random_bits(1 + rng() % 300, rng);
            const unsigned seed = 1 + static_cast<unsigned>(rng() % 127);
            if (scramble(b, static_cast<std::uint8_t>(seed)) != ref_scramble(b, seed)) ++bad;
        }
        add("scrambler matches straight-line LFSR", bad == 0, std::to_string(bad) + " of 200 mismatched");
    }
    {
        std::size_t bad = 0;
        for (int bpsc : {1, 2, 4, 6}) {
            const int ncbps = 48 * bpsc;
            for (int k = 0; k < ncbps; ++k)
                if (interleave_index(static_cast<std::size_t>(k), ncbps, bpsc) !=
                    ref_interleave(static_cast<std::size_t>(k), static_cast<std::size_t>(ncbps), static_cast<std::size_t>(bpsc)))
                    ++bad;
        }
        add("interleaver matches permutation formulas", bad == 0, std::to_string(bad) + " index mismatches");
    }
    {
        const auto mother = random_bits(18, rng);
        const auto kept = puncture(mother, CodeRate::R3_4);
        const unsigned keep[6] = {1, 1, 1, 0, 0, 1};
        Bits ref;
        for (std::size_t i = 0; i < mother.size(); ++i)
            if (keep[i % 6]) ref.push_back(mother[i]);
        add("puncturer 3/4 keeps 12 of 18 per standard pattern", kept == ref, std::to_string(kept.size()) + " kept");
    }
    {
        const Constellation q(64);
        double p = 0.0;
        Bits label(6);
        for (unsigned v = 0; v < 64; ++v) {
            for (int b = 0; b < 6; ++b) label[static_cast<std::size_t>(b)] = (v >> (5 - b)) & 1u;
            p += std::norm(q.map(label));
        }
        p /= 64.0;
        add("64-QAM average power is 1", std::abs(p - 1.0) < 1e-12, num(p));
    }
    {
        std::size_t bad = 0, total = 0;
        for (int m : {2, 4, 16, 64})
            for (auto r : {CodeRate::R1_2, CodeRate::R2_3, CodeRate::R3_4, CodeRate::R5_6}) {
                const auto cfg = PhyConfig::standard(m, r);
                const auto sys = gf2::SymbolSystem::build(cfg, opt.gen_a, opt.gen_b);
                for (std::size_t t = 0; t < opt.probes / 16 + 1; ++t) {
                    const auto x = random_bits(sys.beta(), rng);
                    const ConvState s{static_cast<std::uint8_t>(rng() & 0x3F)};
                    ++total;
                    if (sys.coded_bits(gf2::Vector::from_bits(x), s).to_bits() != gf2::pipeline_symbol_bits(x, s, cfg)) ++bad;
                }
            }
        add("GF(2) model agrees with PHY pipeline", bad == 0, std::to_string(bad) + " of " + std::to_string(total) + " probes differ");
    }
    {
        std::size_t errors = 0;
        for (int m : {2, 4, 16, 64})
            for (auto r : {CodeRate::R1_2, CodeRate::R2_3, CodeRate::R3_4, CodeRate::R5_6}) {
                const auto cfg = PhyConfig::standard(m, r);
                const auto b = random_bits(static_cast<std::size_t>(3 * cfg.data_bits_per_symbol()), rng);
                const auto out = rx_chain(tx_chain(b, cfg), cfg);
                for (std::size_t i = 0; i < b.size(); ++i) errors += out[i] != b[i];
            }
        add("noiseless loopback BER is 0 for all (M, R)", errors == 0, std::to_string(errors) + " bit errors");
    }
    {
        std::size_t deficient = 0;
        for (int m : {2, 4, 16, 64})
            for (auto r : {CodeRate::R1_2, CodeRate::R2_3, CodeRate::R3_4, CodeRate::R5_6}) {
                const auto cfg = PhyConfig::standard(m, r);
                const auto sys = gf2::SymbolSystem::build(cfg);
                if (!gf2::certify_subset(sys, cfg, gf2::default_subcarrier_subset(cfg)).full_rank()) ++deficient;
            }
        add("certified subset has full row rank for all (M, R)", deficient == 0, std::to_string(deficient) + " deficient");
    }
    {
        const Emulator em(PhyConfig::standard(64, CodeRate::R3_4));
        const double edge = em.constellation().box_edge() / em.scale();
        std::uniform_real_distribution<double> u(-edge, edge);
        std::vector<cplx> t(2000);
        for (auto& v : t) v = {u(rng), u(rng)};
        const auto plan = em.sender_invert(t);
        const auto rec = em.receiver_recover_soft(em.transmit(plan), plan);
        double worst = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const cplx e = (rec.estimates[i] - t[i]) * em.scale();
            worst = std::max({worst, std::abs(e.real()), std::abs(e.imag())});
        }
        const double bound = 1.0 / std::sqrt(42.0);
        add("replay reproduces the planned grid", em.replay_matches(plan), em.replay_matches(plan) ? "labels identical" : "labels differ");
        add("noiseless per-axis error <= 1/sqrt(42)", worst <= bound + 1e-12, num(worst) + " <= " + num(bound));
    }
    {
        nn::CompensatorConfig cc;
        cc.periods = {20, 3};
        cc.cp_len = 4;
        nn::Compensator comp(cc, 5);
        for (nn::Param* p : comp.params())
            for (auto& v : p->value.data) v += 0.1 * std::normal_distribution<double>()(rng);
        nn::Tensor w = nn::wave_tensor(gaussian_symbols(37, 9));
        auto r1 = nn::grad_check([&](nn::Tape& t) { return nn::mse(t, comp.forward(t, t.constant(w), 12.0), t.constant(nn::Tensor(w.shape))); },
                                 comp.params());
        add("compensator gradients match finite differences", r1.passed, "max rel err " + num(r1.max_rel_error));

        nn::ProxyConfig pc;
        pc.ref_power = 0.5;
        nn::Proxy proxy(pc, 6);
        for (nn::Param* p : proxy.params())
            for (auto& v : p->value.data) v += 0.1 * std::normal_distribution<double>()(rng);
        auto r2 = nn::grad_check(
            [&](nn::Tape& t) { return nn::mse(t, proxy.forward(t, t.constant(w), 10.0, 3), t.constant(nn::Tensor(w.shape))); },
            proxy.params());
        add("proxy gradients match finite differences", r2.passed, "max rel err " + num(r2.max_rel_error));

        nn::ToyJscc j({8, 6, 5}, 7);
        const auto img = nn::glyph_images(1, 3)[0];
        auto r3 = nn::grad_check(
            [&](nn::Tape& t) {
                nn::Var x = t.constant(img);
                return nn::mse(t, j.decode(t, j.encode(t, x)), x);
            },
            j.params());
        add("toy JSCC gradients match finite differences", r3.passed, "max rel err " + num(r3.max_rel_error));
    }
    return rep;
}

}  // namespace wavemu::harness
