#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "wavemu/error.hpp"
#include "wavemu/link/baselines.hpp"
#include "wavemu/link/channel.hpp"
#include "wavemu/link/record.hpp"
#include "wavemu/link/sdm.hpp"
#include "wavemu/link/waveform.hpp"
#include "wavemu/phy/chain.hpp"

using namespace wavemu;

namespace {

std::vector<cplx> uniform_in_box(std::size_t k, double edge, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-edge, edge);
    std::vector<cplx> s(k);
    for (auto& v : s) v = {u(rng), u(rng)};
    return s;
}

const Emulator& default_emulator() {
    static const Emulator e(PhyConfig::standard());
    return e;
}

}  // namespace

TEST(Noise, VarianceAndDeterminism) {
    EXPECT_NEAR(noise_variance(2.0, 10.0), 0.2, 1e-15);
    EXPECT_EQ(noise_variance(1.0, kNoiseless), 0.0);
    std::vector<cplx> z(200000, 0.0);
    const auto n = add_complex_noise(z, 0.5, 7);
    EXPECT_NEAR(mean_power(n), 0.5, 0.01);
    double re = 0;
    for (auto v : n) re += v.real() * v.real();
    EXPECT_NEAR(re / n.size(), 0.25, 0.005);
    EXPECT_EQ(add_complex_noise(z, 0.5, 7), n);
    EXPECT_NE(add_complex_noise(z, 0.5, 8), n);
}

TEST(Waveform, SynthAnalyzeInverse) {
    const auto& e = default_emulator();
    const auto s = gaussian_symbols(100, 3);
    const auto w = e.synth(s);
    EXPECT_EQ(w.size(), 80u * static_cast<std::size_t>(ofdm_symbols_for(100, e.chosen().size())));
    const auto back = e.analyze(w, 100);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(back[i] - s[i]), 0.0, 1e-12);
}

TEST(Waveform, AdjointsSatisfyInnerProductIdentity) {
    const auto cfg = PhyConfig::standard();
    const auto& chosen = default_emulator().chosen();
    const std::size_t k = 90;
    const int nsym = ofdm_symbols_for(k, chosen.size());
    const auto s = gaussian_symbols(k, 1);
    const auto w = gaussian_symbols(static_cast<std::size_t>(nsym) * 80, 2);
    auto re_dot = [](std::span<const cplx> a, std::span<const cplx> b) {
        double d = 0;
        for (std::size_t i = 0; i < a.size(); ++i) d += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        return d;
    };
    const auto sy = synth(s, cfg, chosen, nsym);
    EXPECT_NEAR(re_dot(sy, w), re_dot(s, synth_adjoint(w, cfg, chosen, k)), 1e-9);
    const auto an = analyze(w, cfg, chosen, k);
    EXPECT_NEAR(re_dot(an, s), re_dot(w, analyze_adjoint(s, cfg, chosen, nsym)), 1e-9);
}

TEST(Emulator, DefaultPlanShape) {
    const auto& e = default_emulator();
    EXPECT_EQ(e.chosen().size(), 36u);
    EXPECT_EQ(e.certified_rank(), 216u);
    EXPECT_NEAR(e.scale(), default_symbol_scale(64), 1e-15);
    EXPECT_NEAR(default_symbol_scale(64), 7.0 / std::sqrt(42.0) / (3.0 / std::sqrt(2.0)), 1e-12);
}

TEST(Emulator, ReplayAndNoiselessErrorBound) {
    const auto& e = default_emulator();
    const double edge = e.constellation().box_edge() / e.scale();
    const auto s = uniform_in_box(3000, edge, 4);
    const auto plan = e.sender_invert(s);
    EXPECT_TRUE(e.replay_matches(plan));
    EXPECT_EQ(plan.clip_events, 0u);
    const auto out = e.emulated_link(s, kNoiseless, 1);
    const double bound = e.constellation().norm() / e.scale() + 1e-12;
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_LE(std::abs(out.estimates[i].real() - s[i].real()), bound);
        EXPECT_LE(std::abs(out.estimates[i].imag() - s[i].imag()), bound);
    }
    const auto hard = e.emulated_link(s, kNoiseless, 1, RecoveryMode::Hard);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(hard.estimates[i] - out.estimates[i]), 0.0, 1e-12);
}

TEST(Emulator, OutOfBoxTargetsClip) {
    const auto& e = default_emulator();
    std::vector<cplx> s(40, cplx(100.0, -100.0));
    const auto plan = e.sender_invert(s);
    EXPECT_GT(plan.clip_events, 0u);
    EXPECT_TRUE(e.replay_matches(plan));
}

TEST(Emulator, OversizedSubsetRejected) {
    const auto cfg = PhyConfig::standard();
    std::vector<int> too_many(cfg.data_subcarriers.begin(), cfg.data_subcarriers.begin() + 40);
    EXPECT_THROW(Emulator(cfg, too_many), CapacityError);
}

TEST(Emulator, AllConfigsReplay) {
    for (int m : {4, 16, 64})
        for (auto r : {CodeRate::R1_2, CodeRate::R2_3, CodeRate::R3_4, CodeRate::R5_6}) {
            const Emulator e(PhyConfig::standard(m, r));
            const auto s = gaussian_symbols(200, 5);
            EXPECT_TRUE(e.replay_matches(e.sender_invert(s))) << m << " " << to_string(r);
        }
}

TEST(Emulator, SoftErrorShrinksWithSnr) {
    const auto& e = default_emulator();
    const auto s = gaussian_symbols(4000, 6);
    auto mse = [&](double snr) {
        const auto out = e.emulated_link(s, snr, 11);
        double d = 0;
        for (std::size_t i = 0; i < s.size(); ++i) d += std::norm(out.estimates[i] - s[i]);
        return d / s.size();
    };
    const double lo = mse(0.0), mid = mse(15.0), hi = mse(35.0);
    EXPECT_GT(lo, mid);
    EXPECT_GT(mid, hi);
}

TEST(Baselines, IdealLinkMse) {
    const auto s = gaussian_symbols(20000, 7);
    const auto y = ideal_analog_link(s, 10.0, 3);
    double d = 0;
    for (std::size_t i = 0; i < s.size(); ++i) d += std::norm(y[i] - s[i]);
    EXPECT_NEAR(d / s.size(), 0.1, 0.004);
}

TEST(Baselines, FloatPackingRoundTrip) {
    const std::vector<double> v = {0.0, 1.5, -2.25, 0.078125};
    const auto bits = pack_floats(v);
    EXPECT_EQ(bits.size(), 128u);
    EXPECT_EQ(unpack_floats(bits, 4, 10.0), v);
    // Sign bit leads: -2.25 starts with 1.
    EXPECT_EQ(bits[64], 1);
    const auto big = unpack_floats(pack_floats(std::vector<double>{1e6}), 1, 10.0);
    EXPECT_EQ(big[0], 10.0);
}

TEST(Baselines, FloatLinkCleanAtHighSnr) {
    std::vector<double> v(500);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * static_cast<double>(i));
    const auto r = float_serialization_link(v, 40.0, 1, PhyConfig::standard());
    EXPECT_EQ(r.ber, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(r.values[i], v[i], 1e-6);
}

TEST(Records, SaveLoadRoundTrip) {
    const auto& e = default_emulator();
    const auto s = gaussian_symbols(72, 8);
    const auto out = e.emulated_link(s, 20.0, 9);
    const auto dir = std::filesystem::temp_directory_path() / "wavemu_test_records";
    std::filesystem::remove_all(dir);
    save_records(dir, std::vector<LinkRecord>{out.record});
    const auto back = load_records(dir);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].reconstructed, out.record.reconstructed);
    EXPECT_EQ(back[0].input_waveform, out.record.input_waveform);
    EXPECT_EQ(back[0].snr_db, 20.0);
    EXPECT_EQ(back[0].fingerprint, out.record.fingerprint);
    std::filesystem::remove_all(dir);
}
