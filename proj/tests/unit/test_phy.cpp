#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "../oracles.hpp"
#include "wavemu/error.hpp"
#include "wavemu/phy/chain.hpp"
#include "wavemu/phy/coding.hpp"
#include "wavemu/phy/dft.hpp"
#include "wavemu/phy/frame_io.hpp"
#include "wavemu/phy/ofdm.hpp"
#include "wavemu/phy/qam.hpp"

using namespace wavemu;

namespace {

Bits random_bits(std::size_t n, std::mt19937_64& rng) {
    Bits b(n);
    for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

const CodeRate kRates[] = {CodeRate::R1_2, CodeRate::R2_3, CodeRate::R3_4, CodeRate::R5_6};
const int kMods[] = {2, 4, 16, 64};

}  // namespace

TEST(Scrambler, ExampleSeedFirstSixteenBits) {
    const Bits seq = scrambler_sequence(0b1011101, 16);
    const Bits ref = oracle::scramble(Bits(16, 0), 0b1011101);
    EXPECT_EQ(seq, ref);
    const Bits frozen = {0, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1};
    EXPECT_EQ(seq, frozen);
}

TEST(Scrambler, MatchesOracleAndIsInvolution) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 300; ++t) {
        const auto b = random_bits(1 + rng() % 500, rng);
        const auto seed = static_cast<std::uint8_t>(1 + rng() % 127);
        const auto s = scramble(b, seed);
        EXPECT_EQ(s, oracle::scramble(b, seed));
        EXPECT_EQ(scramble(s, seed), b);
    }
}

TEST(Scrambler, PeriodIs127) {
    const auto seq = scrambler_sequence(0x7F, 254);
    for (std::size_t i = 0; i < 127; ++i) EXPECT_EQ(seq[i], seq[i + 127]);
}

TEST(Scrambler, ZeroSeedRejected) { EXPECT_THROW(scrambler_sequence(0, 8), ConfigError); }

TEST(ConvCode, MatchesOracle) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; ++t) {
        const auto b = random_bits(1 + rng() % 200, rng);
        EXPECT_EQ(conv_encode(b).first, oracle::conv_encode(b));
    }
}

TEST(ConvCode, ImpulseResponseIsTheGenerators) {
    Bits b(7, 0);
    b[0] = 1;
    const auto out = conv_encode(b).first;
    // A stream reads 1011011 (133), B stream 1111001 (171).
    const Bits a = {out[0], out[2], out[4], out[6], out[8], out[10], out[12]};
    const Bits bb = {out[1], out[3], out[5], out[7], out[9], out[11], out[13]};
    EXPECT_EQ(a, (Bits{1, 0, 1, 1, 0, 1, 1}));
    EXPECT_EQ(bb, (Bits{1, 1, 1, 1, 0, 0, 1}));
}

TEST(ConvCode, StateCarriesAcrossSplits) {
    std::mt19937_64 rng(3);
    const auto b = random_bits(100, rng);
    const auto whole = conv_encode(b).first;
    const auto [first, state] = conv_encode(std::span(b).first(37));
    const auto second = conv_encode(std::span(b).subspan(37), state).first;
    Bits joined = first;
    joined.insert(joined.end(), second.begin(), second.end());
    EXPECT_EQ(joined, whole);
    EXPECT_EQ(state, conv_advance(std::span(b).first(37), {}));
}

TEST(Puncture, MatchesOracleForAllRates) {
    std::mt19937_64 rng(4);
    const int nums[] = {1, 2, 3, 5}, dens[] = {2, 3, 4, 6};
    for (int r = 0; r < 4; ++r)
        for (int t = 0; t < 50; ++t) {
            const auto m = random_bits(60 * (1 + rng() % 5), rng);
            EXPECT_EQ(puncture(m, kRates[r]), oracle::puncture(m, nums[r], dens[r]));
        }
}

TEST(Puncture, DepunctureRestoresKeptAndMarksErasures) {
    std::mt19937_64 rng(5);
    const auto m = random_bits(120, rng);
    for (auto rate : kRates) {
        const auto d = depuncture(puncture(m, rate), rate);
        ASSERT_EQ(d.size(), m.size());
        const auto pat = puncture_pattern(rate);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (pat[i % pat.size()]) EXPECT_EQ(d[i], m[i]);
            else EXPECT_EQ(d[i], kErasure);
        }
    }
}

TEST(Interleaver, FrozenIndices) {
    EXPECT_EQ(interleave_index(0, 288, 6), 0u);
    // k = 16 lands in row 1 of the first permutation: i = 1, then s = 3.
    EXPECT_EQ(interleave_index(16, 288, 6), oracle::interleave_dest(16, 288, 6));
    EXPECT_EQ(interleave_index(1, 48, 1), 3u);
    EXPECT_EQ(interleave_index(1, 288, 6), 18u + 2u);
}

TEST(Interleaver, MatchesOracleAndIsBijective) {
    for (int bpsc : {1, 2, 4, 6}) {
        const int n = 48 * bpsc;
        std::vector<int> seen(static_cast<std::size_t>(n), 0);
        for (int k = 0; k < n; ++k) {
            const auto j = interleave_index(static_cast<std::size_t>(k), n, bpsc);
            EXPECT_EQ(j, oracle::interleave_dest(static_cast<std::size_t>(k), static_cast<std::size_t>(n),
                                                 static_cast<std::size_t>(bpsc)));
            ++seen.at(j);
        }
        for (int c : seen) EXPECT_EQ(c, 1);
        std::mt19937_64 rng(static_cast<unsigned>(bpsc));
        const auto block = random_bits(static_cast<std::size_t>(n), rng);
        EXPECT_EQ(deinterleave(interleave(block, n, bpsc), n, bpsc), block);
    }
}

TEST(Qam, UnitAveragePowerAndGray) {
    for (int m : kMods) {
        const Constellation q(m);
        const int b = q.bits_per_symbol();
        double p = 0.0;
        Bits label(static_cast<std::size_t>(b));
        for (int v = 0; v < m; ++v) {
            for (int i = 0; i < b; ++i) label[static_cast<std::size_t>(i)] = (v >> (b - 1 - i)) & 1;
            const cplx z = q.map(label);
            p += std::norm(z);
            Bits back(static_cast<std::size_t>(b));
            q.hard_demap(z, back);
            EXPECT_EQ(back, label);
        }
        EXPECT_NEAR(p / m, 1.0, 1e-12) << m;
    }
    // Adjacent levels differ in exactly one bit.
    const Constellation q(64);
    Bits a(6), c(6);
    for (int l = 0; l + 1 < 8; ++l) {
        const double x0 = (2 * l - 7) * q.norm(), x1 = (2 * l - 5) * q.norm();
        q.hard_demap({x0, 0.0}, a);
        q.hard_demap({x1, 0.0}, c);
        int diff = 0;
        for (int i = 0; i < 6; ++i) diff += a[static_cast<std::size_t>(i)] != c[static_cast<std::size_t>(i)];
        EXPECT_EQ(diff, 1);
    }
}

TEST(Qam, QuantizeNearestAndClip) {
    const Constellation q(64);
    const cplx z = q.quantize({0.9, 0.9});
    EXPECT_NEAR(z.real(), 5.0 / std::sqrt(42.0), 1e-12);
    EXPECT_NEAR(z.imag(), 5.0 / std::sqrt(42.0), 1e-12);
    const cplx far = q.quantize({10.0, -10.0});
    EXPECT_NEAR(far.real(), 7.0 / std::sqrt(42.0), 1e-12);
    EXPECT_NEAR(far.imag(), -7.0 / std::sqrt(42.0), 1e-12);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int t = 0; t < 2000; ++t) {
        const cplx x{u(rng), u(rng)};
        const cplx y = q.quantize(x);
        double best = 1e9;
        for (int i = -7; i <= 7; i += 2)
            for (int j = -7; j <= 7; j += 2) best = std::min(best, std::norm(x - cplx(i, j) * q.norm()));
        EXPECT_NEAR(std::norm(x - y), best, 1e-12);
    }
}

TEST(Dft, UnitaryRoundTripAndParseval) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n;
    std::vector<cplx> x(64), f(64), back(64);
    for (auto& v : x) v = {n(rng), n(rng)};
    dft_unitary(x, f, false);
    dft_unitary(f, back, true);
    double ex = 0, ef = 0;
    for (int i = 0; i < 64; ++i) {
        EXPECT_NEAR(std::abs(back[i] - x[i]), 0.0, 1e-12);
        ex += std::norm(x[i]);
        ef += std::norm(f[i]);
    }
    EXPECT_NEAR(ex, ef, 1e-9);
    // Single bin -> complex exponential of amplitude 1/sqrt(64).
    std::vector<cplx> g(64, 0.0), w(64);
    g[3] = 1.0;
    dft_unitary(g, w, true);
    for (int i = 0; i < 64; ++i) EXPECT_NEAR(std::abs(w[i]), 0.125, 1e-12);
}

TEST(Ofdm, CyclicPrefixIsTailAndDemodulationInverts) {
    const auto cfg = PhyConfig::standard();
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n;
    std::vector<cplx> data(48);
    for (auto& v : data) v = {n(rng), n(rng)};
    const auto grid = assemble_grid(data, 0, cfg);
    const auto sym = ofdm_modulate(grid, cfg);
    ASSERT_EQ(sym.size(), 80u);
    for (int i = 0; i < 16; ++i) EXPECT_EQ(sym[static_cast<std::size_t>(i)], sym[static_cast<std::size_t>(64 + i)]);
    const auto back = extract_data(ofdm_demodulate(sym, cfg), cfg);
    for (int i = 0; i < 48; ++i) EXPECT_NEAR(std::abs(back[static_cast<std::size_t>(i)] - data[static_cast<std::size_t>(i)]), 0.0, 1e-12);
    EXPECT_EQ(grid.bins[0], cplx(0.0));
}

TEST(Chain, NoiselessLoopbackAllConfigs) {
    std::mt19937_64 rng(9);
    for (int m : kMods)
        for (auto r : kRates) {
            const auto cfg = PhyConfig::standard(m, r);
            const auto b = random_bits(static_cast<std::size_t>(4 * cfg.data_bits_per_symbol()), rng);
            const auto frame = tx_chain(b, cfg);
            EXPECT_EQ(frame.ofdm_symbol_count, 4);
            EXPECT_EQ(rx_chain(frame, cfg), b) << m << " " << to_string(r);
        }
}

TEST(Chain, PayloadMustFillSymbols) {
    const auto cfg = PhyConfig::standard();
    EXPECT_THROW(tx_chain(Bits(100, 0), cfg), std::exception);
}

TEST(Viterbi, MatchesExhaustiveMl) {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 200; ++t) {
        const auto info = random_bits(12, rng);
        auto rx = conv_encode(info).first;
        const int flips = static_cast<int>(rng() % 5);
        for (int f = 0; f < flips; ++f) rx[rng() % rx.size()] ^= 1u;
        std::size_t best = 1000;
        for (unsigned v = 0; v < 4096; ++v) {
            Bits cand(12);
            for (int i = 0; i < 12; ++i) cand[static_cast<std::size_t>(i)] = (v >> i) & 1u;
            best = std::min(best, oracle::hamming(oracle::conv_encode(cand), rx));
        }
        const auto dec = viterbi_decode(rx);
        EXPECT_EQ(path_metric(dec, rx), best);
        EXPECT_EQ(oracle::hamming(oracle::conv_encode(dec), rx), best);
    }
}

TEST(Viterbi, CorrectsEverySingleBitError) {
    std::mt19937_64 rng(11);
    const auto info = random_bits(60, rng);
    Bits padded = info;
    padded.insert(padded.end(), 6, 0);
    const auto coded = conv_encode(padded).first;
    for (std::size_t i = 0; i < coded.size(); ++i) {
        auto rx = coded;
        rx[i] ^= 1u;
        EXPECT_EQ(viterbi_decode(rx), padded) << i;
    }
}

TEST(FrameIo, RoundTripAndBadMagic) {
    std::vector<cplx> s = {{1.5, -2.0}, {0.0, 3.25}, {-1e-9, 7.0}};
    std::stringstream ss;
    write_frame(ss, s);
    EXPECT_EQ(read_frame(ss), s);
    std::stringstream bad("XXXX");
    EXPECT_THROW(read_frame(bad), IoError);
}

TEST(Config, RejectsInvalid) {
    auto cfg = PhyConfig::standard();
    cfg.scrambler_seed = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    EXPECT_THROW(phy_config_from_keys({{"modulation", "32"}}), ConfigError);
    EXPECT_THROW(phy_config_from_keys({{"modulaton", "64"}}), ConfigError);
    const auto ok = phy_config_from_keys({{"modulation", "16"}, {"coding_rate", "1/2"}});
    EXPECT_EQ(ok.modulation, 16);
    EXPECT_EQ(ok.rate, CodeRate::R1_2);
}
