#include <gtest/gtest.h>

#include <random>

#include "wavemu/gf2/matrix.hpp"
#include "wavemu/gf2/solver.hpp"
#include "wavemu/gf2/symbol_system.hpp"

using namespace wavemu;
using namespace wavemu::gf2;

namespace {

Vector random_vector(std::size_t n, std::mt19937_64& rng) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1u);
    return v;
}

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1u);
    return m;
}

const CodeRate kRates[] = {CodeRate::R1_2, CodeRate::R2_3, CodeRate::R3_4, CodeRate::R5_6};

}  // namespace

TEST(Gf2Matrix, TextRoundTripAndProduct) {
    const auto m = Matrix::from_text("101\n011\n");
    EXPECT_EQ(m.rows(), 2u);
    EXPECT_EQ(Matrix::from_text(m.to_text()), m);
    Vector x(3);
    x.set(0, true);
    x.set(1, true);
    const auto y = m.multiply(x);
    EXPECT_TRUE(y.get(0));
    EXPECT_TRUE(y.get(1));
}

TEST(Gf2Matrix, RankSmallCases) {
    EXPECT_EQ(rank(Matrix::identity(70)), 70u);
    EXPECT_EQ(rank(Matrix::from_text("110\n011\n101\n")), 2u);
    EXPECT_EQ(rank(Matrix(5, 9)), 0u);
}

TEST(Gf2Solver, SolvesConsistentSystems) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        const std::size_t r = 1 + rng() % 150, c = r + rng() % 100;
        const auto m = random_matrix(r, c, rng);
        const auto x = random_vector(c, rng);
        const auto y = m.multiply(x);
        const Solver s(m);
        const auto res = s.solve(y);
        ASSERT_TRUE(res.ok());
        EXPECT_EQ(m.multiply(res.solution()), y);
    }
}

TEST(Gf2Solver, ReportsInconsistentRow) {
    // Row 2 duplicates row 0, target bits disagree.
    const auto m = Matrix::from_text("1100\n0110\n1100\n");
    Vector y(3);
    y.set(0, true);
    const auto res = Solver(m).solve(y);
    ASSERT_FALSE(res.ok());
    EXPECT_EQ(res.failure().row, 2u);
}

TEST(Gf2Solver, RankDeficiencyDetected) {
    const auto m = Matrix::from_text("1010\n0101\n1111\n");
    const Solver s(m);
    EXPECT_EQ(s.rank(), 2u);
    EXPECT_FALSE(s.full_row_rank());
}

TEST(SymbolSystem, MatchesPipelineForAllConfigs) {
    std::mt19937_64 rng(2);
    for (int m : {2, 4, 16, 64})
        for (auto r : kRates) {
            const auto cfg = PhyConfig::standard(m, r);
            const auto sys = SymbolSystem::build(cfg);
            EXPECT_EQ(sys.alpha(), static_cast<std::size_t>(cfg.coded_bits_per_symbol()));
            EXPECT_EQ(sys.beta(), static_cast<std::size_t>(cfg.data_bits_per_symbol()));
            for (int t = 0; t < 40; ++t) {
                const auto x = random_vector(sys.beta(), rng);
                const ConvState s{static_cast<std::uint8_t>(rng() & 0x3F)};
                EXPECT_EQ(sys.coded_bits(x, s).to_bits(), pipeline_symbol_bits(x.to_bits(), s, cfg));
            }
        }
}

TEST(SymbolSystem, WrongGeneratorIsDetected) {
    const auto cfg = PhyConfig::standard();
    const auto sys = SymbolSystem::build(cfg, 0135, 0171);
    std::mt19937_64 rng(3);
    int differ = 0;
    for (int t = 0; t < 20; ++t) {
        const auto x = random_vector(sys.beta(), rng);
        differ += sys.coded_bits(x, {}).to_bits() != pipeline_symbol_bits(x.to_bits(), {}, cfg);
    }
    EXPECT_GT(differ, 15);
}

TEST(SymbolSystem, FrozenDimensions) {
    const auto cfg = PhyConfig::standard(64, CodeRate::R3_4);
    const auto sys = SymbolSystem::build(cfg);
    EXPECT_EQ(sys.alpha(), 288u);
    EXPECT_EQ(sys.beta(), 216u);
    EXPECT_EQ(max_usable_subcarriers(cfg), 36u);
    EXPECT_EQ(max_usable_subcarriers(PhyConfig::standard(64, CodeRate::R1_2)), 24u);
    EXPECT_EQ(max_usable_subcarriers(PhyConfig::standard(64, CodeRate::R5_6)), 40u);
}

TEST(Subset, DefaultIsNearestToDcAndSorted) {
    const auto cfg = PhyConfig::standard(64, CodeRate::R1_2);
    const auto sub = default_subcarrier_subset(cfg);
    ASSERT_EQ(sub.size(), 24u);
    for (std::size_t i = 1; i < sub.size(); ++i) EXPECT_LT(sub[i - 1], sub[i]);
    for (int k : sub) {
        EXPECT_NE(k, 0);
        EXPECT_LE(std::abs(k), 15);
    }
}

TEST(Subset, CertifiedFullRankForAllConfigs) {
    for (int m : {2, 4, 16, 64})
        for (auto r : kRates) {
            const auto cfg = PhyConfig::standard(m, r);
            const auto sys = SymbolSystem::build(cfg);
            const auto cert = certify_subset(sys, cfg, default_subcarrier_subset(cfg));
            EXPECT_TRUE(cert.full_rank()) << m << " " << to_string(r);
            const auto cp = restrict_rows(sys, cfg, cert.subcarriers);
            EXPECT_EQ(rank(cp), cp.rows());
            // Same answer when run again.
            EXPECT_EQ(certify_subset(sys, cfg, default_subcarrier_subset(cfg)).subcarriers, cert.subcarriers);
        }
}

TEST(Subset, OversizedSelectionIsUnsolvableSomewhere) {
    const auto cfg = PhyConfig::standard();
    const auto sys = SymbolSystem::build(cfg);
    std::vector<int> all = cfg.data_subcarriers;
    const auto c = restrict_rows(sys, cfg, all);
    const Solver s(c);
    EXPECT_FALSE(s.full_row_rank());
    std::mt19937_64 rng(4);
    bool found = false;
    for (int t = 0; t < 10 && !found; ++t) found = !s.solve(random_vector(c.rows(), rng)).ok();
    EXPECT_TRUE(found);
}

TEST(Subset, RejectsDuplicatesAndPilots) {
    const auto cfg = PhyConfig::standard();
    const auto sys = SymbolSystem::build(cfg);
    EXPECT_THROW(restrict_rows(sys, cfg, std::vector<int>{1, 1}), std::exception);
    EXPECT_THROW(restrict_rows(sys, cfg, std::vector<int>{7}), std::exception);
}
