#include "wavemu/gf2/symbol_system.hpp"

#include <algorithm>
#include <random>
#include <cstdlib>
#include <set>

#include "wavemu/error.hpp"

namespace wavemu::gf2 {

SymbolSystem SymbolSystem::build(const PhyConfig& cfg, unsigned gen_a, unsigned gen_b) {
    cfg.validate();
    SymbolSystem sys;
    sys.n_data_ = cfg.n_data();
    sys.bpsc_ = cfg.bits_per_subcarrier();
    const int n_cbps = cfg.coded_bits_per_symbol();
    const auto beta = static_cast<std::size_t>(cfg.data_bits_per_symbol());
    const auto alpha = static_cast<std::size_t>(n_cbps);
    sys.c_ = Matrix(alpha, beta);
    for (auto& v : sys.offsets_) v = Vector(alpha);

    const auto pattern = puncture_pattern(cfg.rate);
    std::size_t kept = 0;
    for (std::size_t m = 0; m < 2 * beta; ++m) {
        if (!pattern[m % pattern.size()]) continue;
        const std::size_t row = interleave_index(kept++, n_cbps, sys.bpsc_);
        const std::size_t t = m / 2;
        const unsigned gen = (m % 2 == 0) ? gen_a : gen_b;
        // Register bit (6 - j) multiplies input x_{t-j}; inputs before the
        // symbol start come from the incoming state.
        for (std::size_t j = 0; j <= 6; ++j) {
            if (!((gen >> (6 - j)) & 1u)) continue;
            if (j <= t) {
                sys.c_.set(row, t - j, !sys.c_.get(row, t - j));
            } else {
                const std::size_t state_bit = 6 - (j - t);
                for (unsigned s = 0; s < 64; ++s)
                    if ((s >> state_bit) & 1u) sys.offsets_[s].flip(row);
            }
        }
    }
    if (kept != alpha) throw ConfigError("symbol system: puncturing does not yield n_cbps bits");
    return sys;
}

std::size_t SymbolSystem::row_index_of(int data_index, int bit) const {
    if (data_index < 0 || data_index >= n_data_ || bit < 0 || bit >= bpsc_)
        throw SelectionError("row_index_of: index out of range");
    return static_cast<std::size_t>(data_index) * static_cast<std::size_t>(bpsc_) + static_cast<std::size_t>(bit);
}

Vector SymbolSystem::coded_bits(const Vector& x, ConvState s) const { return c_.multiply(x) ^ state_offset(s); }

Bits pipeline_symbol_bits(std::span<const std::uint8_t> x, ConvState s, const PhyConfig& cfg) {
    const auto [mother, end] = conv_encode(x, s);
    return interleave(puncture(mother, cfg.rate), cfg.coded_bits_per_symbol(), cfg.bits_per_subcarrier());
}

std::vector<std::size_t> chosen_rows(const SymbolSystem& sys, const PhyConfig& cfg, std::span<const int> chosen) {
    std::set<int> seen;
    std::vector<std::size_t> rows;
    rows.reserve(chosen.size() * static_cast<std::size_t>(sys.bits_per_subcarrier()));
    for (int f : chosen) {
        const auto it = std::find(cfg.data_subcarriers.begin(), cfg.data_subcarriers.end(), f);
        if (it == cfg.data_subcarriers.end())
            throw SelectionError("subcarrier " + std::to_string(f) + " is not a data subcarrier");
        if (!seen.insert(f).second) throw SelectionError("subcarrier " + std::to_string(f) + " chosen twice");
        const int idx = static_cast<int>(it - cfg.data_subcarriers.begin());
        for (int b = 0; b < sys.bits_per_subcarrier(); ++b) rows.push_back(sys.row_index_of(idx, b));
    }
    return rows;
}

Matrix restrict_rows(const SymbolSystem& sys, const PhyConfig& cfg, std::span<const int> chosen) {
    const auto rows = chosen_rows(sys, cfg, chosen);
    return sys.matrix().select_rows(rows);
}

std::size_t max_usable_subcarriers(const PhyConfig& cfg) {
    return static_cast<std::size_t>(cfg.n_data() * rate_numerator(cfg.rate) / rate_denominator(cfg.rate));
}

std::vector<int> default_subcarrier_subset(const PhyConfig& cfg) {
    std::vector<int> order = cfg.data_subcarriers;
    std::stable_sort(order.begin(), order.end(), [](int a, int b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        return a < b;
    });
    order.resize(std::min(order.size(), max_usable_subcarriers(cfg)));
    std::sort(order.begin(), order.end());
    return order;
}

namespace {

// Data subcarriers ordered nearest to DC first (ties: negative first).
std::vector<int> dc_order(const PhyConfig& cfg) {
    std::vector<int> pool = cfg.data_subcarriers;
    std::stable_sort(pool.begin(), pool.end(), [](int a, int b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        return a < b;
    });
    return pool;
}

}  // namespace

CertifiedSubset certify_subset(const SymbolSystem& sys, const PhyConfig& cfg, std::vector<int> initial) {
    std::sort(initial.begin(), initial.end());
    CertifiedSubset out;
    out.subcarriers = initial;
    out.rows = initial.size() * static_cast<std::size_t>(sys.bits_per_subcarrier());
    auto rank_of = [&](const std::vector<int>& set) { return rank(restrict_rows(sys, cfg, set)); };
    out.rank = rank_of(out.subcarriers);
    if (out.full_rank() || out.rows > sys.beta()) return out;

    const std::vector<int> pool = dc_order(cfg);
    auto is_chosen = [&](int f) {
        return std::find(out.subcarriers.begin(), out.subcarriers.end(), f) != out.subcarriers.end();
    };

    // Greedy: replace a subcarrier whose rows are partly dependent with the
    // nearest-to-DC unused one that raises the rank.
    bool improved = true;
    while (!out.full_rank() && improved) {
        improved = false;
        for (std::size_t i = 0; i < out.subcarriers.size() && !improved; ++i) {
            std::vector<int> without = out.subcarriers;
            without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
            if (rank_of(without) + static_cast<std::size_t>(sys.bits_per_subcarrier()) == out.rank) continue;
            for (int cand : pool) {
                if (is_chosen(cand)) continue;
                std::vector<int> trial = without;
                trial.push_back(cand);
                std::sort(trial.begin(), trial.end());
                const std::size_t r = rank_of(trial);
                if (r > out.rank) {
                    out.subcarriers = std::move(trial);
                    out.rank = r;
                    ++out.swaps;
                    improved = true;
                    break;
                }
            }
        }
    }

    // The greedy pass can stall on a rank plateau. Continue with seeded
    // random swaps that never lower the rank; fixed seed keeps the result
    // reproducible.
    std::mt19937_64 rng(0x5eedULL);
    std::vector<int> unused;
    for (int f : pool)
        if (!is_chosen(f)) unused.push_back(f);
    for (int it = 0; it < 200000 && !out.full_rank() && !unused.empty(); ++it) {
        const std::size_t i = rng() % out.subcarriers.size();
        const std::size_t j = rng() % unused.size();
        std::vector<int> trial = out.subcarriers;
        trial[i] = unused[j];
        std::sort(trial.begin(), trial.end());
        const std::size_t r = rank_of(trial);
        if (r >= out.rank) {
            unused[j] = out.subcarriers[i];
            out.subcarriers = std::move(trial);
            out.rank = r;
            ++out.swaps;
        }
    }
    return out;
}

}  // namespace wavemu::gf2
