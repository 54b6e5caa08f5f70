#pragma once

#include <array>
#include <span>
#include <vector>

#include "wavemu/gf2/matrix.hpp"
#include "wavemu/phy/coding.hpp"
#include "wavemu/phy/config.hpp"

namespace wavemu::gf2 {

/// Per-OFDM-symbol affine model of convolutional coding, puncturing and
/// interleaving: coded(x, s) = C x  XOR  offset[s], where x holds the
/// beta = R N log2(M) scrambled input bits of one symbol and s is the
/// incoming encoder state. Row r of C is interleaved coded bit r, i.e. bit
/// (r % log2 M) of data subcarrier r / log2 M in configuration order.
class SymbolSystem {
public:
    /// Builds C directly from the generator taps and the puncture/interleave
    /// index maps. Passing non-standard generators is only useful to test
    /// that the probe check against the PHY pipeline catches mismatches.
    static SymbolSystem build(const PhyConfig& cfg, unsigned gen_a = kGenA, unsigned gen_b = kGenB);

    const Matrix& matrix() const { return c_; }
    const Vector& state_offset(ConvState s) const { return offsets_[s.reg & 0x3F]; }

    std::size_t alpha() const { return c_.rows(); }
    std::size_t beta() const { return c_.cols(); }
    int n_data() const { return n_data_; }
    int bits_per_subcarrier() const { return bpsc_; }

    /// Row of C carrying bit `bit` of logical data subcarrier `data_index`.
    std::size_t row_index_of(int data_index, int bit) const;

    /// C x XOR offset[s].
    Vector coded_bits(const Vector& x, ConvState s) const;

private:
    Matrix c_;
    std::array<Vector, 64> offsets_;
    int n_data_ = 0;
    int bpsc_ = 0;
};

/// Interleaved coded bits of one symbol produced by the PHY functions
/// themselves (conv_encode -> puncture -> interleave).
Bits pipeline_symbol_bits(std::span<const std::uint8_t> x, ConvState s, const PhyConfig& cfg);

/// Rows of C for the chosen subcarriers (signed offsets, must be data
/// subcarriers, no duplicates), in (subcarrier, bit) order.
Matrix restrict_rows(const SymbolSystem& sys, const PhyConfig& cfg, std::span<const int> chosen);
std::vector<std::size_t> chosen_rows(const SymbolSystem& sys, const PhyConfig& cfg, std::span<const int> chosen);

/// floor(R N): the largest subset for which C' can have full row rank.
std::size_t max_usable_subcarriers(const PhyConfig& cfg);

/// The floor(R N) data subcarriers closest to DC (ties: negative first),
/// returned in ascending frequency order.
std::vector<int> default_subcarrier_subset(const PhyConfig& cfg);

struct CertifiedSubset {
    std::vector<int> subcarriers;  // ascending frequency
    std::size_t rank = 0;
    std::size_t rows = 0;
    int swaps = 0;
    bool full_rank() const { return rank == rows; }
};

/// Checks rank(C') for `initial`. While deficient, first swaps a chosen
/// subcarrier with partly dependent rows for the nearest-to-DC unused one
/// that raises the rank; if that stalls, continues with seeded random swaps
/// that never lower the rank. Deterministic for a given configuration.
CertifiedSubset certify_subset(const SymbolSystem& sys, const PhyConfig& cfg, std::vector<int> initial);

}  // namespace wavemu::gf2
