#pragma once

#include <cstdint>
#include <span>

#include "wavemu/phy/types.hpp"

namespace wavemu {

/// Gray-labelled square QAM (BPSK on the I axis for M = 2) with unit
/// average power.
class Constellation {
public:
    explicit Constellation(int modulation);

    int order() const { return order_; }
    int bits_per_symbol() const { return bits_; }
    /// Amplitude levels per axis (1 for the BPSK Q axis).
    int levels_per_axis() const { return levels_; }
    /// 1/sqrt(K_MOD).
    double norm() const { return norm_; }
    /// Outermost level on an axis, in normalized units.
    double box_edge() const { return (levels_ - 1) * norm_; }
    /// Distance between adjacent levels, normalized.
    double step() const { return 2.0 * norm_; }

    cplx map(std::span<const std::uint8_t> label) const;
    /// Nearest point with ties toward the level nearer zero; writes the
    /// label into `label_out` (bits_per_symbol entries).
    cplx quantize(cplx z, std::span<std::uint8_t> label_out) const;
    cplx quantize(cplx z) const;
    void hard_demap(cplx z, std::span<std::uint8_t> label_out) const;

private:
    int axis_level(double v) const;
    void level_bits(int level, std::span<std::uint8_t> out) const;
    int bits_level(std::span<const std::uint8_t> in) const;

    int order_;
    int bits_;
    int axis_bits_;
    int levels_;
    double norm_;
};

}  // namespace wavemu
