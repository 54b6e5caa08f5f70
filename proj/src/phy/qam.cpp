#include "wavemu/phy/qam.hpp"

#include <algorithm>
#include <cmath>

#include "wavemu/error.hpp"

namespace wavemu {

Constellation::Constellation(int modulation) : order_(modulation) {
    switch (modulation) {
        case 2: bits_ = 1; axis_bits_ = 1; norm_ = 1.0; break;
        case 4: bits_ = 2; axis_bits_ = 1; norm_ = 1.0 / std::sqrt(2.0); break;
        case 16: bits_ = 4; axis_bits_ = 2; norm_ = 1.0 / std::sqrt(10.0); break;
        case 64: bits_ = 6; axis_bits_ = 3; norm_ = 1.0 / std::sqrt(42.0); break;
        default: throw ConfigError("unsupported modulation order " + std::to_string(modulation));
    }
    levels_ = 1 << axis_bits_;
}

// Level index li in [0, L) sits at amplitude 2*li - (L - 1); its label is the
// binary-reflected Gray code of li, most significant bit first.
void Constellation::level_bits(int level, std::span<std::uint8_t> out) const {
    const unsigned li = static_cast<unsigned>((level + levels_ - 1) / 2);
    const unsigned g = li ^ (li >> 1);
    for (int b = 0; b < axis_bits_; ++b) out[b] = static_cast<std::uint8_t>((g >> (axis_bits_ - 1 - b)) & 1u);
}

int Constellation::bits_level(std::span<const std::uint8_t> in) const {
    unsigned g = 0;
    for (int b = 0; b < axis_bits_; ++b) g = (g << 1) | (in[b] & 1u);
    unsigned li = 0;
    for (unsigned x = g; x; x >>= 1) li ^= x;
    return 2 * static_cast<int>(li) - (levels_ - 1);
}

int Constellation::axis_level(double v) const {
    const double top = levels_ - 1;
    const double u = std::clamp(v / norm_, -top, top);
    // Odd levels: nearest odd integer, exact midpoints go toward zero.
    const double lo = 2.0 * std::floor((u - 1.0) / 2.0) + 1.0;
    const double hi = lo + 2.0;
    double pick;
    if (u - lo < hi - u) {
        pick = lo;
    } else if (hi - u < u - lo) {
        pick = hi;
    } else {
        pick = std::abs(lo) <= std::abs(hi) ? lo : hi;
    }
    return static_cast<int>(std::clamp(pick, -top, top));
}

cplx Constellation::map(std::span<const std::uint8_t> label) const {
    if (static_cast<int>(label.size()) < bits_) throw FramingError("qam_map: short label");
    if (order_ == 2) return {bits_level(label.first(1)) * norm_, 0.0};
    const int li = bits_level(label.first(axis_bits_));
    const int lq = bits_level(label.subspan(axis_bits_, axis_bits_));
    return {li * norm_, lq * norm_};
}

cplx Constellation::quantize(cplx z, std::span<std::uint8_t> label_out) const {
    const int li = axis_level(z.real());
    level_bits(li, label_out.first(axis_bits_));
    if (order_ == 2) return {li * norm_, 0.0};
    const int lq = axis_level(z.imag());
    level_bits(lq, label_out.subspan(axis_bits_, axis_bits_));
    return {li * norm_, lq * norm_};
}

cplx Constellation::quantize(cplx z) const {
    std::uint8_t scratch[6];
    return quantize(z, std::span<std::uint8_t>(scratch, 6));
}

void Constellation::hard_demap(cplx z, std::span<std::uint8_t> label_out) const { quantize(z, label_out); }

}  // namespace wavemu
