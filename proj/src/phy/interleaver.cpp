#include <algorithm>
#include <string>

#include "wavemu/error.hpp"
#include "wavemu/phy/coding.hpp"

namespace wavemu {

std::size_t interleave_index(std::size_t k, int n_cbps, int n_bpsc) {
    const std::size_t n = static_cast<std::size_t>(n_cbps);
    const std::size_t s = static_cast<std::size_t>(std::max(n_bpsc / 2, 1));
    const std::size_t i = (n / 16) * (k % 16) + k / 16;
    return s * (i / s) + (i + n - (16 * i) / n) % s;
}

namespace {

void check_block(std::size_t size, int n_cbps) {
    if (n_cbps <= 0 || n_cbps % 16 != 0) throw FramingError("interleaver: n_cbps must be a positive multiple of 16");
    if (size != static_cast<std::size_t>(n_cbps))
        throw FramingError("interleaver: block of " + std::to_string(size) + " bits, expected " +
                           std::to_string(n_cbps));
}

}  // namespace

Bits interleave(std::span<const std::uint8_t> block, int n_cbps, int n_bpsc) {
    check_block(block.size(), n_cbps);
    Bits out(block.size());
    for (std::size_t k = 0; k < block.size(); ++k) out[interleave_index(k, n_cbps, n_bpsc)] = block[k];
    return out;
}

Bits deinterleave(std::span<const std::uint8_t> block, int n_cbps, int n_bpsc) {
    check_block(block.size(), n_cbps);
    Bits out(block.size());
    for (std::size_t k = 0; k < block.size(); ++k) out[k] = block[interleave_index(k, n_cbps, n_bpsc)];
    return out;
}

}  // namespace wavemu
