#include <bit>

#include "wavemu/phy/coding.hpp"

namespace wavemu {

std::pair<Bits, ConvState> conv_encode(std::span<const std::uint8_t> bits, ConvState state) {
    Bits out(2 * bits.size());
    unsigned reg = state.reg & 0x3Fu;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const unsigned full = ((bits[i] & 1u) << 6) | reg;
        out[2 * i] = static_cast<std::uint8_t>(std::popcount(full & kGenA) & 1);
        out[2 * i + 1] = static_cast<std::uint8_t>(std::popcount(full & kGenB) & 1);
        reg = full >> 1;
    }
    return {std::move(out), ConvState{static_cast<std::uint8_t>(reg)}};
}

ConvState conv_advance(std::span<const std::uint8_t> bits, ConvState state) {
    unsigned reg = state.reg & 0x3Fu;
    for (auto b : bits) reg = (((b & 1u) << 6) | reg) >> 1;
    return ConvState{static_cast<std::uint8_t>(reg)};
}

}  // namespace wavemu
