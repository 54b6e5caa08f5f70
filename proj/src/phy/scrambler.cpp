#include "wavemu/error.hpp"
#include "wavemu/phy/coding.hpp"

namespace wavemu {

Bits scrambler_sequence(std::uint8_t seed, std::size_t length) {
    if ((seed & 0x7F) == 0) throw ConfigError("scrambler seed must be nonzero");
    unsigned state = seed & 0x7Fu;
    Bits out(length);
    for (auto& bit : out) {
        const unsigned fb = ((state >> 6) ^ (state >> 3)) & 1u;
        state = ((state << 1) | fb) & 0x7Fu;
        bit = static_cast<std::uint8_t>(fb);
    }
    return out;
}

Bits scramble(std::span<const std::uint8_t> bits, std::uint8_t seed) {
    Bits out = scrambler_sequence(seed, bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] ^= bits[i] & 1u;
    return out;
}

}  // namespace wavemu
