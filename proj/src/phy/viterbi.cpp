#include <array>
#include <bit>
#include <cstdint>
#include <limits>

#include "wavemu/error.hpp"
#include "wavemu/phy/coding.hpp"

namespace wavemu {
namespace {

constexpr int kStates = 64;

struct Branch {
    std::uint8_t a;
    std::uint8_t b;
};

// Output pair for entering `next` from predecessor `prev`.
constexpr Branch branch_bits(unsigned prev, unsigned next) {
    const unsigned full = ((next >> 5) << 6) | prev;
    return {static_cast<std::uint8_t>(std::popcount(full & kGenA) & 1),
            static_cast<std::uint8_t>(std::popcount(full & kGenB) & 1)};
}

unsigned cost(std::uint8_t expected, std::uint8_t received) {
    return received == kErasure ? 0u : static_cast<unsigned>(expected != received);
}

}  // namespace

Bits viterbi_decode(std::span<const std::uint8_t> mother, ConvState start) {
    if (mother.size() % 2 != 0) throw FramingError("viterbi_decode: odd mother-code length");
    const std::size_t steps = mother.size() / 2;
    constexpr unsigned kInf = std::numeric_limits<unsigned>::max() / 2;

    std::array<unsigned, kStates> metric;
    metric.fill(kInf);
    metric[start.reg & 0x3F] = 0;
    // survivor[t][next] = low bit of the chosen predecessor.
    std::vector<std::array<std::uint8_t, kStates>> survivor(steps);

    for (std::size_t t = 0; t < steps; ++t) {
        const std::uint8_t ra = mother[2 * t];
        const std::uint8_t rb = mother[2 * t + 1];
        std::array<unsigned, kStates> next_metric;
        for (unsigned next = 0; next < kStates; ++next) {
            const unsigned p0 = (next << 1) & 0x3F;
            const unsigned p1 = p0 | 1u;
            const Branch b0 = branch_bits(p0, next);
            const Branch b1 = branch_bits(p1, next);
            const unsigned m0 = metric[p0] + cost(b0.a, ra) + cost(b0.b, rb);
            const unsigned m1 = metric[p1] + cost(b1.a, ra) + cost(b1.b, rb);
            // Ties resolve toward the lower-numbered predecessor (p0).
            if (m1 < m0) {
                next_metric[next] = m1;
                survivor[t][next] = 1;
            } else {
                next_metric[next] = m0;
                survivor[t][next] = 0;
            }
        }
        metric = next_metric;
    }

    unsigned state = 0;
    for (unsigned s = 1; s < kStates; ++s)
        if (metric[s] < metric[state]) state = s;

    Bits out(steps);
    for (std::size_t t = steps; t-- > 0;) {
        out[t] = static_cast<std::uint8_t>(state >> 5);
        state = ((state << 1) & 0x3F) | survivor[t][state];
    }
    return out;
}

std::size_t path_metric(std::span<const std::uint8_t> info, std::span<const std::uint8_t> mother, ConvState start) {
    if (mother.size() != 2 * info.size()) throw FramingError("path_metric: length mismatch");
    const auto [coded, end] = conv_encode(info, start);
    std::size_t d = 0;
    for (std::size_t i = 0; i < coded.size(); ++i) d += cost(coded[i], mother[i]);
    return d;
}

}  // namespace wavemu
