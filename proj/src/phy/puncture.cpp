#include <array>
#include <string>

#include "wavemu/error.hpp"
#include "wavemu/phy/coding.hpp"

namespace wavemu {
namespace {

constexpr std::array<std::uint8_t, 2> kKeep12{1, 1};
constexpr std::array<std::uint8_t, 4> kKeep23{1, 1, 1, 0};
constexpr std::array<std::uint8_t, 6> kKeep34{1, 1, 1, 0, 0, 1};
constexpr std::array<std::uint8_t, 10> kKeep56{1, 1, 1, 0, 0, 1, 1, 0, 0, 1};

std::size_t kept_per_period(std::span<const std::uint8_t> p) {
    std::size_t n = 0;
    for (auto v : p) n += v;
    return n;
}

}  // namespace

std::span<const std::uint8_t> puncture_pattern(CodeRate rate) {
    switch (rate) {
        case CodeRate::R1_2: return kKeep12;
        case CodeRate::R2_3: return kKeep23;
        case CodeRate::R3_4: return kKeep34;
        case CodeRate::R5_6: return kKeep56;
    }
    return kKeep12;
}

Bits puncture(std::span<const std::uint8_t> mother, CodeRate rate) {
    const auto pattern = puncture_pattern(rate);
    if (mother.size() % pattern.size() != 0)
        throw FramingError("puncture: length " + std::to_string(mother.size()) + " not a multiple of period " +
                           std::to_string(pattern.size()));
    Bits out;
    out.reserve(mother.size() / pattern.size() * kept_per_period(pattern));
    for (std::size_t i = 0; i < mother.size(); ++i)
        if (pattern[i % pattern.size()]) out.push_back(mother[i]);
    return out;
}

Bits depuncture(std::span<const std::uint8_t> kept, CodeRate rate) {
    const auto pattern = puncture_pattern(rate);
    const std::size_t per = kept_per_period(pattern);
    if (kept.size() % per != 0)
        throw FramingError("depuncture: length " + std::to_string(kept.size()) + " not a multiple of " +
                           std::to_string(per));
    Bits out;
    out.reserve(kept.size() / per * pattern.size());
    std::size_t k = 0;
    while (k < kept.size()) {
        for (auto keep : pattern) out.push_back(keep ? kept[k++] : kErasure);
    }
    return out;
}

}  // namespace wavemu
