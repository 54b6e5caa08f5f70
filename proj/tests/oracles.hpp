#pragma once
// Straight-line reference implementations used as test oracles. Written
// from the textbook definitions, independent of the library code.
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using Bits = std::vector<std::uint8_t>;

// x^7 + x^4 + 1; seed bit 0 is x1, bit 6 is x7.
inline Bits scramble(const Bits& in, unsigned seed) {
    int x[8] = {};
    for (int i = 1; i <= 7; ++i) x[i] = (seed >> (i - 1)) & 1;
    Bits out(in.size());
    for (std::size_t n = 0; n < in.size(); ++n) {
        const int fb = x[7] ^ x[4];
        for (int i = 7; i > 1; --i) x[i] = x[i - 1];
        x[1] = fb;
        out[n] = static_cast<std::uint8_t>(in[n] ^ fb);
    }
    return out;
}

// K = 7, g0 = 133, g1 = 171 octal, zero start state. d[0] is the current bit.
inline Bits conv_encode(const Bits& in) {
    int d[7] = {};
    Bits out;
    for (auto b : in) {
        for (int i = 6; i > 0; --i) d[i] = d[i - 1];
        d[0] = b;
        out.push_back(static_cast<std::uint8_t>(d[0] ^ d[2] ^ d[3] ^ d[5] ^ d[6]));
        out.push_back(static_cast<std::uint8_t>(d[0] ^ d[1] ^ d[2] ^ d[3] ^ d[6]));
    }
    return out;
}

// Keep masks over the A0 B0 A1 B1 ... stream.
inline Bits puncture(const Bits& mother, int num, int den) {
    std::vector<int> keep;
    if (num == 1 && den == 2) keep = {1, 1};
    else if (num == 2 && den == 3) keep = {1, 1, 1, 0};
    else if (num == 3 && den == 4) keep = {1, 1, 1, 0, 0, 1};
    else keep = {1, 1, 1, 0, 0, 1, 1, 0, 0, 1};
    Bits out;
    for (std::size_t i = 0; i < mother.size(); ++i)
        if (keep[i % keep.size()]) out.push_back(mother[i]);
    return out;
}

// Destination of input bit k (first then second permutation).
inline std::size_t interleave_dest(std::size_t k, std::size_t ncbps, std::size_t nbpsc) {
    const std::size_t s = nbpsc / 2 > 1 ? nbpsc / 2 : 1;
    const std::size_t i = (ncbps / 16) * (k % 16) + k / 16;
    return s * (i / s) + (i + ncbps - (16 * i / ncbps)) % s;
}

inline std::size_t hamming(const Bits& a, const Bits& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) d += (b[i] <= 1) && a[i] != b[i];
    return d;
}

}  // namespace oracle
