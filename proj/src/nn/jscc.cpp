#include "wavemu/nn/jscc.hpp"

#include <cmath>
#include <random>

#include "wavemu/error.hpp"

namespace wavemu::nn {

std::vector<cplx> pair_latent(std::span<const double> z) {
    if (z.size() % 2 != 0) throw FramingError("latent length must be even");
    std::vector<cplx> s(z.size() / 2);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = {z[2 * k], z[2 * k + 1]};
    return s;
}

std::vector<double> unpair_latent(std::span<const cplx> s) {
    std::vector<double> z(2 * s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        z[2 * k] = s[k].real();
        z[2 * k + 1] = s[k].imag();
    }
    return z;
}

ToyJscc::ToyJscc(JsccConfig cfg, std::uint64_t seed) : cfg_(cfg) {
    if (cfg_.side == 0 || cfg_.k == 0) throw ConfigError("jscc needs side >= 1 and k >= 1");
    std::mt19937_64 rng(seed);
    const std::size_t px = pixels(), lat = 2 * cfg_.k;
    enc_.act = dec_.act = Activation::Tanh;
    if (cfg_.hidden == 0) {
        enc_.layers.emplace_back(px, lat, "jscc.enc0");
        dec_.layers.emplace_back(lat, px, "jscc.dec0");
    } else {
        enc_.layers.emplace_back(px, cfg_.hidden, "jscc.enc0");
        enc_.layers.emplace_back(cfg_.hidden, lat, "jscc.enc1");
        dec_.layers.emplace_back(lat, cfg_.hidden, "jscc.dec0");
        dec_.layers.emplace_back(cfg_.hidden, px, "jscc.dec1");
    }
    for (auto& l : enc_.layers) l.init(rng, 1.0);
    for (auto& l : dec_.layers) l.init(rng, 1.0);
}

Var ToyJscc::encode(Tape& t, Var image, bool frozen) {
    if (t.value(image).size() != pixels())
        throw FramingError("jscc_encode: image has " + std::to_string(t.value(image).size()) + " pixels, expected " +
                           std::to_string(pixels()));
    Var flat = reshape(t, image, {pixels()});
    return power_normalize(t, enc_(t, flat, frozen), 0.5);
}

Var ToyJscc::decode(Tape& t, Var latent, bool frozen) {
    if (t.value(latent).size() != 2 * cfg_.k) throw FramingError("jscc_decode: latent must have 2K values");
    Var flat = reshape(t, latent, {2 * cfg_.k});
    return reshape(t, dec_(t, flat, frozen), {cfg_.side, cfg_.side});
}

std::vector<cplx> ToyJscc::encode(const Tensor& image) {
    Tape t;
    return pair_latent(t.value(encode(t, t.constant(image), true)).data);
}

Tensor ToyJscc::decode(std::span<const cplx> symbols) {
    Tape t;
    return t.value(decode(t, t.constant(Tensor({2 * symbols.size()}, unpair_latent(symbols))), true));
}

std::vector<Param*> ToyJscc::params() {
    auto p = enc_.params();
    for (Param* q : dec_.params()) p.push_back(q);
    return p;
}

std::string ToyJscc::fingerprint() const {
    return "jscc-s" + std::to_string(cfg_.side) + "-K" + std::to_string(cfg_.k) + "-h" + std::to_string(cfg_.hidden);
}

std::vector<Tensor> glyph_images(std::size_t count, std::uint64_t seed, std::size_t side) {
    std::mt19937_64 rng(seed);
    auto uni = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    std::uniform_real_distribution<double> level(0.5, 1.0);
    std::vector<Tensor> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        Tensor img({side, side});
        auto put = [&](std::size_t r, std::size_t c, double v) {
            double& p = img[r * side + c];
            p = std::max(p, v);
        };
        const std::size_t strokes = uni(1, 3);
        for (std::size_t s = 0; s < strokes; ++s) {
            const double v = level(rng);
            switch (uni(0, 3)) {
                case 0: {  // horizontal bar
                    const std::size_t r = uni(0, side - 1), a = uni(0, side - 2), b = uni(a + 1, side - 1);
                    for (std::size_t c = a; c <= b; ++c) put(r, c, v);
                    break;
                }
                case 1: {  // vertical bar
                    const std::size_t c = uni(0, side - 1), a = uni(0, side - 2), b = uni(a + 1, side - 1);
                    for (std::size_t r = a; r <= b; ++r) put(r, c, v);
                    break;
                }
                case 2: {  // box outline
                    const std::size_t r0 = uni(0, side - 3), c0 = uni(0, side - 3);
                    const std::size_t r1 = uni(r0 + 2, side - 1), c1 = uni(c0 + 2, side - 1);
                    for (std::size_t c = c0; c <= c1; ++c) put(r0, c, v), put(r1, c, v);
                    for (std::size_t r = r0; r <= r1; ++r) put(r, c0, v), put(r, c1, v);
                    break;
                }
                default: {  // diagonal
                    const bool anti = uni(0, 1) == 1;
                    const std::size_t len = uni(3, side), r0 = uni(0, side - len), c0 = uni(0, side - len);
                    for (std::size_t i = 0; i < len; ++i) put(r0 + i, anti ? c0 + len - 1 - i : c0 + i, v);
                    break;
                }
            }
        }
        out.push_back(std::move(img));
    }
    return out;
}

double image_mse(std::span<const Tensor> a, std::span<const Tensor> b) {
    if (a.size() != b.size() || a.empty()) throw FramingError("image_mse: mismatched or empty image sets");
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) throw FramingError("image_mse: image shape mismatch");
        for (std::size_t p = 0; p < a[i].size(); ++p) acc += (a[i][p] - b[i][p]) * (a[i][p] - b[i][p]);
        n += a[i].size();
    }
    return acc / static_cast<double>(n);
}

}  // namespace wavemu::nn
