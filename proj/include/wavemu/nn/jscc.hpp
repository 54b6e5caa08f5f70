#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wavemu/nn/layers.hpp"
#include "wavemu/phy/types.hpp"

namespace wavemu::nn {

struct JsccConfig {
    std::size_t side = 8;    // images are side x side, one channel
    std::size_t k = 18;      // complex symbols per image
    std::size_t hidden = 0;  // 0: single linear layer each way; else tanh hidden layer
};

/// S_k = z_{2k-1} + j z_{2k} (1-based), i.e. consecutive latent pairs.
std::vector<cplx> pair_latent(std::span<const double> z);
std::vector<double> unpair_latent(std::span<const cplx> s);

/// Toy encoder/decoder. The encoder output is power normalized so the K
/// complex symbols have unit average power.
class ToyJscc {
public:
    ToyJscc(JsccConfig cfg, std::uint64_t seed);

    Var encode(Tape& t, Var image, bool frozen = false);
    Var decode(Tape& t, Var latent, bool frozen = false);

    std::vector<cplx> encode(const Tensor& image);
    Tensor decode(std::span<const cplx> symbols);

    std::vector<Param*> params();
    const JsccConfig& config() const { return cfg_; }
    std::size_t pixels() const { return cfg_.side * cfg_.side; }
    std::string fingerprint() const;

private:
    JsccConfig cfg_;
    Stack<Dense> enc_;
    Stack<Dense> dec_;
};

/// Procedural 8x8-style glyph images in [0, 1]: bars, boxes and diagonals.
std::vector<Tensor> glyph_images(std::size_t count, std::uint64_t seed, std::size_t side = 8);

/// Mean over images of per-pixel squared error.
double image_mse(std::span<const Tensor> a, std::span<const Tensor> b);

}  // namespace wavemu::nn
