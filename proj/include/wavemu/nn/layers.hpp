#pragma once
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wavemu/nn/tape.hpp"
#include "wavemu/nn/tensor.hpp"

namespace wavemu::nn {

enum class Activation { None, Relu, Tanh };
Var activate(Tape& t, Var x, Activation a);

/// Initialization: weights ~ N(0, gain^2 / fan_in), biases zero.
class Dense {
public:
    Dense() = default;
    Dense(std::size_t in, std::size_t out, std::string name);
    void init(std::mt19937_64& rng, double gain);
    void zero();
    Var operator()(Tape& t, Var x, bool frozen = false);
    std::vector<Param*> params() { return {&w_, &b_}; }
    std::size_t in() const { return w_.value.dim(1); }
    std::size_t out() const { return w_.value.dim(0); }

private:
    Param w_, b_;
};

/// 'Same' padded 2D convolution over (C, H, W).
class Conv2d {
public:
    Conv2d() = default;
    Conv2d(std::size_t in_ch, std::size_t out_ch, std::size_t kh, std::size_t kw, std::string name);
    void init(std::mt19937_64& rng, double gain);
    void zero();
    Var operator()(Tape& t, Var x, bool frozen = false);
    std::vector<Param*> params() { return {&w_, &b_}; }

private:
    Param w_, b_;
};

/// 'Same' padded 1D convolution over (C, L); a Conv2d with a 1-row kernel.
class Conv1d {
public:
    Conv1d() = default;
    Conv1d(std::size_t in_ch, std::size_t out_ch, std::size_t k, std::string name);
    void init(std::mt19937_64& rng, double gain) { conv_.init(rng, gain); }
    void zero() { conv_.zero(); }
    Var operator()(Tape& t, Var x, bool frozen = false);
    std::vector<Param*> params() { return conv_.params(); }

private:
    Conv2d conv_;
};

/// Convolution stack: in -> width -> ... -> out with `act` between layers and
/// none after the last. With zero_last the final layer starts at zero.
template <class Layer>
struct Stack {
    std::vector<Layer> layers;
    Activation act = Activation::Relu;
    std::vector<Param*> params() {
        std::vector<Param*> out;
        for (auto& l : layers)
            for (Param* p : l.params()) out.push_back(p);
        return out;
    }
    Var operator()(Tape& t, Var x, bool frozen = false) {
        for (std::size_t i = 0; i < layers.size(); ++i) {
            x = layers[i](t, x, frozen);
            if (i + 1 < layers.size()) x = activate(t, x, act);
        }
        return x;
    }
};

std::size_t parameter_count(const std::vector<Param*>& ps);
void zero_grads(const std::vector<Param*>& ps);

}  // namespace wavemu::nn
