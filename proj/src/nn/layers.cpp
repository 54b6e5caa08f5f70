#include "wavemu/nn/layers.hpp"

#include <cmath>

namespace wavemu::nn {

Var activate(Tape& t, Var x, Activation a) {
    switch (a) {
        case Activation::Relu: return relu(t, x);
        case Activation::Tanh: return tanh(t, x);
        case Activation::None: break;
    }
    return x;
}

namespace {

void gaussian_fill(Tensor& w, std::mt19937_64& rng, double sd) {
    std::normal_distribution<double> g(0.0, sd);
    for (auto& v : w.data) v = g(rng);
}

}  // namespace

Dense::Dense(std::size_t in, std::size_t out, std::string name)
    : w_(name + ".weight", {out, in}), b_(name + ".bias", {out}) {}

void Dense::init(std::mt19937_64& rng, double gain) {
    gaussian_fill(w_.value, rng, gain / std::sqrt(static_cast<double>(in())));
    std::fill(b_.value.data.begin(), b_.value.data.end(), 0.0);
}

void Dense::zero() {
    std::fill(w_.value.data.begin(), w_.value.data.end(), 0.0);
    std::fill(b_.value.data.begin(), b_.value.data.end(), 0.0);
}

Var Dense::operator()(Tape& t, Var x, bool frozen) {
    return dense(t, x, t.param(w_, frozen), t.param(b_, frozen));
}

Conv2d::Conv2d(std::size_t in_ch, std::size_t out_ch, std::size_t kh, std::size_t kw, std::string name)
    : w_(name + ".weight", {out_ch, in_ch, kh, kw}), b_(name + ".bias", {out_ch}) {}

void Conv2d::init(std::mt19937_64& rng, double gain) {
    const auto& s = w_.value.shape;
    gaussian_fill(w_.value, rng, gain / std::sqrt(static_cast<double>(s[1] * s[2] * s[3])));
    std::fill(b_.value.data.begin(), b_.value.data.end(), 0.0);
}

void Conv2d::zero() {
    std::fill(w_.value.data.begin(), w_.value.data.end(), 0.0);
    std::fill(b_.value.data.begin(), b_.value.data.end(), 0.0);
}

Var Conv2d::operator()(Tape& t, Var x, bool frozen) {
    return conv2d(t, x, t.param(w_, frozen), t.param(b_, frozen));
}

Conv1d::Conv1d(std::size_t in_ch, std::size_t out_ch, std::size_t k, std::string name)
    : conv_(in_ch, out_ch, 1, k, std::move(name)) {}

Var Conv1d::operator()(Tape& t, Var x, bool frozen) {
    const auto shape = t.value(x).shape;
    Var y = conv_(t, reshape(t, x, {shape.at(0), 1, shape.at(1)}), frozen);
    const auto& ys = t.value(y).shape;
    return reshape(t, y, {ys[0], ys[2]});
}

std::size_t parameter_count(const std::vector<Param*>& ps) {
    std::size_t n = 0;
    for (const Param* p : ps) n += p->value.size();
    return n;
}

void zero_grads(const std::vector<Param*>& ps) {
    for (Param* p : ps) p->zero_grad();
}

}  // namespace wavemu::nn
