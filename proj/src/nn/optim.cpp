#include "wavemu/nn/optim.hpp"

#include <cmath>

#include "wavemu/error.hpp"

namespace wavemu::nn {

Sgd::Sgd(std::vector<Param*> params, double lr, double momentum, double max_grad_norm)
    : params_(std::move(params)), lr_(lr), momentum_(momentum), max_norm_(max_grad_norm) {
    if (!(lr > 0.0) || momentum < 0.0 || momentum >= 1.0) throw ConfigError("SGD needs lr > 0 and momentum in [0, 1)");
    for (Param* p : params_) velocity_.emplace_back(p->value.size(), 0.0);
}

void Sgd::step(double grad_scale) {
    double factor = grad_scale;
    if (max_norm_ > 0.0) {
        double sq = 0.0;
        for (const Param* p : params_)
            for (double g : p->grad.data) sq += g * g * grad_scale * grad_scale;
        const double norm = std::sqrt(sq);
        if (norm > max_norm_) factor *= max_norm_ / norm;
    }
    for (std::size_t i = 0; i < params_.size(); ++i) {
        auto& v = velocity_[i];
        auto& val = params_[i]->value.data;
        const auto& g = params_[i]->grad.data;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (!std::isfinite(g[k])) throw NumericError("non-finite gradient in " + params_[i]->name);
            v[k] = momentum_ * v[k] - lr_ * factor * g[k];
            val[k] += v[k];
        }
    }
    zero_grad();
}

void Sgd::zero_grad() {
    for (Param* p : params_) p->zero_grad();
}

}  // namespace wavemu::nn
