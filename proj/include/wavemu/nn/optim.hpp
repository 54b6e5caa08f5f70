#pragma once
#include <vector>

#include "wavemu/nn/tensor.hpp"

namespace wavemu::nn {

/// SGD with classical momentum: v = mu v - lr g; theta += v.
class Sgd {
public:
    Sgd(std::vector<Param*> params, double lr, double momentum = 0.9, double max_grad_norm = 0.0);
    /// Uses grad * grad_scale (e.g. 1 / batch size), then zeroes the grads.
    void step(double grad_scale = 1.0);
    void zero_grad();
    double lr() const { return lr_; }
    void set_lr(double lr) { lr_ = lr; }

private:
    std::vector<Param*> params_;
    std::vector<std::vector<double>> velocity_;
    double lr_;
    double momentum_;
    double max_norm_;
};

}  // namespace wavemu::nn
