#include "wavemu/nn/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "wavemu/error.hpp"

namespace wavemu::nn {

std::size_t element_count(const std::vector<std::size_t>& shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

Tensor::Tensor(std::vector<std::size_t> dims, double fill) : shape(std::move(dims)), data(element_count(shape), fill) {}

Tensor::Tensor(std::vector<std::size_t> dims, std::vector<double> values) : shape(std::move(dims)), data(std::move(values)) {
    if (data.size() != element_count(shape))
        throw FramingError("tensor of shape " + shape_text() + " given " + std::to_string(data.size()) + " values");
}

std::string Tensor::shape_text() const {
    std::string s = "(";
    for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "," : "") + std::to_string(shape[i]);
    return s + ")";
}

Param::Param(std::string n, std::vector<std::size_t> shape) : name(std::move(n)), value(shape), grad(shape) {}

void Param::zero_grad() { std::fill(grad.data.begin(), grad.data.end(), 0.0); }

}  // namespace wavemu::nn
