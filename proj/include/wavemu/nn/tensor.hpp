#pragma once
#include <cstddef>
#include <string>
#include <vector>

namespace wavemu::nn {

/// Dense row-major array of doubles.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> dims, double fill = 0.0);
    Tensor(std::vector<std::size_t> dims, std::vector<double> values);

    std::size_t size() const { return data.size(); }
    std::size_t dim(std::size_t i) const { return shape.at(i); }
    double& operator[](std::size_t i) { return data[i]; }
    double operator[](std::size_t i) const { return data[i]; }
    std::string shape_text() const;
};

std::size_t element_count(const std::vector<std::size_t>& shape);

/// Trainable tensor with its gradient accumulator.
struct Param {
    std::string name;
    Tensor value;
    Tensor grad;

    Param() = default;
    Param(std::string n, std::vector<std::size_t> shape);
    void zero_grad();
};

}  // namespace wavemu::nn
