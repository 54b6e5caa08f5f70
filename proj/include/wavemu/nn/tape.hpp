#pragma once
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "wavemu/nn/tensor.hpp"

namespace wavemu::nn {

/// Handle to a value recorded on a Tape.
struct Var {
    std::size_t id = std::numeric_limits<std::size_t>::max();
};

/// Reverse-mode autodiff over a linear recording of operations.
class Tape {
public:
    using Backward = std::function<void(Tape&, std::size_t self)>;

    Var constant(Tensor t);
    /// Leaf bound to a Param; backward() adds into p.grad unless frozen.
    Var param(Param& p, bool frozen = false);
    /// Records a computed value. `back` receives the node index and must
    /// route grad(self) into the inputs via accumulate().
    Var push(Tensor value, Backward back);

    const Tensor& value(Var v) const { return nodes_[v.id].value; }
    /// Gradient buffer of a node (empty until backward touches it).
    const Tensor& grad(Var v) const { return nodes_[v.id].grad; }
    const Tensor& grad_of(std::size_t id) const { return nodes_[id].grad; }
    const Tensor& value_of(std::size_t id) const { return nodes_[id].value; }
    /// Adds `g` into the gradient of node `id` (allocating on first use).
    void accumulate(std::size_t id, std::span<const double> g);

    /// Seeds d(loss)/d(loss) = 1 for a single-element `loss`.
    void backward(Var loss);
    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        Tensor value;
        Tensor grad;
        Backward back;
        Param* param = nullptr;
        bool frozen = false;
    };
    std::vector<Node> nodes_;
};

// Elementwise and structural ops.
Var add(Tape& t, Var a, Var b);
Var sub(Tape& t, Var a, Var b);
Var scale(Tape& t, Var a, double s);
Var relu(Tape& t, Var a);
Var tanh(Tape& t, Var a);
Var reshape(Tape& t, Var a, std::vector<std::size_t> shape);
/// out[i] = a[index[i]], or 0 where index[i] < 0.
Var gather(Tape& t, Var a, std::vector<std::ptrdiff_t> index, std::vector<std::size_t> shape);
/// Flat concatenation; for (C,H,W) tensors with equal H, W this stacks channels.
Var concat(Tape& t, Var a, Var b, std::vector<std::size_t> shape);

/// y = x W^T + b over the last dimension of x. W is (out, in).
Var dense(Tape& t, Var x, Var w, Var b);
/// 'Same' zero-padded 2D convolution (cross-correlation). x is (C, H, W),
/// w is (Co, C, kh, kw) with odd kh, kw, b is (Co).
Var conv2d(Tape& t, Var x, Var w, Var b);

/// Fixed linear operator with its adjoint.
using LinearFn = std::function<std::vector<double>(std::span<const double>)>;
Var linear_map(Tape& t, Var x, LinearFn forward, LinearFn adjoint, std::vector<std::size_t> shape);

/// Scales x so its mean square equals `mean_square`.
Var power_normalize(Tape& t, Var x, double mean_square);

/// Mean of squared differences, a single-element result.
Var mse(Tape& t, Var a, Var b);

}  // namespace wavemu::nn
