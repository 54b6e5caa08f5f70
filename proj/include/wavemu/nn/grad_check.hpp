#pragma once
#include <functional>
#include <string>
#include <vector>

#include "wavemu/nn/tape.hpp"

namespace wavemu::nn {

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::string worst_param;
    std::size_t worst_index = 0;
    std::size_t checked = 0;
    bool passed = false;
};

struct GradCheckOptions {
    double tolerance = 1e-4;
    /// Base step; the actual step is step * max(1, |theta|).
    double step = 1e-5;
    /// Entries where both gradients are below this are compared absolutely.
    double abs_floor = 1e-8;
    /// Negates the analytic gradient (sanity check of the checker itself).
    bool negate_analytic = false;
};

/// `loss` builds a scalar on a fresh tape from the current parameter values.
/// Every entry of every param is compared against a central difference.
/// Throws NumericError on non-finite values.
GradCheckReport grad_check(const std::function<Var(Tape&)>& loss, const std::vector<Param*>& params,
                           const GradCheckOptions& opt = {});

}  // namespace wavemu::nn
