#include "wavemu/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "wavemu/error.hpp"
#include "wavemu/nn/layers.hpp"

namespace wavemu::nn {

namespace {

double eval(const std::function<Var(Tape&)>& loss) {
    Tape t;
    const double v = t.value(loss(t))[0];
    if (!std::isfinite(v)) throw NumericError("grad_check: non-finite loss");
    return v;
}

}  // namespace

GradCheckReport grad_check(const std::function<Var(Tape&)>& loss, const std::vector<Param*>& params,
                           const GradCheckOptions& opt) {
    zero_grads(params);
    {
        Tape t;
        t.backward(loss(t));
    }
    GradCheckReport rep;
    for (Param* p : params) {
        for (std::size_t i = 0; i < p->value.size(); ++i) {
            double analytic = p->grad[i];
            if (!std::isfinite(analytic)) throw NumericError("grad_check: non-finite gradient in " + p->name);
            if (opt.negate_analytic) analytic = -analytic;
            const double theta = p->value[i];
            const double h = opt.step * std::max(1.0, std::abs(theta));
            p->value[i] = theta + h;
            const double up = eval(loss);
            p->value[i] = theta - h;
            const double down = eval(loss);
            p->value[i] = theta;
            const double numeric = (up - down) / (2.0 * h);
            const double denom = std::max({std::abs(analytic), std::abs(numeric), opt.abs_floor});
            const double rel = std::abs(analytic - numeric) / denom;
            ++rep.checked;
            if (rel > rep.max_rel_error) {
                rep.max_rel_error = rel;
                rep.worst_param = p->name;
                rep.worst_index = i;
            }
        }
    }
    zero_grads(params);
    rep.passed = rep.max_rel_error < opt.tolerance;
    return rep;
}

}  // namespace wavemu::nn
