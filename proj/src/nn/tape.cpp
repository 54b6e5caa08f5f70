#include "wavemu/nn/tape.hpp"

#include <cmath>
#include <string>

#include "wavemu/error.hpp"

namespace wavemu::nn {

Var Tape::constant(Tensor t) { return push(std::move(t), nullptr); }

Var Tape::param(Param& p, bool frozen) {
    Var v = push(p.value, nullptr);
    nodes_[v.id].param = &p;
    nodes_[v.id].frozen = frozen;
    return v;
}

Var Tape::push(Tensor value, Backward back) {
    nodes_.push_back(Node{std::move(value), Tensor{}, std::move(back), nullptr, false});
    return Var{nodes_.size() - 1};
}

void Tape::accumulate(std::size_t id, std::span<const double> g) {
    Node& n = nodes_[id];
    if (n.grad.data.empty()) n.grad = Tensor(n.value.shape);
    for (std::size_t i = 0; i < g.size(); ++i) n.grad.data[i] += g[i];
}

void Tape::backward(Var loss) {
    if (nodes_[loss.id].value.size() != 1) throw FramingError("backward: loss must have one element");
    accumulate(loss.id, std::vector<double>{1.0});
    for (std::size_t i = loss.id + 1; i-- > 0;) {
        Node& n = nodes_[i];
        if (n.grad.data.empty()) continue;
        if (n.back) n.back(*this, i);
        if (n.param && !n.frozen) {
            auto& pg = n.param->grad.data;
            for (std::size_t k = 0; k < pg.size(); ++k) {
                if (!std::isfinite(n.grad.data[k]))
                    throw NumericError("non-finite gradient for parameter " + n.param->name);
                pg[k] += n.grad.data[k];
            }
        }
    }
}

namespace {

void require_same(const Tensor& a, const Tensor& b, const char* op) {
    if (a.size() != b.size())
        throw FramingError(std::string(op) + ": size mismatch " + a.shape_text() + " vs " + b.shape_text());
}

}  // namespace

Var add(Tape& t, Var a, Var b) {
    const Tensor& x = t.value(a);
    const Tensor& y = t.value(b);
    require_same(x, y, "add");
    Tensor out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
    return t.push(std::move(out), [a, b](Tape& tp, std::size_t self) {
        tp.accumulate(a.id, tp.grad_of(self).data);
        tp.accumulate(b.id, tp.grad_of(self).data);
    });
}

Var sub(Tape& t, Var a, Var b) {
    const Tensor& x = t.value(a);
    const Tensor& y = t.value(b);
    require_same(x, y, "sub");
    Tensor out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= y[i];
    return t.push(std::move(out), [a, b](Tape& tp, std::size_t self) {
        const auto& g = tp.grad_of(self).data;
        tp.accumulate(a.id, g);
        std::vector<double> neg(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
        tp.accumulate(b.id, neg);
    });
}

Var scale(Tape& t, Var a, double s) {
    Tensor out = t.value(a);
    for (auto& v : out.data) v *= s;
    return t.push(std::move(out), [a, s](Tape& tp, std::size_t self) {
        std::vector<double> g = tp.grad_of(self).data;
        for (auto& v : g) v *= s;
        tp.accumulate(a.id, g);
    });
}

Var relu(Tape& t, Var a) {
    Tensor out = t.value(a);
    for (auto& v : out.data) v = v > 0.0 ? v : 0.0;
    return t.push(std::move(out), [a](Tape& tp, std::size_t self) {
        const auto& x = tp.value(a).data;
        std::vector<double> g = tp.grad_of(self).data;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (!(x[i] > 0.0)) g[i] = 0.0;
        tp.accumulate(a.id, g);
    });
}

Var tanh(Tape& t, Var a) {
    Tensor out = t.value(a);
    for (auto& v : out.data) v = std::tanh(v);
    return t.push(std::move(out), [a](Tape& tp, std::size_t self) {
        const auto& y = tp.value_of(self).data;
        std::vector<double> g = tp.grad_of(self).data;
        for (std::size_t i = 0; i < g.size(); ++i) g[i] *= 1.0 - y[i] * y[i];
        tp.accumulate(a.id, g);
    });
}

Var reshape(Tape& t, Var a, std::vector<std::size_t> shape) {
    Tensor out(std::move(shape), t.value(a).data);
    return t.push(std::move(out), [a](Tape& tp, std::size_t self) { tp.accumulate(a.id, tp.grad_of(self).data); });
}

Var gather(Tape& t, Var a, std::vector<std::ptrdiff_t> index, std::vector<std::size_t> shape) {
    if (element_count(shape) != index.size()) throw FramingError("gather: index count does not match shape");
    const Tensor& x = t.value(a);
    Tensor out(std::move(shape));
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (index[i] >= static_cast<std::ptrdiff_t>(x.size())) throw FramingError("gather: index out of range");
        out[i] = index[i] < 0 ? 0.0 : x[static_cast<std::size_t>(index[i])];
    }
    return t.push(std::move(out), [a, idx = std::move(index)](Tape& tp, std::size_t self) {
        const auto& g = tp.grad_of(self).data;
        std::vector<double> ga(tp.value(a).size(), 0.0);
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (idx[i] >= 0) ga[static_cast<std::size_t>(idx[i])] += g[i];
        tp.accumulate(a.id, ga);
    });
}

Var concat(Tape& t, Var a, Var b, std::vector<std::size_t> shape) {
    const Tensor& x = t.value(a);
    const Tensor& y = t.value(b);
    if (element_count(shape) != x.size() + y.size()) throw FramingError("concat: shape does not match inputs");
    Tensor out(std::move(shape));
    std::copy(x.data.begin(), x.data.end(), out.data.begin());
    std::copy(y.data.begin(), y.data.end(), out.data.begin() + static_cast<std::ptrdiff_t>(x.size()));
    const std::size_t na = x.size();
    return t.push(std::move(out), [a, b, na](Tape& tp, std::size_t self) {
        const auto& g = tp.grad_of(self).data;
        tp.accumulate(a.id, std::span(g).first(na));
        tp.accumulate(b.id, std::span(g).subspan(na));
    });
}

Var dense(Tape& t, Var x, Var w, Var b) {
    const Tensor& X = t.value(x);
    const Tensor& W = t.value(w);
    const Tensor& B = t.value(b);
    if (W.shape.size() != 2) throw FramingError("dense: weight must be (out, in)");
    const std::size_t out_n = W.dim(0), in_n = W.dim(1);
    if (B.size() != out_n || X.size() % in_n != 0 || X.size() == 0)
        throw FramingError("dense: input " + X.shape_text() + " incompatible with weight " + W.shape_text());
    const std::size_t rows = X.size() / in_n;
    std::vector<std::size_t> shape = X.shape;
    if (shape.empty()) shape = {in_n};
    shape.back() = out_n;
    if (element_count(shape) != rows * out_n) shape = {rows, out_n};
    Tensor out(shape);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t o = 0; o < out_n; ++o) {
            double acc = B[o];
            const double* xr = X.data.data() + r * in_n;
            const double* wr = W.data.data() + o * in_n;
            for (std::size_t i = 0; i < in_n; ++i) acc += wr[i] * xr[i];
            out[r * out_n + o] = acc;
        }
    return t.push(std::move(out), [x, w, b, rows, in_n, out_n](Tape& tp, std::size_t self) {
        const auto& g = tp.grad_of(self).data;
        const auto& X = tp.value(x).data;
        const auto& W = tp.value(w).data;
        std::vector<double> gx(rows * in_n, 0.0), gw(out_n * in_n, 0.0), gb(out_n, 0.0);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t o = 0; o < out_n; ++o) {
                const double go = g[r * out_n + o];
                if (go == 0.0) continue;
                gb[o] += go;
                for (std::size_t i = 0; i < in_n; ++i) {
                    gx[r * in_n + i] += go * W[o * in_n + i];
                    gw[o * in_n + i] += go * X[r * in_n + i];
                }
            }
        tp.accumulate(x.id, gx);
        tp.accumulate(w.id, gw);
        tp.accumulate(b.id, gb);
    });
}

Var conv2d(Tape& t, Var x, Var w, Var b) {
    const Tensor& X = t.value(x);
    const Tensor& W = t.value(w);
    if (X.shape.size() != 3 || W.shape.size() != 4 || W.dim(1) != X.dim(0) || t.value(b).size() != W.dim(0))
        throw FramingError("conv2d: input " + X.shape_text() + " incompatible with kernel " + W.shape_text());
    const std::size_t ci = X.dim(0), h = X.dim(1), wd = X.dim(2);
    const std::size_t co = W.dim(0), kh = W.dim(2), kw = W.dim(3);
    if (kh % 2 == 0 || kw % 2 == 0) throw FramingError("conv2d: kernel sizes must be odd");
    const auto ph = static_cast<std::ptrdiff_t>(kh / 2), pw = static_cast<std::ptrdiff_t>(kw / 2);
    const auto H = static_cast<std::ptrdiff_t>(h), WD = static_cast<std::ptrdiff_t>(wd);
    Tensor out({co, h, wd});
    const Tensor& B = t.value(b);
    for (std::size_t o = 0; o < co; ++o) {
        double* dst = out.data.data() + o * h * wd;
        std::fill(dst, dst + h * wd, B[o]);
        for (std::size_t c = 0; c < ci; ++c) {
            const double* src = X.data.data() + c * h * wd;
            for (std::size_t u = 0; u < kh; ++u)
                for (std::size_t v = 0; v < kw; ++v) {
                    const double k = W[((o * ci + c) * kh + u) * kw + v];
                    const std::ptrdiff_t du = static_cast<std::ptrdiff_t>(u) - ph;
                    const std::ptrdiff_t dv = static_cast<std::ptrdiff_t>(v) - pw;
                    for (std::ptrdiff_t r = std::max<std::ptrdiff_t>(0, -du); r < std::min(H, H - du); ++r) {
                        const double* srow = src + (r + du) * WD;
                        double* drow = dst + r * WD;
                        for (std::ptrdiff_t q = std::max<std::ptrdiff_t>(0, -dv); q < std::min(WD, WD - dv); ++q)
                            drow[q] += k * srow[q + dv];
                    }
                }
        }
    }
    return t.push(std::move(out), [=](Tape& tp, std::size_t self) {
        const auto& g = tp.grad_of(self).data;
        const auto& Xv = tp.value(x).data;
        const auto& Wv = tp.value(w).data;
        std::vector<double> gx(Xv.size(), 0.0), gw(Wv.size(), 0.0), gb(co, 0.0);
        for (std::size_t o = 0; o < co; ++o) {
            const double* go = g.data() + o * h * wd;
            for (std::size_t i = 0; i < h * wd; ++i) gb[o] += go[i];
            for (std::size_t c = 0; c < ci; ++c) {
                const double* src = Xv.data() + c * h * wd;
                double* gsrc = gx.data() + c * h * wd;
                for (std::size_t u = 0; u < kh; ++u)
                    for (std::size_t v = 0; v < kw; ++v) {
                        const std::size_t widx = ((o * ci + c) * kh + u) * kw + v;
                        const double k = Wv[widx];
                        const std::ptrdiff_t du = static_cast<std::ptrdiff_t>(u) - ph;
                        const std::ptrdiff_t dv = static_cast<std::ptrdiff_t>(v) - pw;
                        double acc = 0.0;
                        for (std::ptrdiff_t r = std::max<std::ptrdiff_t>(0, -du); r < std::min(H, H - du); ++r) {
                            const double* srow = src + (r + du) * WD;
                            double* gsrow = gsrc + (r + du) * WD;
                            const double* grow = go + r * WD;
                            for (std::ptrdiff_t q = std::max<std::ptrdiff_t>(0, -dv); q < std::min(WD, WD - dv); ++q) {
                                acc += grow[q] * srow[q + dv];
                                gsrow[q + dv] += k * grow[q];
                            }
                        }
                        gw[widx] += acc;
                    }
            }
        }
        tp.accumulate(x.id, gx);
        tp.accumulate(w.id, gw);
        tp.accumulate(b.id, gb);
    });
}

Var linear_map(Tape& t, Var x, LinearFn forward, LinearFn adjoint, std::vector<std::size_t> shape) {
    std::vector<double> y = forward(t.value(x).data);
    Tensor out(std::move(shape), std::move(y));
    return t.push(std::move(out), [x, adj = std::move(adjoint)](Tape& tp, std::size_t self) {
        tp.accumulate(x.id, adj(tp.grad_of(self).data));
    });
}

Var power_normalize(Tape& t, Var x, double mean_square) {
    const auto& X = t.value(x).data;
    double ss = 0.0;
    for (double v : X) ss += v * v;
    if (!(ss > 0.0)) throw NumericError("power_normalize: zero input");
    const double n = static_cast<double>(X.size());
    const double s = std::sqrt(mean_square * n / ss);
    Tensor out = t.value(x);
    for (auto& v : out.data) v *= s;
    return t.push(std::move(out), [x, s, ss](Tape& tp, std::size_t self) {
        const auto& g = tp.grad_of(self).data;
        const auto& X = tp.value(x).data;
        double xg = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) xg += X[i] * g[i];
        std::vector<double> gx(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) gx[i] = s * (g[i] - X[i] * xg / ss);
        tp.accumulate(x.id, gx);
    });
}

Var mse(Tape& t, Var a, Var b) {
    const Tensor& x = t.value(a);
    const Tensor& y = t.value(b);
    require_same(x, y, "mse");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += (x[i] - y[i]) * (x[i] - y[i]);
    const double n = static_cast<double>(x.size());
    return t.push(Tensor({1}, {acc / n}), [a, b, n](Tape& tp, std::size_t self) {
        const double g = tp.grad_of(self)[0];
        const auto& x = tp.value(a).data;
        const auto& y = tp.value(b).data;
        std::vector<double> ga(x.size()), gb(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            ga[i] = 2.0 * g * (x[i] - y[i]) / n;
            gb[i] = -ga[i];
        }
        tp.accumulate(a.id, ga);
        tp.accumulate(b.id, gb);
    });
}

}  // namespace wavemu::nn
