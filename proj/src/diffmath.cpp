// Copyright 2026 The kgqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgqa/diffmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kgqa/errors.hpp"

namespace kgqa::diff {

std::string to_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

std::size_t element_count(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

Tensor::Tensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(element_count(shape_), fill) {}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != element_count(shape_)) {
    throw DimensionError("tensor data size " + std::to_string(data_.size()) +
                         " does not match shape " + to_string(shape_));
  }
}

void glorot_uniform(Tensor& t, Random& rng) {
  const double fan_out = t.shape().size() >= 2 ? static_cast<double>(t.rows()) : 1.0;
  const double fan_in =
      t.shape().size() >= 2 ? static_cast<double>(t.cols()) : static_cast<double>(t.size());
  const double bound = std::sqrt(6.0 / (fan_in + fan_out));
  for (double& x : t.data()) x = rng.uniform(-bound, bound);
}

// ---------------------------------------------------------------------------
// Gradients

std::span<double> Gradients::accumulator(const Tensor& t) {
  auto [it, inserted] = index_.try_emplace(&t, entries_.size());
  if (inserted) entries_.emplace_back(&t, std::vector<double>(t.size(), 0.0));
  return entries_[it->second].second;
}

std::span<const double> Gradients::of(const Tensor& t) const {
  auto it = index_.find(&t);
  if (it == index_.end()) return {};
  return entries_[it->second].second;
}

double Gradients::squared_norm() const {
  double total = 0.0;
  for (const auto& [tensor, g] : entries_) {
    for (double x : g) total += x * x;
  }
  return total;
}

void Gradients::scale(double factor) {
  for (auto& [tensor, g] : entries_) {
    for (double& x : g) x *= factor;
  }
}

void Gradients::add(const Gradients& other, double factor) {
  for (const auto& [tensor, g] : other.entries_) {
    auto acc = accumulator(*tensor);
    for (std::size_t i = 0; i < g.size(); ++i) acc[i] += factor * g[i];
  }
}

// ---------------------------------------------------------------------------
// Var / Tape

std::span<const double> Var::value() const { return tape_->value(id_); }
const Shape& Var::shape() const { return tape_->shape(id_); }

double Var::scalar() const {
  const auto v = value();
  if (v.size() != 1) throw DimensionError("expected a scalar, got shape " + to_string(shape()));
  return v[0];
}

Var Tape::record(Shape shape, std::vector<double> value, Pullback pullback) {
  Node node;
  node.shape = std::move(shape);
  node.value = std::move(value);
  if (record_) node.pullback = std::move(pullback);
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

Var Tape::constant(std::vector<double> values, Shape shape) {
  if (values.size() != element_count(shape)) {
    throw DimensionError("constant of size " + std::to_string(values.size()) +
                         " does not match shape " + to_string(shape));
  }
  return record(std::move(shape), std::move(values), nullptr);
}

Var Tape::constant(std::vector<double> values) {
  Shape shape{values.size()};
  return constant(std::move(values), std::move(shape));
}

Var Tape::zeros(std::size_t n) { return constant(std::vector<double>(n, 0.0)); }

Var Tape::leaf(const Tensor& t) {
  const Tensor* p = &t;
  return record(t.shape(), std::vector<double>(t.data().begin(), t.data().end()),
                [p](Tape& tape, std::size_t self) {
                  auto g = tape.grad(self);
                  auto acc = tape.param_grad(*p);
                  for (std::size_t i = 0; i < g.size(); ++i) acc[i] += g[i];
                });
}

Gradients Tape::backward(Var loss) {
  if (!record_) throw ArgumentError("backward on a tape that does not record gradients");
  if (loss.tape_ != this) throw ArgumentError("loss belongs to a different tape");
  if (nodes_[loss.id_].value.size() != 1) {
    throw ArgumentError("backward needs a scalar loss, got shape " +
                        to_string(nodes_[loss.id_].shape));
  }
  Gradients grads;
  active_ = &grads;
  for (std::size_t i = 0; i <= loss.id_; ++i) nodes_[i].grad.assign(nodes_[i].value.size(), 0.0);
  nodes_[loss.id_].grad[0] = 1.0;
  for (std::size_t i = loss.id_ + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!node.pullback) continue;
    if (std::all_of(node.grad.begin(), node.grad.end(), [](double g) { return g == 0.0; })) {
      continue;
    }
    node.pullback(*this, i);
  }
  active_ = nullptr;
  return grads;
}

// ---------------------------------------------------------------------------
// Primitives

namespace {

Tape& same_tape(Var a, Var b, const char* op) {
  if (!a.valid() || !b.valid() || &a.tape() != &b.tape()) {
    throw ArgumentError(std::string(op) + ": operands are not on the same tape");
  }
  return a.tape();
}

void require_same_shape(Var a, Var b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + to_string(a.shape()) + " vs " +
                         to_string(b.shape()));
  }
}

std::vector<double> copy(std::span<const double> v) { return {v.begin(), v.end()}; }

template <typename Fwd, typename Deriv>
Var unary(Var a, Fwd fwd, Deriv deriv) {
  Tape& tape = a.tape();
  std::vector<double> out = copy(a.value());
  for (double& x : out) x = fwd(x);
  const std::size_t ia = a.id();
  return tape.record(a.shape(), std::move(out), [ia, deriv](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto x = t.value(ia);
    auto y = t.value(self);
    auto ga = t.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * deriv(x[i], y[i]);
  });
}

double stable_logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace

Var add(Var a, Var b) {
  Tape& tape = same_tape(a, b, "add");
  require_same_shape(a, b, "add");
  std::vector<double> out = copy(a.value());
  const auto bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
  const std::size_t ia = a.id(), ib = b.id();
  return tape.record(a.shape(), std::move(out), [ia, ib](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto ga = t.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    auto gb = t.grad(ib);
    for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i];
  });
}

Var sub(Var a, Var b) {
  Tape& tape = same_tape(a, b, "sub");
  require_same_shape(a, b, "sub");
  std::vector<double> out = copy(a.value());
  const auto bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= bv[i];
  const std::size_t ia = a.id(), ib = b.id();
  return tape.record(a.shape(), std::move(out), [ia, ib](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto ga = t.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    auto gb = t.grad(ib);
    for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
  });
}

Var mul(Var a, Var b) {
  Tape& tape = same_tape(a, b, "mul");
  require_same_shape(a, b, "mul");
  std::vector<double> out = copy(a.value());
  const auto bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  const std::size_t ia = a.id(), ib = b.id();
  return tape.record(a.shape(), std::move(out), [ia, ib](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto av = t.value(ia);
    auto bv = t.value(ib);
    auto ga = t.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv[i];
    auto gb = t.grad(ib);
    for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av[i];
  });
}

Var scale(Var a, double factor) {
  return unary(
      a, [factor](double x) { return x * factor; },
      [factor](double, double) { return factor; });
}

Var shift(Var a, double offset) {
  return unary(
      a, [offset](double x) { return x + offset; }, [](double, double) { return 1.0; });
}

Var tanh(Var a) {
  return unary(
      a, [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; });
}

Var logistic(Var a) {
  return unary(a, stable_logistic, [](double, double y) { return y * (1.0 - y); });
}

Var relu(Var a) {
  return unary(
      a, [](double x) { return x > 0.0 ? x : 0.0; },
      [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Var dot(Var a, Var b) {
  Tape& tape = same_tape(a, b, "dot");
  if (a.size() != b.size()) {
    throw DimensionError("dot: shape mismatch " + to_string(a.shape()) + " vs " +
                         to_string(b.shape()));
  }
  const auto av = a.value(), bv = b.value();
  double s = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
  const std::size_t ia = a.id(), ib = b.id();
  return tape.record({1}, {s}, [ia, ib](Tape& t, std::size_t self) {
    const double g = t.grad(self)[0];
    auto av = t.value(ia);
    auto bv = t.value(ib);
    auto ga = t.grad(ia);
    for (std::size_t i = 0; i < av.size(); ++i) ga[i] += g * bv[i];
    auto gb = t.grad(ib);
    for (std::size_t i = 0; i < av.size(); ++i) gb[i] += g * av[i];
  });
}

Var sum(Var a) {
  const auto av = a.value();
  const double s = std::accumulate(av.begin(), av.end(), 0.0);
  const std::size_t ia = a.id();
  return a.tape().record({1}, {s}, [ia](Tape& t, std::size_t self) {
    const double g = t.grad(self)[0];
    for (double& x : t.grad(ia)) x += g;
  });
}

Var sum(std::span<const Var> values) {
  if (values.empty()) throw ArgumentError("sum of an empty list");
  Tape& tape = values[0].tape();
  std::vector<double> out(values[0].size(), 0.0);
  std::vector<std::size_t> ids;
  for (const Var& v : values) {
    same_tape(values[0], v, "sum");
    require_same_shape(values[0], v, "sum");
    const auto vv = v.value();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += vv[i];
    ids.push_back(v.id());
  }
  return tape.record(values[0].shape(), std::move(out), [ids](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    for (std::size_t id : ids) {
      auto gi = t.grad(id);
      for (std::size_t i = 0; i < g.size(); ++i) gi[i] += g[i];
    }
  });
}

Var mean(std::span<const Var> values) {
  return scale(sum(values), 1.0 / static_cast<double>(values.size()));
}

Var matvec(const Tensor& w, Var x) {
  if (w.shape().size() != 2 || w.cols() != x.size()) {
    throw DimensionError("matvec: matrix " + to_string(w.shape()) + " vs vector " +
                         to_string(x.shape()));
  }
  const std::size_t rows = w.rows(), cols = w.cols();
  const auto wd = w.data();
  const auto xv = x.value();
  std::vector<double> out(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* wr = wd.data() + r * cols;
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += wr[c] * xv[c];
    out[r] = s;
  }
  const Tensor* pw = &w;
  const std::size_t ix = x.id();
  return x.tape().record({rows}, std::move(out), [pw, ix, rows, cols](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto xv = t.value(ix);
    auto gx = t.grad(ix);
    auto gw = t.param_grad(*pw);
    const auto wd = pw->data();
    for (std::size_t r = 0; r < rows; ++r) {
      const double gr = g[r];
      if (gr == 0.0) continue;
      double* gwr = gw.data() + r * cols;
      const double* wr = wd.data() + r * cols;
      for (std::size_t c = 0; c < cols; ++c) {
        gwr[c] += gr * xv[c];
        gx[c] += gr * wr[c];
      }
    }
  });
}

Var affine(const Tensor& w, const Tensor& b, Var x) {
  if (b.size() != w.rows()) {
    throw DimensionError("affine: bias " + to_string(b.shape()) + " vs matrix " +
                         to_string(w.shape()));
  }
  Var y = matvec(w, x);
  return add(y, y.tape().leaf(b));
}


Var row(Tape& tape, const Tensor& matrix, std::size_t i) {
  if (matrix.shape().size() != 2 || i >= matrix.rows()) {
    throw DimensionError("row " + std::to_string(i) + " of matrix " + to_string(matrix.shape()));
  }
  const std::size_t cols = matrix.cols();
  const auto d = matrix.data();
  std::vector<double> out(d.begin() + i * cols, d.begin() + (i + 1) * cols);
  const Tensor* pm = &matrix;
  return tape.record({cols}, std::move(out), [pm, i, cols](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto acc = t.param_grad(*pm);
    for (std::size_t c = 0; c < cols; ++c) acc[i * cols + c] += g[c];
  });
}

Var concat(std::span<const Var> parts) {
  if (parts.empty()) throw ArgumentError("concat of an empty list");
  Tape& tape = parts[0].tape();
  std::vector<double> out;
  std::vector<std::pair<std::size_t, std::size_t>> pieces;  // (id, size)
  for (const Var& p : parts) {
    same_tape(parts[0], p, "concat");
    const auto v = p.value();
    out.insert(out.end(), v.begin(), v.end());
    pieces.emplace_back(p.id(), v.size());
  }
  const std::size_t n = out.size();
  return tape.record({n}, std::move(out), [pieces](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    std::size_t offset = 0;
    for (const auto& [id, size] : pieces) {
      auto gi = t.grad(id);
      for (std::size_t i = 0; i < size; ++i) gi[i] += g[offset + i];
      offset += size;
    }
  });
}

Var slice(Var a, std::size_t offset, std::size_t length) {
  const auto v = a.value();
  if (offset + length > v.size() || length == 0) {
    throw DimensionError("slice [" + std::to_string(offset) + ", +" + std::to_string(length) +
                         ") of shape " + to_string(a.shape()));
  }
  std::vector<double> out(v.begin() + offset, v.begin() + offset + length);
  const std::size_t ia = a.id();
  return a.tape().record({length}, std::move(out), [ia, offset](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto ga = t.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[offset + i] += g[i];
  });
}

Var stack(std::span<const Var> rows) {
  if (rows.empty()) throw ArgumentError("stack of an empty list");
  const std::size_t d = rows[0].size();
  for (const Var& r : rows) {
    same_tape(rows[0], r, "stack");
    if (r.size() != d) {
      throw DimensionError("stack: shape mismatch " + to_string(rows[0].shape()) + " vs " +
                           to_string(r.shape()));
    }
  }
  Var flat = concat(rows);
  // Reshape in place: same storage, matrix shape.
  std::vector<double> out = copy(flat.value());
  const std::size_t id = flat.id();
  return flat.tape().record({rows.size(), d}, std::move(out), [id](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto gi = t.grad(id);
    for (std::size_t i = 0; i < g.size(); ++i) gi[i] += g[i];
  });
}

std::vector<Var> unstack(Var matrix) {
  const Shape& s = matrix.shape();
  if (s.size() != 2) throw DimensionError("unstack needs a matrix, got " + to_string(s));
  const std::size_t steps = s[0], d = s[1];
  std::vector<Var> out;
  out.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) out.push_back(slice(matrix, t * d, d));
  return out;
}

Var mean_over_time(Var matrix) {
  const Shape s = matrix.shape();
  if (s.size() != 2 || s[0] == 0) {
    throw DimensionError("mean_over_time needs a {T, d} matrix, got " + to_string(s));
  }
  const std::size_t steps = s[0], d = s[1];
  const auto v = matrix.value();
  std::vector<double> out(d, 0.0);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t j = 0; j < d; ++j) out[j] += v[t * d + j];
  }
  for (double& x : out) x /= static_cast<double>(steps);
  const std::size_t id = matrix.id();
  return matrix.tape().record({d}, std::move(out), [id, steps, d](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto gm = t.grad(id);
    const double inv = 1.0 / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
      for (std::size_t j = 0; j < d; ++j) gm[k * d + j] += g[j] * inv;
    }
  });
}

Var max_over_time(Var matrix) {
  const Shape s = matrix.shape();
  if (s.size() != 2 || s[0] == 0) {
    throw DimensionError("max_over_time needs a {T, d} matrix, got " + to_string(s));
  }
  const std::size_t steps = s[0], d = s[1];
  const auto v = matrix.value();
  std::vector<double> out(v.begin(), v.begin() + d);
  std::vector<std::size_t> arg(d, 0);
  for (std::size_t t = 1; t < steps; ++t) {
    for (std::size_t j = 0; j < d; ++j) {
      if (v[t * d + j] > out[j]) {
        out[j] = v[t * d + j];
        arg[j] = t;
      }
    }
  }
  const std::size_t id = matrix.id();
  return matrix.tape().record({d}, std::move(out), [id, arg, d](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto gm = t.grad(id);
    for (std::size_t j = 0; j < d; ++j) gm[arg[j] * d + j] += g[j];
  });
}

Var softmax(Var a) {
  const auto v = a.value();
  if (v.empty()) throw DimensionError("softmax of an empty vector");
  const double top = *std::max_element(v.begin(), v.end());
  std::vector<double> out(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) total += out[i] = std::exp(v[i] - top);
  for (double& x : out) x /= total;
  const std::size_t ia = a.id();
  return a.tape().record(a.shape(), std::move(out), [ia](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto y = t.value(self);
    double gy = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) gy += g[i] * y[i];
    auto ga = t.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += y[i] * (g[i] - gy);
  });
}

Var weighted_sum(Var weights, std::span<const Var> vectors) {
  if (vectors.empty() || weights.size() != vectors.size()) {
    throw DimensionError("weighted_sum: " + std::to_string(weights.size()) + " weights for " +
                         std::to_string(vectors.size()) + " vectors");
  }
  const std::size_t d = vectors[0].size();
  std::vector<std::size_t> ids;
  std::vector<double> out(d, 0.0);
  const auto w = weights.value();
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    same_tape(weights, vectors[k], "weighted_sum");
    if (vectors[k].size() != d) {
      throw DimensionError("weighted_sum: shape mismatch " + to_string(vectors[0].shape()) +
                           " vs " + to_string(vectors[k].shape()));
    }
    const auto v = vectors[k].value();
    for (std::size_t j = 0; j < d; ++j) out[j] += w[k] * v[j];
    ids.push_back(vectors[k].id());
  }
  const std::size_t iw = weights.id();
  return weights.tape().record({d}, std::move(out), [iw, ids](Tape& t, std::size_t self) {
    auto g = t.grad(self);
    auto w = t.value(iw);
    auto gw = t.grad(iw);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      auto v = t.value(ids[k]);
      auto gv = t.grad(ids[k]);
      double s = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        s += g[j] * v[j];
        gv[j] += w[k] * g[j];
      }
      gw[k] += s;
    }
  });
}

Var binary_cross_entropy(Var score, double target) {
  const double s = score.scalar();
  constexpr double kClamp = 1e-12;
  const double lo = -std::log1p(-kClamp);  // p clamped at 1 - 1e-12
  const double hi = -std::log(kClamp);     // p clamped at 1e-12
  // -log p = softplus(-s), -log(1 - p) = softplus(s).
  const double pos = std::clamp(softplus(-s), lo, hi);
  const double neg = std::clamp(softplus(s), lo, hi);
  const double loss = target * pos + (1.0 - target) * neg;
  const double p = stable_logistic(s);
  // Inside the clamp the derivative is -t (1 - p) + (1 - t) p.
  const double dpos = (softplus(-s) > lo && softplus(-s) < hi) ? -(1.0 - p) : 0.0;
  const double dneg = (softplus(s) > lo && softplus(s) < hi) ? p : 0.0;
  const double deriv = target * dpos + (1.0 - target) * dneg;
  const std::size_t is = score.id();
  return score.tape().record({1}, {loss}, [is, deriv](Tape& t, std::size_t self) {
    t.grad(is)[0] += t.grad(self)[0] * deriv;
  });
}

Var cross_entropy(Var logits, std::size_t label) {
  const auto v = logits.value();
  if (label >= v.size()) {
    throw DimensionError("cross_entropy: label " + std::to_string(label) + " for shape " +
                         to_string(logits.shape()));
  }
  const double top = *std::max_element(v.begin(), v.end());
  std::vector<double> p(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) total += p[i] = std::exp(v[i] - top);
  for (double& x : p) x /= total;
  const double loss = -(v[label] - top - std::log(total));
  const std::size_t il = logits.id();
  return logits.tape().record({1}, {loss}, [il, p, label](Tape& t, std::size_t self) {
    const double g = t.grad(self)[0];
    auto gl = t.grad(il);
    for (std::size_t i = 0; i < p.size(); ++i) gl[i] += g * (p[i] - (i == label ? 1.0 : 0.0));
  });
}

Var lstm_cell(const Tensor& w, const Tensor& b, Var x, Var state) {
  same_tape(x, state, "lstm_cell");
  const std::size_t hidden = state.size() / 2;
  const std::size_t in = x.size();
  if (state.size() != 2 * hidden || w.shape().size() != 2 || w.rows() != 4 * hidden ||
      w.cols() != in + hidden || b.size() != 4 * hidden) {
    throw DimensionError("lstm_cell: weights " + to_string(w.shape()) + ", bias " +
                         to_string(b.shape()) + ", input " + to_string(x.shape()) + ", state " +
                         to_string(state.shape()));
  }
  const auto xv = x.value();
  const auto sv = state.value();
  std::vector<double> z(4 * hidden);
  const auto wd = w.data();
  const auto bd = b.data();
  const std::size_t cols = in + hidden;
  for (std::size_t r = 0; r < 4 * hidden; ++r) {
    const double* wr = wd.data() + r * cols;
    double s = bd[r];
    for (std::size_t c = 0; c < in; ++c) s += wr[c] * xv[c];
    for (std::size_t c = 0; c < hidden; ++c) s += wr[in + c] * sv[c];
    z[r] = s;
  }
  // gates = [i, f, g, o] after their nonlinearities.
  std::vector<double> gates(4 * hidden);
  std::vector<double> out(2 * hidden);
  for (std::size_t k = 0; k < hidden; ++k) {
    const double i = stable_logistic(z[k]);
    const double f = stable_logistic(z[hidden + k]);
    const double g = std::tanh(z[2 * hidden + k]);
    const double o = stable_logistic(z[3 * hidden + k]);
    gates[k] = i;
    gates[hidden + k] = f;
    gates[2 * hidden + k] = g;
    gates[3 * hidden + k] = o;
    const double c = f * sv[hidden + k] + i * g;
    out[hidden + k] = c;
    out[k] = o * std::tanh(c);
  }
  const Tensor* pw = &w;
  const Tensor* pb = &b;
  const std::size_t ix = x.id(), is = state.id();
  return x.tape().record(
      {2 * hidden}, std::move(out),
      [pw, pb, ix, is, hidden, in, gates = std::move(gates)](Tape& t, std::size_t self) {
        auto g_out = t.grad(self);
        auto y = t.value(self);
        auto xv = t.value(ix);
        auto sv = t.value(is);
        std::vector<double> dz(4 * hidden);
        for (std::size_t k = 0; k < hidden; ++k) {
          const double i = gates[k], f = gates[hidden + k], g = gates[2 * hidden + k],
                       o = gates[3 * hidden + k];
          const double c = y[hidden + k];
          const double tc = std::tanh(c);
          const double dh = g_out[k];
          const double dc = g_out[hidden + k] + dh * o * (1.0 - tc * tc);
          dz[k] = dc * g * i * (1.0 - i);
          dz[hidden + k] = dc * sv[hidden + k] * f * (1.0 - f);
          dz[2 * hidden + k] = dc * i * (1.0 - g * g);
          dz[3 * hidden + k] = dh * tc * o * (1.0 - o);
          t.grad(is)[hidden + k] += dc * f;
        }
        const std::size_t cols = in + hidden;
        auto gw = t.param_grad(*pw);
        auto gb = t.param_grad(*pb);
        auto gx = t.grad(ix);
        auto gs = t.grad(is);
        const auto wd = pw->data();
        for (std::size_t r = 0; r < 4 * hidden; ++r) {
          const double d = dz[r];
          gb[r] += d;
          if (d == 0.0) continue;
          double* gwr = gw.data() + r * cols;
          const double* wr = wd.data() + r * cols;
          for (std::size_t c = 0; c < in; ++c) {
            gwr[c] += d * xv[c];
            gx[c] += d * wr[c];
          }
          for (std::size_t c = 0; c < hidden; ++c) {
            gwr[in + c] += d * sv[c];
            gs[c] += d * wr[in + c];
          }
        }
      });
}

Var conv1d(const Tensor& w, const Tensor& b, Var sequence, std::size_t width) {
  const Shape s = sequence.shape();
  if (s.size() != 2) throw DimensionError("conv1d needs a {T, d} sequence, got " + to_string(s));
  const std::size_t steps = s[0], d = s[1];
  if (width == 0 || steps < width) {
    throw ArgumentError("conv1d: sequence of length " + std::to_string(steps) +
                        " is shorter than filter width " + std::to_string(width));
  }
  const std::size_t filters = w.rows();
  if (w.shape().size() != 2 || w.cols() != width * d || b.size() != filters) {
    throw DimensionError("conv1d: filters " + to_string(w.shape()) + ", bias " +
                         to_string(b.shape()) + ", sequence " + to_string(s) + ", width " +
                         std::to_string(width));
  }
  const std::size_t positions = steps - width + 1;
  const std::size_t span = width * d;
  const auto x = sequence.value();
  const auto wd = w.data();
  const auto bd = b.data();
  std::vector<double> out(positions * filters);
  for (std::size_t p = 0; p < positions; ++p) {
    const double* window = x.data() + p * d;
    for (std::size_t f = 0; f < filters; ++f) {
      const double* wf = wd.data() + f * span;
      double acc = bd[f];
      for (std::size_t k = 0; k < span; ++k) acc += wf[k] * window[k];
      out[p * filters + f] = acc;
    }
  }
  const Tensor* pw = &w;
  const Tensor* pb = &b;
  const std::size_t ix = sequence.id();
  return sequence.tape().record(
      {positions, filters}, std::move(out),
      [pw, pb, ix, positions, filters, span, d](Tape& t, std::size_t self) {
        auto g = t.grad(self);
        auto x = t.value(ix);
        auto gx = t.grad(ix);
        auto gw = t.param_grad(*pw);
        auto gb = t.param_grad(*pb);
        const auto wd = pw->data();
        for (std::size_t p = 0; p < positions; ++p) {
          const double* window = x.data() + p * d;
          double* gwindow = gx.data() + p * d;
          for (std::size_t f = 0; f < filters; ++f) {
            const double gf = g[p * filters + f];
            if (gf == 0.0) continue;
            gb[f] += gf;
            double* gwf = gw.data() + f * span;
            const double* wf = wd.data() + f * span;
            for (std::size_t k = 0; k < span; ++k) {
              gwf[k] += gf * window[k];
              gwindow[k] += gf * wf[k];
            }
          }
        }
      });
}

// ---------------------------------------------------------------------------
// Optimization

double clip_gradients(Gradients& grads, double max_norm) {
  if (!(max_norm > 0.0)) throw ArgumentError("clip norm must be positive");
  const double norm = std::sqrt(grads.squared_norm());
  if (norm > max_norm) grads.scale(max_norm / norm);
  return norm;
}

void adam_step(std::span<Tensor* const> params, const Gradients& grads, AdamState& state,
               double lr) {
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);
  for (Tensor* p : params) {
    auto& mom = state.moments[p];
    if (mom.m.size() != p->size()) {
      mom.m.assign(p->size(), 0.0);
      mom.v.assign(p->size(), 0.0);
    }
    const auto g = grads.of(*p);
    auto data = p->data();
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double gi = g.empty() ? 0.0 : g[i];
      mom.m[i] = state.beta1 * mom.m[i] + (1.0 - state.beta1) * gi;
      mom.v[i] = state.beta2 * mom.v[i] + (1.0 - state.beta2) * gi * gi;
      const double m_hat = mom.m[i] / correction1;
      const double v_hat = mom.v[i] / correction2;
      data[i] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
}

FdResult fd_check(const std::function<Var(Tape&)>& loss, std::span<Tensor* const> params,
                  double h) {
  Gradients analytic;
  {
    Tape tape;
    analytic = tape.backward(loss(tape));
  }
  auto evaluate = [&] {
    Tape tape(false);
    return loss(tape).scalar();
  };
  FdResult result;
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    Tensor& p = *params[pi];
    const auto a = analytic.of(p);
    for (std::size_t c = 0; c < p.size(); ++c) {
      const double saved = p[c];
      p[c] = saved + h;
      const double up = evaluate();
      p[c] = saved - h;
      const double down = evaluate();
      p[c] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double an = a.empty() ? 0.0 : a[c];
      const double rel = std::abs(an - numeric) / std::max(1e-8, std::abs(an) + std::abs(numeric));
      if (rel > result.max_relative_error) {
        result = {rel, pi, c, an, numeric};
      }
    }
  }
  return result;
}

}  // namespace kgqa::diff
