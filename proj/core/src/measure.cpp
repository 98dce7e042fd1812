#include "ordcone/measure.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "ordcone/errors.hpp"

namespace ordcone {

DiscreteMeasure::DiscreteMeasure(std::vector<PDMatrix> points, std::vector<Rational> weights,
                                 const Tolerances& tol) {
  if (points.empty()) throw InvalidArgument("DiscreteMeasure: empty support");
  if (points.size() != weights.size())
    throw InvalidArgument("DiscreteMeasure: points and weights differ in length");
  const std::size_t dim = points.front().dim();
  Rational total;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].dim() != dim) throw InvalidArgument("DiscreteMeasure: mixed dimensions in support");
    if (weights[k].is_zero()) throw InvalidArgument("DiscreteMeasure: zero weight at index " + std::to_string(k));
    total += weights[k];
    const std::size_t at = find(points[k], tol);
    if (at < points_.size()) {
      weights_[at] += weights[k];
    } else {
      points_.push_back(std::move(points[k]));
      weights_.push_back(weights[k]);
    }
  }
  if (total != Rational(1))
    throw InvalidArgument("DiscreteMeasure: weights sum to " + total.to_string() + ", not 1");
}

std::size_t DiscreteMeasure::find(const SymMatrix& x, const Tolerances& tol) const {
  for (std::size_t k = 0; k < points_.size(); ++k)
    if (same_point(points_[k], x, tol)) return k;
  return points_.size();
}

std::uint64_t DiscreteMeasure::common_denominator() const {
  std::uint64_t l = 1;
  for (const auto& w : weights_) l = checked_lcm(l, w.den());
  return l;
}

bool DiscreteMeasure::is_dyadic() const noexcept {
  return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w.is_dyadic(); });
}

bool same_measure(const DiscreteMeasure& a, const DiscreteMeasure& b, const Tolerances& tol) {
  if (a.size() != b.size() || a.dim() != b.dim()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::size_t at = b.find(a.point(k), tol);
    if (at == b.size() || b.weight(at) != a.weight(k)) return false;
  }
  return true;
}

UniformTuple::UniformTuple(std::vector<PDMatrix> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("UniformTuple: empty tuple");
  for (const auto& e : entries_)
    if (e.dim() != entries_.front().dim()) throw InvalidArgument("UniformTuple: mixed dimensions");
}

UniformTuple UniformTuple::replicated(std::size_t k) const {
  if (k == 0) throw InvalidArgument("UniformTuple::replicated: k must be positive");
  std::vector<PDMatrix> out;
  out.reserve(entries_.size() * k);
  for (std::size_t r = 0; r < k; ++r) out.insert(out.end(), entries_.begin(), entries_.end());
  return UniformTuple(std::move(out));
}

Coupling::Coupling(DiscreteMeasure left, DiscreteMeasure right, std::vector<Arc> arcs)
    : left_(std::move(left)), right_(std::move(right)) {
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  std::vector<Rational> rows(left_.size()), cols(right_.size());
  for (auto& arc : arcs) {
    if (arc.i >= left_.size() || arc.j >= right_.size())
      throw InvalidArgument("Coupling: arc index out of range");
    if (arc.w.is_zero()) continue;
    rows[arc.i] += arc.w;
    cols[arc.j] += arc.w;
    if (!arcs_.empty() && arcs_.back().i == arc.i && arcs_.back().j == arc.j)
      arcs_.back().w += arc.w;
    else
      arcs_.push_back(arc);
  }
  if (rows != left_.weights()) throw InvalidArgument("Coupling: row sums do not reproduce the left marginal");
  if (cols != right_.weights()) throw InvalidArgument("Coupling: column sums do not reproduce the right marginal");
}

DiscreteMeasure dirac(const PDMatrix& x) { return DiscreteMeasure({x}, {Rational(1)}); }

DiscreteMeasure uniform_of_tuple(const UniformTuple& t, const Tolerances& tol) {
  const Rational each(1, t.size());
  return DiscreteMeasure(t.entries(), std::vector<Rational>(t.size(), each), tol);
}

UniformTuple replicate_to_uniform(const DiscreteMeasure& m) {
  std::uint64_t n = 1;
  for (const auto& w : m.weights()) {
    n = checked_lcm(n, w.den());
    if (n > kMaxReplication)
      throw CapacityError("replicate_to_uniform: common denominator exceeds the tuple cap of 4096");
  }
  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(m.point(a), m.point(b)); });
  std::vector<PDMatrix> entries;
  entries.reserve(n);
  for (std::size_t k : order) {
    const std::uint64_t copies = scaled_integer(m.weight(k), n);
    for (std::uint64_t c = 0; c < copies; ++c) entries.push_back(m.point(k));
  }
  return UniformTuple(std::move(entries));
}

DiscreteMeasure push_forward(const PointMap& f, const DiscreteMeasure& m, const Tolerances& tol) {
  std::vector<PDMatrix> images;
  images.reserve(m.size());
  for (const auto& x : m.points()) {
    PDMatrix y = f(x);
    if (y.dim() != m.dim()) throw InvalidArgument("push_forward: map changed the dimension");
    images.push_back(std::move(y));
  }
  return DiscreteMeasure(std::move(images), m.weights(), tol);
}

DiscreteMeasure mixture(const Rational& t, const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                        const Tolerances& tol) {
  if (t > Rational(1)) throw InvalidArgument("mixture: t must lie in [0, 1]");
  if (m1.dim() != m2.dim()) throw InvalidArgument("mixture: dimension mismatch");
  const Rational s = Rational(1) - t;
  std::vector<PDMatrix> points;
  std::vector<Rational> weights;
  if (!s.is_zero())
    for (std::size_t k = 0; k < m1.size(); ++k) {
      points.push_back(m1.point(k));
      weights.push_back(s * m1.weight(k));
    }
  if (!t.is_zero())
    for (std::size_t k = 0; k < m2.size(); ++k) {
      points.push_back(m2.point(k));
      weights.push_back(t * m2.weight(k));
    }
  return DiscreteMeasure(std::move(points), std::move(weights), tol);
}

Coupling product_coupling(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
  std::vector<Arc> arcs;
  arcs.reserve(m1.size() * m2.size());
  for (std::size_t i = 0; i < m1.size(); ++i)
    for (std::size_t j = 0; j < m2.size(); ++j) arcs.push_back({i, j, m1.weight(i) * m2.weight(j)});
  return Coupling(m1, m2, std::move(arcs));
}

}  // namespace ordcone
