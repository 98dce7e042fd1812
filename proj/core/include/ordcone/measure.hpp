#pragma once

// Finitely supported probability measures on the PD cone with exact
// rational weights, uniform tuples and couplings.

#include <cstdint>
#include <functional>
#include <vector>

#include "ordcone/cone.hpp"
#include "ordcone/rational.hpp"

namespace ordcone {

inline constexpr std::size_t kMaxReplication = 4096;

/// sum_i w_i delta_{x_i}. Weights are positive and sum to exactly one;
/// coinciding points (same_point at eig_tol) are merged on construction,
/// keeping the position of the first occurrence.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<PDMatrix> points, std::vector<Rational> weights,
                  const Tolerances& tol = {});

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return points_.front().dim(); }
  const std::vector<PDMatrix>& points() const noexcept { return points_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  const PDMatrix& point(std::size_t i) const { return points_.at(i); }
  const Rational& weight(std::size_t i) const { return weights_.at(i); }

  /// Index of the support point coinciding with x, or size() if none.
  std::size_t find(const SymMatrix& x, const Tolerances& tol = {}) const;

  /// lcm of all weight denominators.
  std::uint64_t common_denominator() const;
  bool is_dyadic() const noexcept;

 private:
  std::vector<PDMatrix> points_;
  std::vector<Rational> weights_;
};

/// Same support (up to same_point) carrying identical weights.
bool same_measure(const DiscreteMeasure& a, const DiscreteMeasure& b, const Tolerances& tol = {});

/// A nonempty tuple of cone points; repetitions allowed.
class UniformTuple {
 public:
  explicit UniformTuple(std::vector<PDMatrix> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t dim() const noexcept { return entries_.front().dim(); }
  const std::vector<PDMatrix>& entries() const noexcept { return entries_; }
  const PDMatrix& operator[](std::size_t k) const { return entries_.at(k); }

  /// Block replication: the tuple concatenated with itself k times.
  UniformTuple replicated(std::size_t k) const;

 private:
  std::vector<PDMatrix> entries_;
};

struct Arc {
  std::size_t i = 0;  // left support index
  std::size_t j = 0;  // right support index
  Rational w;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Joint measure on left x right support pairs with exact marginals.
class Coupling {
 public:
  /// Arcs are sorted by (i, j) and duplicates merged. Throws InvalidArgument
  /// unless row sums equal left weights and column sums equal right weights.
  Coupling(DiscreteMeasure left, DiscreteMeasure right, std::vector<Arc> arcs);

  const DiscreteMeasure& left() const noexcept { return left_; }
  const DiscreteMeasure& right() const noexcept { return right_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

 private:
  DiscreteMeasure left_;
  DiscreteMeasure right_;
  std::vector<Arc> arcs_;
};

using PointMap = std::function<PDMatrix(const PDMatrix&)>;

DiscreteMeasure dirac(const PDMatrix& x);

/// Each distinct entry x receives weight multiplicity(x)/n.
DiscreteMeasure uniform_of_tuple(const UniformTuple& t, const Tolerances& tol = {});

/// The minimal tuple inducing m: N = lcm of the weight denominators, support
/// points in lexicographic order, each repeated N * weight times. Throws
/// CapacityError when N > 4096.
UniformTuple replicate_to_uniform(const DiscreteMeasure& m);

/// f_*(m). Images that coincide are merged.
DiscreteMeasure push_forward(const PointMap& f, const DiscreteMeasure& m, const Tolerances& tol = {});

/// (1 - t) m1 + t m2 for t in [0, 1].
DiscreteMeasure mixture(const Rational& t, const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                        const Tolerances& tol = {});

Coupling product_coupling(const DiscreteMeasure& m1, const DiscreteMeasure& m2);

}  // namespace ordcone
