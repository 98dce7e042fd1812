#pragma once

// Symmetric matrices, the open cone of positive-definite matrices, the
// Loewner order and the Thompson part metric.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ordcone {

inline constexpr std::size_t kMaxDim = 16;

struct Tolerances {
  double pd_tol = 1e-9;     // relative smallest-eigenvalue threshold for PD
  double eig_tol = 1e-12;   // Jacobi off-diagonal convergence, point identity
  double order_tol = 1e-9;  // PSD slack in Loewner comparisons

  // Throws InvalidArgument unless every field lies in (0, 1e-3).
  void validate() const;
};

/// Dense real symmetric n x n matrix, row-major. Symmetry is exact: the
/// constructor averages a with its transpose.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Averages (a + a^T)/2 and checks entries are finite and dim <= kMaxDim.
  SymMatrix(std::size_t dim, std::vector<double> row_major);

  static SymMatrix zero(std::size_t dim);
  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(std::initializer_list<double> diag);
  static SymMatrix diagonal(std::span<const double> diag);
  static SymMatrix scalar(double value) { return diagonal({value}); }

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }
  std::span<const double> data() const noexcept { return data_; }

  double frobenius_norm() const noexcept;
  double trace() const noexcept;

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);

  /// Exact entrywise equality.
  friend bool operator==(const SymMatrix& a, const SymMatrix& b) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Lexicographic order on row-major entries (dimension first).
bool lex_less(const SymMatrix& a, const SymMatrix& b) noexcept;

/// s * x * s for symmetric s, result symmetrized.
SymMatrix congruence(const SymMatrix& s, const SymMatrix& x);

/// Symmetric part of the product a*b.
SymMatrix sym_product(const SymMatrix& a, const SymMatrix& b);

/// A point of the open cone: a SymMatrix whose smallest eigenvalue exceeds
/// pd_tol * max(1, spectral norm).
class PDMatrix {
 public:
  explicit PDMatrix(SymMatrix base, const Tolerances& tol = {});

  static PDMatrix identity(std::size_t dim) {
    return PDMatrix(SymMatrix::identity(dim));
  }
  static PDMatrix scalar(double value) { return PDMatrix(SymMatrix::scalar(value)); }
  static PDMatrix diagonal(std::initializer_list<double> diag) {
    return PDMatrix(SymMatrix::diagonal(diag));
  }

  const SymMatrix& sym() const noexcept { return base_; }
  operator const SymMatrix&() const noexcept { return base_; }
  std::size_t dim() const noexcept { return base_.dim(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return base_(i, j); }

  /// t * x for t > 0; stays in the cone.
  PDMatrix scaled(double t) const;

  friend bool operator==(const PDMatrix& a, const PDMatrix& b) = default;

 private:
  SymMatrix base_;
};

/// True when x and y coincide up to eig_tol relative to their size.
bool same_point(const SymMatrix& x, const SymMatrix& y, const Tolerances& tol = {});

struct EigenDecomposition {
  std::vector<double> values;  // descending
  std::vector<double> vectors; // row-major n x n, column k pairs with values[k]
  std::size_t dim = 0;

  SymMatrix reconstruct() const;
};

/// Cyclic Jacobi eigensolver. Throws ConvergenceError after 100 sweeps.
EigenDecomposition eig_sym(const SymMatrix& a, const Tolerances& tol = {});

enum class SpectralFn { kSqrt, kInvSqrt, kLog, kExp };

/// f(a) = Q f(Lambda) Q^T. sqrt, inv_sqrt and log require a PD argument.
SymMatrix spectral_map(SpectralFn f, const SymMatrix& a, const Tolerances& tol = {});

double min_eigenvalue(const SymMatrix& a, const Tolerances& tol = {});
double max_eigenvalue(const SymMatrix& a, const Tolerances& tol = {});

/// x <= y: min eig(y - x) >= -order_tol * max(1, ||y - x||_F).
bool loewner_leq(const SymMatrix& x, const SymMatrix& y, const Tolerances& tol = {});

/// M(x/y) = inf{lambda > 0 : x <= lambda y}.
double m_ratio(const PDMatrix& x, const PDMatrix& y, const Tolerances& tol = {});

/// Thompson part metric max{log M(x/y), log M(y/x)}. Exactly symmetric.
double thompson_dist(const PDMatrix& x, const PDMatrix& y, const Tolerances& tol = {});

/// Closed order interval [lo, hi] with lo <= hi.
class OrderInterval {
 public:
  OrderInterval(PDMatrix lo, PDMatrix hi, const Tolerances& tol = {});

  const PDMatrix& lo() const noexcept { return lo_; }
  const PDMatrix& hi() const noexcept { return hi_; }

 private:
  PDMatrix lo_;
  PDMatrix hi_;
};

/// The closed Thompson ball of radius r around a, i.e. [e^{-r} a, e^{r} a].
OrderInterval thompson_ball(const PDMatrix& a, double r);

bool in_interval(const SymMatrix& x, const OrderInterval& iv, const Tolerances& tol = {});

/// |x|_a = inf{lambda > 0 : -lambda a <= x <= lambda a}.
double order_unit_norm(const SymMatrix& x, const PDMatrix& a, const Tolerances& tol = {});

}  // namespace ordcone
