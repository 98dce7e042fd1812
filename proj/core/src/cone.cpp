#include "ordcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ordcone/errors.hpp"

namespace ordcone {
namespace {

void require_same_dim(const SymMatrix& a, const SymMatrix& b, const char* op) {
  if (a.dim() != b.dim())
    throw InvalidArgument(std::string(op) + ": dimension mismatch (" +
                          std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

// Lower Cholesky factor of a PD matrix, row-major.
std::vector<double> cholesky(const SymMatrix& y) {
  const std::size_t n = y.dim();
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = y(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (!(d > 0.0)) throw InvalidArgument("cholesky: matrix is not positive definite");
    const double ljj = std::sqrt(d);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = y(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / ljj;
    }
  }
  return l;
}

// L^{-1} x L^{-T}; has the same spectrum as y^{-1/2} x y^{-1/2} when L L^T = y.
SymMatrix whiten(const SymMatrix& x, const std::vector<double>& l) {
  const std::size_t n = x.dim();
  // Solve L W = X column by column, then L Z^T = W^T.
  std::vector<double> w(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * w[k * n + c];
      w[i * n + c] = s / l[i * n + i];
    }
  }
  std::vector<double> z(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = w[r * n + i];
      for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * z[r * n + k];
      z[r * n + i] = s / l[i * n + i];
    }
  }
  return SymMatrix(n, std::move(z));
}

bool spectrum_is_pd(const std::vector<double>& values, const Tolerances& tol) {
  double spectral = 0.0;
  for (double v : values) spectral = std::max(spectral, std::abs(v));
  const double lo = values.back();
  return lo > 0.0 && lo > tol.pd_tol * spectral;
}

}  // namespace

void Tolerances::validate() const {
  for (double t : {pd_tol, eig_tol, order_tol})
    if (!(t > 0.0 && t < 1e-3))
      throw InvalidArgument("Tolerances: every tolerance must lie in (0, 1e-3)");
}

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> row_major) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim)
    throw InvalidArgument("SymMatrix: dimension must be in [1, 16], got " + std::to_string(dim));
  if (row_major.size() != dim * dim)
    throw InvalidArgument("SymMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                          std::to_string(row_major.size()));
  for (double v : row_major)
    if (!std::isfinite(v)) throw InvalidArgument("SymMatrix: non-finite entry");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double avg = 0.5 * (row_major[i * dim + j] + row_major[j * dim + i]);
      row_major[i * dim + j] = avg;
      row_major[j * dim + i] = avg;
    }
  data_ = std::move(row_major);
}

SymMatrix SymMatrix::zero(std::size_t dim) { return SymMatrix(dim, std::vector<double>(dim * dim, 0.0)); }

SymMatrix SymMatrix::identity(std::size_t dim) {
  std::vector<double> d(dim, 1.0);
  return diagonal(std::span<const double>(d));
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  const std::size_t n = diag.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = diag[i];
  return SymMatrix(n, std::move(d));
}

double SymMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double SymMatrix::trace() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += data_[i * dim_ + i];
  return s;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b, "operator+");
  std::vector<double> d(a.data_.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = a.data_[k] + b.data_[k];
  return SymMatrix(a.dim_, std::move(d));
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b, "operator-");
  std::vector<double> d(a.data_.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = a.data_[k] - b.data_[k];
  return SymMatrix(a.dim_, std::move(d));
}

SymMatrix operator*(double s, const SymMatrix& a) {
  std::vector<double> d(a.data_.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = s * a.data_[k];
  return SymMatrix(a.dim_, std::move(d));
}

bool lex_less(const SymMatrix& a, const SymMatrix& b) noexcept {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  const auto da = a.data();
  const auto db = b.data();
  return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
}

SymMatrix sym_product(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b, "sym_product");
  const std::size_t n = a.dim();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      out[i * n + j] = s;
    }
  return SymMatrix(n, std::move(out));
}

SymMatrix congruence(const SymMatrix& s, const SymMatrix& x) {
  require_same_dim(s, x, "congruence");
  const std::size_t n = s.dim();
  std::vector<double> sx(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += s(i, k) * x(k, j);
      sx[i * n + j] = acc;
    }
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += sx[i * n + k] * s(k, j);
      out[i * n + j] = acc;
    }
  return SymMatrix(n, std::move(out));
}

PDMatrix::PDMatrix(SymMatrix base, const Tolerances& tol) : base_(std::move(base)) {
  if (base_.dim() == 0) throw InvalidArgument("PDMatrix: empty matrix");
  const auto eig = eig_sym(base_, tol);
  if (!spectrum_is_pd(eig.values, tol))
    throw InvalidArgument("PDMatrix: matrix is not positive definite (smallest eigenvalue " +
                          std::to_string(eig.values.back()) + ")");
}

PDMatrix PDMatrix::scaled(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("PDMatrix::scaled: factor must be positive");
  return PDMatrix(t * base_);
}

bool same_point(const SymMatrix& x, const SymMatrix& y, const Tolerances& tol) {
  if (x.dim() != y.dim()) return false;
  const double scale = std::max(x.frobenius_norm(), y.frobenius_norm());
  return (x - y).frobenius_norm() <= tol.eig_tol * scale;
}

SymMatrix spectral_map(SpectralFn f, const SymMatrix& a, const Tolerances& tol) {
  auto eig = eig_sym(a, tol);
  if (f != SpectralFn::kExp && !spectrum_is_pd(eig.values, tol))
    throw InvalidArgument("spectral_map: sqrt/inv_sqrt/log need a positive definite argument");
  for (double& v : eig.values) {
    switch (f) {
      case SpectralFn::kSqrt: v = std::sqrt(v); break;
      case SpectralFn::kInvSqrt: v = 1.0 / std::sqrt(v); break;
      case SpectralFn::kLog: v = std::log(v); break;
      case SpectralFn::kExp: v = std::exp(v); break;
    }
  }
  return eig.reconstruct();
}

double min_eigenvalue(const SymMatrix& a, const Tolerances& tol) { return eig_sym(a, tol).values.back(); }

double max_eigenvalue(const SymMatrix& a, const Tolerances& tol) { return eig_sym(a, tol).values.front(); }

bool loewner_leq(const SymMatrix& x, const SymMatrix& y, const Tolerances& tol) {
  require_same_dim(x, y, "loewner_leq");
  const SymMatrix diff = y - x;
  const double slack = tol.order_tol * std::max(1.0, diff.frobenius_norm());
  return min_eigenvalue(diff, tol) >= -slack;
}

double m_ratio(const PDMatrix& x, const PDMatrix& y, const Tolerances& tol) {
  require_same_dim(x, y, "m_ratio");
  return max_eigenvalue(whiten(x, cholesky(y)), tol);
}

double thompson_dist(const PDMatrix& x, const PDMatrix& y, const Tolerances& tol) {
  require_same_dim(x, y, "thompson_dist");
  if (x == y) return 0.0;
  // Evaluate in a canonical argument order so d(x, y) == d(y, x) bit for bit.
  const bool swap = lex_less(y.sym(), x.sym());
  const SymMatrix& num = swap ? y.sym() : x.sym();
  const SymMatrix& den = swap ? x.sym() : y.sym();
  const auto eig = eig_sym(whiten(num, cholesky(den)), tol);
  const double hi = std::log(eig.values.front());
  const double lo = -std::log(eig.values.back());
  return std::max({hi, lo, 0.0});
}

OrderInterval::OrderInterval(PDMatrix lo, PDMatrix hi, const Tolerances& tol)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!loewner_leq(lo_, hi_, tol)) throw InvalidArgument("OrderInterval: lower end is not <= upper end");
}

OrderInterval thompson_ball(const PDMatrix& a, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("thompson_ball: radius must be positive");
  return OrderInterval(a.scaled(std::exp(-r)), a.scaled(std::exp(r)));
}

bool in_interval(const SymMatrix& x, const OrderInterval& iv, const Tolerances& tol) {
  return loewner_leq(iv.lo(), x, tol) && loewner_leq(x, iv.hi(), tol);
}

double order_unit_norm(const SymMatrix& x, const PDMatrix& a, const Tolerances& tol) {
  require_same_dim(x, a, "order_unit_norm");
  const auto eig = eig_sym(whiten(x, cholesky(a)), tol);
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

}  // namespace ordcone
