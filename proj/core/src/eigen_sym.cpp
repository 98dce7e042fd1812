#include <algorithm>
#include <cmath>
#include <numeric>

#include "ordcone/cone.hpp"
#include "ordcone/errors.hpp"

namespace ordcone {
namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

// Applies A <- R^T A R and V <- V R for the plane rotation in (p, q) with
// R_pp = R_qq = c, R_pq = s, R_qp = -s.
void rotate(std::vector<double>& a, std::vector<double>& v, std::size_t n,
            std::size_t p, std::size_t q, double c, double s) {
  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a[k * n + p];
    const double akq = a[k * n + q];
    a[k * n + p] = c * akp - s * akq;
    a[k * n + q] = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a[p * n + k];
    const double aqk = a[q * n + k];
    a[p * n + k] = c * apk - s * aqk;
    a[q * n + k] = s * apk + c * aqk;
  }
  a[p * n + q] = 0.0;
  a[q * n + p] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v[k * n + p];
    const double vkq = v[k * n + q];
    v[k * n + p] = c * vkp - s * vkq;
    v[k * n + q] = s * vkp + c * vkq;
  }
}

}  // namespace

SymMatrix EigenDecomposition::reconstruct() const {
  const std::size_t n = dim;
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += vectors[i * n + k] * values[k] * vectors[j * n + k];
      out[i * n + j] = s;
    }
  return SymMatrix(n, std::move(out));
}

EigenDecomposition eig_sym(const SymMatrix& m, const Tolerances& tol) {
  const std::size_t n = m.dim();
  std::vector<double> a(m.data().begin(), m.data().end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double norm = m.frobenius_norm();
  const double threshold = tol.eig_tol * norm;

  // Once the off-diagonal mass drops below threshold one more sweep is run;
  // Jacobi converges quadratically, so this pushes the residual to roundoff.
  bool polishing = false;
  bool converged = norm == 0.0 || n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a, n) <= threshold) {
      if (polishing) {
        converged = true;
        break;
      }
      polishing = true;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) &&
            std::abs(aqq) + g == std::abs(aqq)) {
          a[p * n + q] = 0.0;
          a[q * n + p] = 0.0;
          continue;
        }
        const double theta = 0.5 * (aqq - app) / apq;
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        rotate(a, v, n, p, q, c, t * c);
      }
    }
    if (polishing && off_diagonal_norm(a, n) <= threshold) converged = true;
  }
  if (!converged)
    throw ConvergenceError("eig_sym: Jacobi iteration did not converge in 100 sweeps",
                           off_diagonal_norm(a, n));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i] > a[j * n + j];
  });

  EigenDecomposition out;
  out.dim = n;
  out.values.resize(n);
  out.vectors.assign(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a[src * n + src];
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = v[i * n + src];
  }
  return out;
}

}  // namespace ordcone
