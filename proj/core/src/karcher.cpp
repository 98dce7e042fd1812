#include "ordcone/karcher.hpp"

#include <cmath>
#include <string>

#include "ordcone/errors.hpp"

namespace ordcone {
namespace {

struct Roots {
  SymMatrix sqrt;
  SymMatrix inv_sqrt;
};

Roots roots_of(const SymMatrix& x, const Tolerances& tol) {
  EigenDecomposition eig = eig_sym(x, tol);
  if (!(eig.values.back() > 0.0)) throw InvalidArgument("karcher: iterate left the positive cone");
  EigenDecomposition inv = eig;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    eig.values[k] = std::sqrt(eig.values[k]);
    inv.values[k] = 1.0 / eig.values[k];
  }
  return {eig.reconstruct(), inv.reconstruct()};
}

SymMatrix log_sum(const SymMatrix& inv_sqrt, const std::vector<PDMatrix>& points, const std::vector<double>& weights,
                  const Tolerances& tol) {
  SymMatrix acc = SymMatrix::zero(inv_sqrt.dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SymMatrix inner = congruence(inv_sqrt, points[i]);
    acc = acc + weights[i] * spectral_map(SpectralFn::kLog, inner, tol);
  }
  return acc;
}

std::vector<double> to_doubles(const std::vector<PDMatrix>& points, const std::vector<Rational>& weights) {
  if (points.empty()) throw InvalidArgument("karcher_mean: no points");
  if (points.size() != weights.size()) throw InvalidArgument("karcher_mean: points and weights differ in length");
  Rational total;
  std::vector<double> w;
  w.reserve(weights.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != points.front().dim()) throw InvalidArgument("karcher_mean: mixed dimensions");
    if (weights[i].is_zero()) throw InvalidArgument("karcher_mean: weights must be positive");
    total += weights[i];
    w.push_back(weights[i].to_double());
  }
  if (total != Rational(1)) throw InvalidArgument("karcher_mean: weights sum to " + total.to_string() + ", not 1");
  return w;
}

std::vector<Rational> uniform_weights(std::size_t n) { return std::vector<Rational>(n, Rational(1, n)); }

}  // namespace

void SolverConfig::validate() const {
  if (!(karcher_tol > 0.0)) throw InvalidArgument("SolverConfig: karcher_tol must be positive");
  if (max_iter < 1) throw InvalidArgument("SolverConfig: max_iter must be >= 1");
  if (!(min_step > 0.0 && min_step <= 1.0)) throw InvalidArgument("SolverConfig: min_step must lie in (0, 1]");
}

PDMatrix geometric_mean_2(const PDMatrix& a, const PDMatrix& b, const Tolerances& tol) {
  if (a.dim() != b.dim()) throw InvalidArgument("geometric_mean_2: dimension mismatch");
  const Roots r = roots_of(a, tol);
  const SymMatrix inner = spectral_map(SpectralFn::kSqrt, congruence(r.inv_sqrt, b), tol);
  return PDMatrix(congruence(r.sqrt, inner), tol);
}

double karcher_residual(const PDMatrix& x, const std::vector<PDMatrix>& points, const std::vector<double>& weights,
                        const Tolerances& tol) {
  return log_sum(roots_of(x, tol).inv_sqrt, points, weights, tol).frobenius_norm();
}

KarcherResult karcher_mean(const std::vector<PDMatrix>& points, const std::vector<Rational>& weights,
                           const SolverConfig& cfg, const Tolerances& tol) {
  cfg.validate();
  const std::vector<double> w = to_doubles(points, weights);
  const std::size_t dim = points.front().dim();

  SymMatrix log_mean = SymMatrix::zero(dim);
  for (std::size_t i = 0; i < points.size(); ++i)
    log_mean = log_mean + w[i] * spectral_map(SpectralFn::kLog, points[i], tol);
  SymMatrix x = spectral_map(SpectralFn::kExp, log_mean, tol);

  Roots roots = roots_of(x, tol);
  SymMatrix grad = log_sum(roots.inv_sqrt, points, w, tol);
  double residual = grad.frobenius_norm();
  double step = 1.0;
  int accepted = 0;
  for (int attempt = 0; residual > cfg.karcher_tol * (1.0 + x.frobenius_norm()); ++attempt) {
    if (attempt >= cfg.max_iter)
      throw ConvergenceError("karcher_mean: no convergence after " + std::to_string(cfg.max_iter) +
                                 " iterations (residual " + std::to_string(residual) + ")",
                             residual);
    const SymMatrix candidate = congruence(roots.sqrt, spectral_map(SpectralFn::kExp, step * grad, tol));
    Roots cand_roots = roots_of(candidate, tol);
    SymMatrix cand_grad = log_sum(cand_roots.inv_sqrt, points, w, tol);
    const double cand_residual = cand_grad.frobenius_norm();
    if (cand_residual < residual) {
      x = candidate;
      roots = std::move(cand_roots);
      grad = std::move(cand_grad);
      residual = cand_residual;
      ++accepted;
    } else {
      step *= 0.5;
      if (step < cfg.min_step)
        throw ConvergenceError("karcher_mean: step damping fell below its floor (residual " +
                                   std::to_string(residual) + ")",
                               residual);
    }
  }
  return KarcherResult{PDMatrix(std::move(x), tol), residual, accepted};
}

KarcherResult karcher_mean(const UniformTuple& t, const SolverConfig& cfg, const Tolerances& tol) {
  return karcher_mean(t.entries(), uniform_weights(t.size()), cfg, tol);
}

PDMatrix barycenter(const DiscreteMeasure& m, const SolverConfig& cfg, const Tolerances& tol) {
  return karcher_mean(m.points(), m.weights(), cfg, tol).mean;
}

ContractivityCheck check_contractive(const std::vector<PDMatrix>& points_a, const std::vector<PDMatrix>& points_b,
                                     const SolverConfig& cfg, const Tolerances& tol) {
  if (points_a.size() != points_b.size()) throw InvalidArgument("check_contractive: sequences differ in length");
  const auto w = uniform_weights(points_a.size());
  const PDMatrix ma = karcher_mean(points_a, w, cfg, tol).mean;
  const PDMatrix mb = karcher_mean(points_b, w, cfg, tol).mean;
  ContractivityCheck out;
  out.lhs = thompson_dist(ma, mb, tol);
  for (std::size_t i = 0; i < points_a.size(); ++i) out.rhs += thompson_dist(points_a[i], points_b[i], tol);
  out.rhs /= static_cast<double>(points_a.size());
  return out;
}

bool check_monotone(const std::vector<PDMatrix>& points_a, const std::vector<PDMatrix>& points_b,
                    const SolverConfig& cfg, const Tolerances& tol) {
  if (points_a.size() != points_b.size()) throw InvalidArgument("check_monotone: sequences differ in length");
  for (std::size_t i = 0; i < points_a.size(); ++i)
    if (!loewner_leq(points_a[i], points_b[i], tol))
      throw InvalidArgument("check_monotone: a_" + std::to_string(i) + " <= b_" + std::to_string(i) + " fails");
  const auto w = uniform_weights(points_a.size());
  return loewner_leq(karcher_mean(points_a, w, cfg, tol).mean, karcher_mean(points_b, w, cfg, tol).mean, tol);
}

}  // namespace ordcone
