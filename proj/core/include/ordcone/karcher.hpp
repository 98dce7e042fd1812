#pragma once

// Weighted Karcher mean on the PD cone and the induced barycentric map on
// discrete measures.

#include <utility>
#include <vector>

#include "ordcone/measure.hpp"

namespace ordcone {

struct SolverConfig {
  double karcher_tol = 1e-10;         // residual <= karcher_tol * (1 + ||X||_F)
  int max_iter = 500;                 // total update attempts, accepted or not
  double min_step = 1.0 / (1 << 20);  // damping floor

  void validate() const;
};

struct KarcherResult {
  PDMatrix mean;
  double residual = 0.0;  // || sum_i w_i log(X^{-1/2} A_i X^{-1/2}) ||_F
  int iterations = 0;     // accepted updates
};

/// a^{1/2} (a^{-1/2} b a^{-1/2})^{1/2} a^{1/2}.
PDMatrix geometric_mean_2(const PDMatrix& a, const PDMatrix& b, const Tolerances& tol = {});

/// Frobenius norm of sum_i w_i log(X^{-1/2} A_i X^{-1/2}).
double karcher_residual(const PDMatrix& x, const std::vector<PDMatrix>& points, const std::vector<double>& weights,
                        const Tolerances& tol = {});

/// Solves sum_i w_i log(X^{-1/2} A_i X^{-1/2}) = 0 by the damped fixed-point
/// iteration X <- X^{1/2} exp(s * sum_i w_i log(X^{-1/2} A_i X^{-1/2})) X^{1/2},
/// starting from the log-Euclidean mean. The step s starts at 1 and is halved
/// whenever an update would increase the residual. Throws ConvergenceError
/// when max_iter is exhausted or s drops below min_step.
KarcherResult karcher_mean(const std::vector<PDMatrix>& points, const std::vector<Rational>& weights,
                           const SolverConfig& cfg = {}, const Tolerances& tol = {});

/// Uniform weights 1/n.
KarcherResult karcher_mean(const UniformTuple& t, const SolverConfig& cfg = {}, const Tolerances& tol = {});

/// beta(m): the Karcher mean of the support weighted by m.
PDMatrix barycenter(const DiscreteMeasure& m, const SolverConfig& cfg = {}, const Tolerances& tol = {});

struct ContractivityCheck {
  double lhs = 0.0;  // d(Lambda(a), Lambda(b))
  double rhs = 0.0;  // (1/n) sum_i d(a_i, b_i)
};

ContractivityCheck check_contractive(const std::vector<PDMatrix>& points_a, const std::vector<PDMatrix>& points_b,
                                     const SolverConfig& cfg = {}, const Tolerances& tol = {});

/// Requires a_i <= b_i; returns Lambda(a) <= Lambda(b).
bool check_monotone(const std::vector<PDMatrix>& points_a, const std::vector<PDMatrix>& points_b,
                    const SolverConfig& cfg = {}, const Tolerances& tol = {});

}  // namespace ordcone
