#pragma once

// The stochastic order between finitely supported measures: mu <= nu iff
// mu(A) <= nu(upper closure of A) for every A in supp(mu).

#include <optional>
#include <vector>

#include "ordcone/measure.hpp"

namespace ordcone {

inline constexpr std::size_t kMaxOrderSupport = 512;
inline constexpr std::size_t kMaxBruteforceSupport = 20;

/// Verdict plus a checkable witness: a coupling on comparable pairs when
/// mu <= nu, otherwise a subset A of supp(mu) with mu(A) > nu(up A).
struct OrderCertificate {
  bool verdict = false;
  std::optional<Coupling> witness;
  std::optional<std::vector<std::size_t>> violating_subset;
};

/// {j : x_i <= y_j for some i in subset}, ascending.
std::vector<std::size_t> upper_closure(const std::vector<std::size_t>& subset,
                                       const std::vector<PDMatrix>& left_support,
                                       const std::vector<PDMatrix>& right_support,
                                       const Tolerances& tol = {});

/// Max-flow feasibility on the bipartite comparability graph with
/// lcm-scaled integer capacities; the violating subset is read off the
/// source side of a minimum cut.
OrderCertificate stochastic_leq_flow(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                     const Tolerances& tol = {});

/// Direct subset enumeration over supp(mu) (at most 20 points).
bool stochastic_leq_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               const Tolerances& tol = {});

/// A permutation with t1[k] <= t2[perm[k]] for all k, if one exists
/// (Hopcroft-Karp on the comparability graph).
std::optional<std::vector<std::size_t>> hall_matching(const UniformTuple& t1, const UniformTuple& t2,
                                                      const Tolerances& tol = {});

/// Checks a certificate against mu and nu from scratch: witness marginals and
/// comparability, or the exact rational violation.
bool certificate_is_sound(const OrderCertificate& cert, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          const Tolerances& tol = {});

}  // namespace ordcone
