#pragma once

#include <cstdint>
#include <string>

#include "ordcone/karcher.hpp"

namespace ordcone {

struct ExperimentConfig {
  std::size_t dim = 2;           // <= 8
  std::size_t support_size = 4;  // <= 64
  std::size_t trials = 10;
  std::uint64_t seed = 42;
  int n_max = 40;
  double bump_scale = 0.5;
  unsigned threads = 0;          // 0: hardware concurrency

  void validate() const;
};

/// Per trial: an ordered pair from its own RNG stream, the paired
/// approximation up to n_max, and barycenter monotonicity at each step.
/// CSV columns: trial,n,dW_q,dW_p,leq_ok,bary_mono_ok,error. A failing trial
/// or step contributes a row with nan distances and the error message;
/// the run continues. Output is byte-identical for identical configs,
/// independent of the thread count.
std::string run_converge_experiment(const ExperimentConfig& cfg, const SolverConfig& solver = {});

}  // namespace ordcone
