#include "ordcone/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "ordcone/errors.hpp"
#include "ordcone/io.hpp"
#include "ordcone/order_approx.hpp"
#include "ordcone/random.hpp"

namespace ordcone {
namespace {

std::string csv_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string error_row(std::size_t trial, int n, std::string_view message) {
  return std::to_string(trial) + "," + std::to_string(n) + ",nan,nan,false,false," + csv_quote(message) + "\n";
}

std::string run_trial(const ExperimentConfig& cfg, const SolverConfig& solver, std::size_t trial) {
  std::string rows;
  try {
    Rng rng = Rng::stream(cfg.seed, trial);
    const auto [q, p] = gen_ordered_pair(rng, cfg.dim, cfg.support_size, cfg.bump_scale);
    const ApproxTrace trace = order_approximate_pair(q, p, ApproxSchedule::identity(cfg.dim), cfg.n_max);
    for (const auto& step : trace.steps) {
      try {
        const bool mono = loewner_leq(barycenter(step.q_n, solver), barycenter(step.p_n, solver));
        rows += std::to_string(trial) + "," + std::to_string(step.n) + "," + io::format_real(step.dw_q) + "," +
                io::format_real(step.dw_p) + "," + (step.leq_ok() ? "true" : "false") + "," +
                (mono ? "true" : "false") + ",\n";
      } catch (const std::exception& e) {
        rows += error_row(trial, step.n, e.what());
      }
    }
  } catch (const std::exception& e) {
    rows += error_row(trial, 0, e.what());
  }
  return rows;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dim == 0 || dim > 8) throw InvalidArgument("experiment: dim must be in [1, 8]");
  if (support_size == 0 || support_size > 64) throw InvalidArgument("experiment: support size must be in [1, 64]");
  if (n_max < 1) throw InvalidArgument("experiment: nmax must be >= 1");
  if (!(bump_scale >= 0.0)) throw InvalidArgument("experiment: bump scale must be nonnegative");
}

std::string run_converge_experiment(const ExperimentConfig& cfg, const SolverConfig& solver) {
  cfg.validate();
  solver.validate();
  std::vector<std::string> rows(cfg.trials);
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(cfg.trials, 1)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < cfg.trials; t = next++) rows[t] = run_trial(cfg, solver, t);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work);
  }

  std::string out = "trial,n,dW_q,dW_p,leq_ok,bary_mono_ok,error\n";
  for (const auto& r : rows) out += r;
  return out;
}

}  // namespace ordcone
