// ordcone: command-line front end for the ordcone library.
//
// Exit codes: 0 success, 2 input validation error, 3 solver non-convergence.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordcone/errors.hpp"
#include "ordcone/experiment.hpp"
#include "ordcone/io.hpp"
#include "ordcone/karcher.hpp"
#include "ordcone/order_approx.hpp"
#include "ordcone/stochastic_order.hpp"
#include "ordcone/transport.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConvergence = 3;

namespace io = ordcone::io;

void emit(const std::string& text) { std::cout << text << '\n'; }

ordcone::DiscreteMeasure load_measure(const std::string& path) {
  return io::parse_measure(io::read_file(path));
}

int run_thompson(const std::string& a_path, const std::string& b_path) {
  const auto a = io::parse_matrix(io::read_file(a_path));
  const auto b = io::parse_matrix(io::read_file(b_path));
  nlohmann::json out{{"distance", ordcone::thompson_dist(a, b)},
                     {"m_ratio_ab", ordcone::m_ratio(a, b)},
                     {"m_ratio_ba", ordcone::m_ratio(b, a)}};
  emit(out.dump(2));
  return kExitOk;
}

int run_order_check(const std::string& mu_path, const std::string& nu_path, const std::string& method) {
  const auto mu = load_measure(mu_path);
  const auto nu = load_measure(nu_path);
  if (method == "brute") {
    const bool leq = ordcone::stochastic_leq_bruteforce(mu, nu);
    emit(nlohmann::json{{"leq", leq}, {"witness", nullptr}, {"violating_subset", nullptr}}.dump(2));
  } else {
    emit(io::to_json(ordcone::stochastic_leq_flow(mu, nu)));
  }
  return kExitOk;
}

int run_wasserstein(const std::string& mu_path, const std::string& nu_path) {
  emit(io::to_json(ordcone::wasserstein1(load_measure(mu_path), load_measure(nu_path))));
  return kExitOk;
}

int run_karcher(const std::string& measure_path, double tol) {
  ordcone::SolverConfig cfg;
  cfg.karcher_tol = tol;
  const auto m = load_measure(measure_path);
  emit(io::to_json(ordcone::karcher_mean(m.points(), m.weights(), cfg)));
  return kExitOk;
}

int run_approx_pair(const std::string& mu_path, const std::string& nu_path, int n_max, const std::string& out_dir) {
  const auto q = load_measure(mu_path);
  const auto p = load_measure(nu_path);
  const auto trace = ordcone::order_approximate_pair(q, p, ordcone::ApproxSchedule::identity(q.dim()), n_max);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  for (const auto& step : trace.steps)
    io::write_file(dir / ("step_" + std::to_string(step.n) + ".json"), io::to_json(step) + "\n");
  io::write_file(dir / "trace.csv", io::trace_csv(trace));
  std::cerr << "approx-pair: wrote " << trace.steps.size() << " steps to " << dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordered probability measures on the positive-definite cone"};
  app.require_subcommand(1);

  std::string a_path, b_path;
  auto* thompson = app.add_subcommand("thompson", "Thompson distance between two PD matrices");
  thompson->add_option("--a", a_path, "Matrix JSON")->required();
  thompson->add_option("--b", b_path, "Matrix JSON")->required();

  std::string mu_path, nu_path, method = "flow";
  auto* order_check = app.add_subcommand("order-check", "Decide mu <= nu in the stochastic order");
  order_check->add_option("--mu", mu_path, "Measure JSON")->required();
  order_check->add_option("--nu", nu_path, "Measure JSON")->required();
  order_check->add_option("--method", method, "flow or brute")->check(CLI::IsMember({"flow", "brute"}));

  auto* wasserstein = app.add_subcommand("wasserstein", "Exact W1 distance and optimal plan");
  wasserstein->add_option("--mu", mu_path, "Measure JSON")->required();
  wasserstein->add_option("--nu", nu_path, "Measure JSON")->required();

  std::string measure_path;
  double karcher_tol = ordcone::SolverConfig{}.karcher_tol;
  auto* karcher = app.add_subcommand("karcher", "Weighted Karcher mean of a measure's support");
  karcher->add_option("--measure", measure_path, "Measure JSON")->required();
  karcher->add_option("--tol", karcher_tol, "Residual tolerance")->check(CLI::PositiveNumber);

  auto* bary = app.add_subcommand("barycenter", "Karcher barycenter of a measure");
  bary->add_option("--measure", measure_path, "Measure JSON")->required();

  int n_max = 10;
  std::string out_dir;
  auto* approx = app.add_subcommand("approx-pair", "Order-preserving uniform approximation of mu <= nu");
  approx->add_option("--mu", mu_path, "Measure JSON (lower)")->required();
  approx->add_option("--nu", nu_path, "Measure JSON (upper)")->required();
  approx->add_option("--nmax", n_max, "Schedule depth")->check(CLI::PositiveNumber);
  approx->add_option("--out", out_dir, "Output directory")->required();

  ordcone::ExperimentConfig exp_cfg;
  std::string csv_path;
  auto* experiment = app.add_subcommand("experiment", "Seeded experiments");
  experiment->require_subcommand(1);
  auto* converge = experiment->add_subcommand("converge", "Convergence of the paired approximation");
  converge->add_option("--dim", exp_cfg.dim, "Matrix dimension (<= 8)");
  converge->add_option("--size", exp_cfg.support_size, "Support size (<= 64)");
  converge->add_option("--trials", exp_cfg.trials, "Number of trials");
  converge->add_option("--seed", exp_cfg.seed, "64-bit seed");
  converge->add_option("--nmax", exp_cfg.n_max, "Schedule depth");
  converge->add_option("--threads", exp_cfg.threads, "Worker threads (0: all cores)");
  converge->add_option("--csv", csv_path, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*thompson) return run_thompson(a_path, b_path);
    if (*order_check) return run_order_check(mu_path, nu_path, method);
    if (*wasserstein) return run_wasserstein(mu_path, nu_path);
    if (*karcher) return run_karcher(measure_path, karcher_tol);
    if (*bary) return run_karcher(measure_path, ordcone::SolverConfig{}.karcher_tol);
    if (*approx) return run_approx_pair(mu_path, nu_path, n_max, out_dir);
    if (*converge) {
      io::write_file(csv_path, ordcone::run_converge_experiment(exp_cfg));
      return kExitOk;
    }
  } catch (const ordcone::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const ordcone::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
