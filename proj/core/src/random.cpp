#include "ordcone/random.hpp"

#include <stdexcept>

#include "ordcone/errors.hpp"
#include "ordcone/stochastic_order.hpp"

namespace ordcone {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return span == 0 ? next() : lo + next() % span;
}

namespace {

std::vector<double> gram(Rng& rng, std::size_t dim, double scale) {
  std::vector<double> g(dim * dim);
  for (double& v : g) v = rng.uniform(-1.0, 1.0);
  std::vector<double> out(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += g[i * dim + k] * g[j * dim + k];
      out[i * dim + j] = scale * s;
    }
  return out;
}

}  // namespace

PDMatrix gen_pd(Rng& rng, std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) throw InvalidArgument("gen_pd: dimension must be in [1, 16]");
  auto g = gram(rng, dim, 1.0);
  for (std::size_t i = 0; i < dim; ++i) g[i * dim + i] += 0.1;
  return PDMatrix(SymMatrix(dim, std::move(g)));
}

SymMatrix gen_psd_bump(Rng& rng, std::size_t dim, double scale) {
  if (dim == 0 || dim > kMaxDim) throw InvalidArgument("gen_psd_bump: dimension must be in [1, 16]");
  return SymMatrix(dim, gram(rng, dim, scale));
}

DiscreteMeasure gen_measure(Rng& rng, std::size_t dim, std::size_t size, std::uint64_t max_ticks) {
  if (size == 0) throw InvalidArgument("gen_measure: empty support");
  std::vector<PDMatrix> points;
  std::vector<std::uint64_t> ticks;
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < size; ++k) {
    points.push_back(gen_pd(rng, dim));
    ticks.push_back(rng.uniform_int(1, max_ticks));
    total += ticks.back();
  }
  std::vector<Rational> weights;
  for (auto t : ticks) weights.emplace_back(t, total);
  return DiscreteMeasure(std::move(points), std::move(weights));
}

std::pair<DiscreteMeasure, DiscreteMeasure> gen_ordered_pair(Rng& rng, std::size_t dim, std::size_t support_size,
                                                             double bump_scale) {
  if (!(bump_scale >= 0.0)) throw InvalidArgument("gen_ordered_pair: bump scale must be nonnegative");
  DiscreteMeasure mu = gen_measure(rng, dim, support_size);
  std::vector<PDMatrix> raised;
  raised.reserve(mu.size());
  for (const auto& x : mu.points()) raised.emplace_back(x.sym() + gen_psd_bump(rng, dim, bump_scale));
  DiscreteMeasure nu(std::move(raised), mu.weights());
  if (!stochastic_leq_flow(mu, nu).verdict)
    throw std::logic_error("gen_ordered_pair: generated pair failed the order check");
  return {std::move(mu), std::move(nu)};
}

}  // namespace ordcone
