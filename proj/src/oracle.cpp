#include "bpp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bpp/error.hpp"
#include "bpp/proximal.hpp"

namespace bpp {

bool OracleReport::contains(std::size_t a) const {
  return std::binary_search(bpps.begin(), bpps.end(), a);
}

OracleReport oracle_bpp(const PointSet& a, const PointSet& b, const MultiMap& f, const Metric& m,
                        double eps_prox) {
  if (f.domain_size() != a.size()) throw InvalidArgument("mapping is not total on A");
  OracleReport r;
  r.d_ab = dist_set_set(a, b, m).distance;
  r.gaps.resize(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    r.gaps[x] = dist_point_set(a[x], f.image_points(x, b), m).distance - r.d_ab;
    if (r.gaps[x] <= eps_prox) r.bpps.push_back(x);
  }
  return r;
}

OracleReport oracle_bpp(const Instance& inst) {
  return oracle_bpp(inst.a, inst.b, inst.f, inst.metric, inst.tol.eps_prox);
}

namespace {

// Modulo draw rather than std::uniform_int_distribution so that instances are
// identical across standard library implementations.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(rng() % span);
}

std::vector<Point> lattice_points(std::mt19937_64& rng, std::size_t n, const GenProfile& prof) {
  std::vector<Point> pts;
  while (pts.size() < n) {
    Point p;
    for (std::size_t d = 0; d < prof.dim; ++d) {
      p.coords.push_back(static_cast<double>(draw(rng, -prof.extent, prof.extent)));
    }
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<std::size_t> random_subset(std::mt19937_64& rng, const std::vector<std::size_t>& pool,
                                       std::size_t max_size) {
  const auto size = static_cast<std::size_t>(
      draw(rng, 1, static_cast<std::int64_t>(std::min(max_size, pool.size()))));
  std::vector<std::size_t> shuffled = pool;
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = static_cast<std::size_t>(
        draw(rng, static_cast<std::int64_t>(i), static_cast<std::int64_t>(shuffled.size() - 1)));
    std::swap(shuffled[i], shuffled[j]);
  }
  shuffled.resize(size);
  std::sort(shuffled.begin(), shuffled.end());
  return shuffled;
}

Instance draw_instance(std::mt19937_64& rng, const GenProfile& prof) {
  Instance inst;
  inst.metric = Metric(prof.metric);
  inst.a = PointSet("A", lattice_points(rng, prof.n_a, prof));
  inst.b = prof.same_sets ? PointSet("B", inst.a.points())
                          : PointSet("B", lattice_points(rng, prof.n_b, prof));
  inst.theta = Theta::exp();
  inst.params.k = prof.k;
  inst.params.lambda = prof.lambda;
  inst.params.alpha = AlphaMap::constant(1.0);

  const ProximalPairing pp = proximal_pairs(inst.a, inst.b, inst.metric, inst.tol.eps_prox);
  std::vector<std::size_t> all_b(inst.b.size());
  for (std::size_t j = 0; j < all_b.size(); ++j) all_b[j] = j;

  std::vector<std::vector<std::size_t>> images;
  for (std::size_t x = 0; x < inst.a.size(); ++x) {
    const bool restrict = prof.range_respecting && pp.in_a0(x);
    images.push_back(random_subset(rng, restrict ? pp.b0 : all_b, prof.image_size));
  }
  inst.f = MultiMap(std::move(images), inst.a.size(), inst.b.size());

  for (std::size_t x0 : pp.a0) {
    for (std::size_t y0 : inst.f.image(x0)) {
      if (!pp.in_b0(y0)) continue;
      std::size_t x1 = pp.partners[y0].front();
      for (std::size_t u : pp.partners[y0]) {
        if (inst.metric(inst.a[x0], inst.a[u]) < inst.metric(inst.a[x0], inst.a[x1])) x1 = u;
      }
      inst.seeds = Seeds{x0, x1, y0};
      return inst;
    }
  }
  return inst;
}

}  // namespace

GeneratedInstance gen_instance(std::uint64_t seed, const GenProfile& prof) {
  if (prof.n_a == 0 || prof.n_b == 0 || prof.dim == 0 || prof.image_size == 0) {
    throw InvalidArgument("generator sizes must be >= 1");
  }
  if (prof.metric == MetricKind::Table) {
    throw InvalidArgument("generator draws lattice points; TABLE metric is not supported");
  }
  if (prof.extent < 0) throw InvalidArgument("generator extent must be >= 0");
  const double cells = std::pow(2.0 * prof.extent + 1.0, static_cast<double>(prof.dim));
  if (cells < static_cast<double>(std::max(prof.n_a, prof.n_b))) {
    throw InvalidArgument("lattice too small for the requested number of distinct points");
  }

  std::mt19937_64 rng(seed);
  GeneratedInstance out;
  const std::size_t budget = std::max<std::size_t>(prof.rejection_budget, 1);
  for (;;) {
    ++out.attempts;
    out.instance = draw_instance(rng, prof);
    if (!prof.force_weak_p) break;
    const Instance& inst = out.instance;
    const ProximalPairing pp = proximal_pairs(inst.a, inst.b, inst.metric, inst.tol.eps_prox);
    if (check_weak_P(pp, inst.a, inst.b, inst.metric, inst.tol.eps_prox).holds) break;
    if (out.attempts >= budget) {
      out.budget_exhausted = true;
      break;
    }
  }
  out.instance.name = "generated-" + std::to_string(seed);
  return out;
}

}  // namespace bpp
