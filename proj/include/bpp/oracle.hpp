#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bpp/instance.hpp"

namespace bpp {

// Brute-force ground truth: every x in A with D(x, Fx) = dist(A, B).
struct OracleReport {
  double d_ab = 0.0;
  std::vector<std::size_t> bpps;  // A indices, ascending
  std::vector<double> gaps;       // gaps[x] = D(x, Fx) - d_ab

  bool contains(std::size_t a) const;
};

OracleReport oracle_bpp(const PointSet& a, const PointSet& b, const MultiMap& f, const Metric& m,
                        double eps_prox = kDefaultProxEps);

OracleReport oracle_bpp(const Instance& inst);

struct GenProfile {
  std::size_t n_a = 5;
  std::size_t n_b = 5;
  std::size_t dim = 2;
  MetricKind metric = MetricKind::L1;
  std::size_t image_size = 2;  // images have 1..image_size points
  bool force_weak_p = false;
  bool same_sets = false;      // B = A (fixed-point instances)
  bool range_respecting = false;  // images of A0 points are drawn from B0
  int extent = 10;             // coordinates are integers in [-extent, extent]
  double k = 0.9;
  double lambda = 0.0;
  std::size_t rejection_budget = 10'000;
};

struct GeneratedInstance {
  Instance instance;
  std::size_t attempts = 0;
  bool budget_exhausted = false;  // force_weak_p could not be met; last draw returned
};

// Deterministic in (seed, profile). Draws integer-lattice points so that L1
// and LINF distances are exact in binary floating point. Seeds are filled in
// whenever some x0 in A0 has an image point in B0.
GeneratedInstance gen_instance(std::uint64_t seed, const GenProfile& profile);

}  // namespace bpp
