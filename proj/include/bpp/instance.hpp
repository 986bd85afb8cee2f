#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "bpp/contraction.hpp"
#include "bpp/mapping.hpp"
#include "bpp/metric.hpp"
#include "bpp/proximal.hpp"
#include "bpp/theta.hpp"

namespace bpp {

struct Seeds {
  std::size_t x0 = 0;  // A index
  std::size_t x1 = 0;  // A index
  std::size_t y0 = 0;  // B index

  bool operator==(const Seeds&) const = default;
};

struct Tolerances {
  double eps_dup = kDefaultDupEps;
  double eps_prox = kDefaultProxEps;
  double eps_stop = 1e-9;
  double eps_step = 0.0;
  std::uint64_t max_iter = 1'000'000;
};

// Everything needed to audit and solve one best-proximity problem.
struct Instance {
  std::string name;
  Metric metric{MetricKind::L2};
  PointSet a;
  PointSet b;
  MultiMap f;
  Theta theta = Theta::exp();
  ContractionParams params;
  std::optional<Seeds> seeds;
  Tolerances tol;
  AuditOptions audit;
  // Whether A is assumed to have the alpha-subsequential property. Recorded,
  // never verified: it is a limit property with no finite test.
  bool alpha_subsequential_assumed = false;

  bool same_sets() const;  // A and B hold the same points in the same order
};

}  // namespace bpp
