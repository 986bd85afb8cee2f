#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bpp/mapping.hpp"
#include "bpp/metric.hpp"

namespace bpp {

inline constexpr double kDefaultProxEps = 1e-9;
inline constexpr std::size_t kDefaultMaxWitnesses = 32;

// Proximal pairs of (A, B): every (a, b) with d(a, b) = dist(A, B) within
// eps_prox. A0 and B0 are their projections, as sorted index lists.
struct ProximalPairing {
  double d_ab = 0.0;
  double eps_prox = kDefaultProxEps;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (A index, B index)
  std::vector<std::size_t> a0;
  std::vector<std::size_t> b0;
  // partners[b] = A indices realising d_ab with B point b (empty outside B0).
  std::vector<std::vector<std::size_t>> partners;

  bool in_a0(std::size_t a) const;
  bool in_b0(std::size_t b) const;
};

ProximalPairing proximal_pairs(const PointSet& a, const PointSet& b, const Metric& m,
                               double eps_prox = kDefaultProxEps);

// Two proximal pairs (x1, y1), (x2, y2) together with the distances the
// P / weak-P properties compare.
struct PairWitness {
  std::size_t x1, y1, x2, y2;
  double d_x;  // d(x1, x2)
  double d_y;  // d(y1, y2)
};

struct PairPropertyReport {
  bool holds = true;
  std::size_t violations = 0;          // total count
  std::vector<PairWitness> witnesses;  // first kDefaultMaxWitnesses, enumeration order
};

// d(x1, x2) <= d(y1, y2) + tol over all proximal pairs.
PairPropertyReport check_weak_P(const ProximalPairing& pp, const PointSet& a, const PointSet& b,
                                const Metric& m, double tol = kDefaultProxEps);

// |d(x1, x2) - d(y1, y2)| <= tol over all proximal pairs.
PairPropertyReport check_P(const ProximalPairing& pp, const PointSet& a, const PointSet& b,
                           const Metric& m, double tol = kDefaultProxEps);

struct AdmissibilityWitness {
  std::size_t x1, x2;  // alpha(x1, x2) >= 1
  std::size_t y1, y2;  // y1 in F x1, y2 in F x2
  std::size_t u1, u2;  // d(u1, y1) = d(u2, y2) = d_ab, yet alpha(u1, u2) < 1
  double alpha_u;
};

struct AdmissibilityReport {
  bool holds = true;
  std::size_t violations = 0;
  std::vector<AdmissibilityWitness> witnesses;
};

AdmissibilityReport check_alpha_proximal_admissible(const MultiMap& f, const AlphaMap& alpha,
                                                    const ProximalPairing& pp);

struct RangeViolation {
  std::size_t a;  // point of A0
  std::size_t b;  // member of F a outside B0
};

struct RangeReport {
  bool holds = true;
  std::vector<RangeViolation> violators;
};

// F(A0) within B0.
RangeReport check_range_condition(const MultiMap& f, const ProximalPairing& pp);

}  // namespace bpp
