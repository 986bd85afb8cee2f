#include "bpp/proximal.hpp"

#include <algorithm>
#include <cmath>

#include "bpp/error.hpp"

namespace bpp {

bool ProximalPairing::in_a0(std::size_t a) const {
  return std::binary_search(a0.begin(), a0.end(), a);
}

bool ProximalPairing::in_b0(std::size_t b) const {
  return std::binary_search(b0.begin(), b0.end(), b);
}

ProximalPairing proximal_pairs(const PointSet& a, const PointSet& b, const Metric& m,
                               double eps_prox) {
  ProximalPairing pp;
  pp.d_ab = dist_set_set(a, b, m).distance;
  pp.eps_prox = eps_prox;
  pp.partners.assign(b.size(), {});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (std::abs(m(a[i], b[j]) - pp.d_ab) <= eps_prox) {
        pp.pairs.emplace_back(i, j);
        pp.partners[j].push_back(i);
      }
    }
  }
  for (const auto& [i, j] : pp.pairs) {
    pp.a0.push_back(i);
    pp.b0.push_back(j);
  }
  std::sort(pp.a0.begin(), pp.a0.end());
  pp.a0.erase(std::unique(pp.a0.begin(), pp.a0.end()), pp.a0.end());
  std::sort(pp.b0.begin(), pp.b0.end());
  pp.b0.erase(std::unique(pp.b0.begin(), pp.b0.end()), pp.b0.end());
  return pp;
}

namespace {

template <typename Violates>
PairPropertyReport scan_pairs(const ProximalPairing& pp, const PointSet& a, const PointSet& b,
                              const Metric& m, Violates violates) {
  PairPropertyReport report;
  for (const auto& [x1, y1] : pp.pairs) {
    for (const auto& [x2, y2] : pp.pairs) {
      const double dx = m(a[x1], a[x2]);
      const double dy = m(b[y1], b[y2]);
      if (violates(dx, dy)) {
        report.holds = false;
        ++report.violations;
        if (report.witnesses.size() < kDefaultMaxWitnesses) {
          report.witnesses.push_back({x1, y1, x2, y2, dx, dy});
        }
      }
    }
  }
  return report;
}

}  // namespace

PairPropertyReport check_weak_P(const ProximalPairing& pp, const PointSet& a, const PointSet& b,
                                const Metric& m, double tol) {
  return scan_pairs(pp, a, b, m, [tol](double dx, double dy) { return dx > dy + tol; });
}

PairPropertyReport check_P(const ProximalPairing& pp, const PointSet& a, const PointSet& b,
                           const Metric& m, double tol) {
  return scan_pairs(pp, a, b, m, [tol](double dx, double dy) { return std::abs(dx - dy) > tol; });
}

AdmissibilityReport check_alpha_proximal_admissible(const MultiMap& f, const AlphaMap& alpha,
                                                    const ProximalPairing& pp) {
  const std::size_t n = f.domain_size();
  alpha.check_covers(n);
  AdmissibilityReport report;
  // Constant alpha: either the antecedent never fires (c < 1) or the
  // consequent always holds (c >= 1).
  if (alpha.is_constant()) return report;

  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      if (alpha(x1, x2) < 1.0) continue;
      for (std::size_t y1 : f.image(x1)) {
        for (std::size_t y2 : f.image(x2)) {
          for (std::size_t u1 : pp.partners.at(y1)) {
            for (std::size_t u2 : pp.partners.at(y2)) {
              const double au = alpha(u1, u2);
              if (au >= 1.0) continue;
              report.holds = false;
              ++report.violations;
              if (report.witnesses.size() < kDefaultMaxWitnesses) {
                report.witnesses.push_back({x1, x2, y1, y2, u1, u2, au});
              }
            }
          }
        }
      }
    }
  }
  return report;
}

RangeReport check_range_condition(const MultiMap& f, const ProximalPairing& pp) {
  RangeReport report;
  for (std::size_t a : pp.a0) {
    for (std::size_t b : f.image(a)) {
      if (!pp.in_b0(b)) {
        report.holds = false;
        report.violators.push_back({a, b});
      }
    }
  }
  return report;
}

}  // namespace bpp
