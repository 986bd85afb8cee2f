#include "bpp/contraction.hpp"

#include <cmath>

#include "bpp/error.hpp"

namespace bpp {

void ContractionParams::validate() const {
  if (!(k > 0.0 && k < 1.0)) throw InvalidArgument("contraction exponent k must lie in (0, 1)");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be >= 0");
}

std::string to_string(PairOrder order) {
  return order == PairOrder::Ordered ? "ORDERED" : "UNORDERED";
}

std::string to_string(AuditScope scope) {
  return scope == AuditScope::Proximal ? "A0" : "A";
}

PairOrder pair_order_from_string(const std::string& s) {
  if (s == "ORDERED") return PairOrder::Ordered;
  if (s == "UNORDERED") return PairOrder::Unordered;
  throw InvalidArgument("unknown pair order '" + s + "' (expected ORDERED or UNORDERED)");
}

AuditScope audit_scope_from_string(const std::string& s) {
  if (s == "A") return AuditScope::WholeDomain;
  if (s == "A0") return AuditScope::Proximal;
  throw InvalidArgument("unknown audit scope '" + s + "' (expected A or A0)");
}

ContractionAudit audit_contraction(const MultiMap& f, const Metric& m, const Theta& theta,
                                   const ContractionParams& p, const PointSet& a,
                                   const PointSet& b, const AuditOptions& opts,
                                   std::span<const std::size_t> a0) {
  p.validate();
  if (f.domain_size() != a.size()) throw InvalidArgument("mapping is not total on A");
  p.alpha.check_covers(a.size());

  std::vector<std::size_t> domain;
  if (opts.scope == AuditScope::Proximal) {
    domain.assign(a0.begin(), a0.end());
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) domain.push_back(i);
  }

  std::vector<std::vector<Point>> images(a.size());
  for (std::size_t i : domain) images[i] = f.image_points(i, b);

  ContractionAudit audit;
  auto audit_pair = [&](std::size_t x, std::size_t y) {
    const double h = hausdorff(images[x], images[y], m);
    if (h <= 0.0) return;
    PairAudit pa{};
    pa.x = x;
    pa.y = y;
    pa.hausdorff = h;
    pa.d_xy = m(a[x], a[y]);
    pa.almost_term = dist_point_set(a[y], images[x], m).distance;
    const double alpha = p.alpha(x, y);
    pa.lhs_log = alpha > 0 ? std::log(alpha) + theta.log_value(h) : -INFINITY;
    const double arg = pa.d_xy + p.lambda * pa.almost_term;
    pa.rhs_unit_log = theta.log_value(arg);
    pa.constraining = pa.lhs_log > 0;

    if (arg <= 0.0) {
      // Theta is undefined at 0; with H > 0 no exponent can help.
      pa.ok = false;
      pa.k_required = INFINITY;
      audit.structural_violations.push_back(audit.pairs.size());
    } else {
      pa.k_required = pa.constraining ? pa.lhs_log / pa.rhs_unit_log : 0.0;
      pa.ok = pa.lhs_log <= p.k * pa.rhs_unit_log + opts.tol;
    }
    if (!pa.ok) audit.holds = false;
    if (pa.constraining && (!audit.k_min || pa.k_required > *audit.k_min)) {
      audit.k_min = pa.k_required;
      audit.worst = audit.pairs.size();
    }
    audit.pairs.push_back(pa);
  };

  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      audit_pair(domain[i], domain[j]);
      if (opts.order == PairOrder::Ordered) audit_pair(domain[j], domain[i]);
    }
  }
  return audit;
}

ContractionAudit audit_single_valued(std::span<const std::size_t> f, const Metric& m,
                                     const Theta& theta, const ContractionParams& p,
                                     const PointSet& a, const PointSet& b,
                                     const AuditOptions& opts, std::span<const std::size_t> a0) {
  return audit_contraction(MultiMap::singletons(f, b.size()), m, theta, p, a, b, opts, a0);
}

}  // namespace bpp
