#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bpp/mapping.hpp"
#include "bpp/metric.hpp"
#include "bpp/theta.hpp"

namespace bpp {

// k in (0, 1), lambda >= 0, alpha.
struct ContractionParams {
  double k = 0.5;
  double lambda = 0.0;
  AlphaMap alpha;

  // Throws InvalidArgument unless 0 < k < 1 and lambda >= 0.
  void validate() const;
};

// UNORDERED audits each {x, y} once as (x, y) = (A[i], A[j]) with i < j;
// ORDERED audits both orientations. The almost term lambda * D(y, Fx) makes
// the inequality orientation dependent.
enum class PairOrder { Unordered, Ordered };

// WHOLE_DOMAIN audits all of A; PROXIMAL audits only pairs inside A0, which
// is where the proximal iteration evaluates the inequality.
enum class AuditScope { WholeDomain, Proximal };

std::string to_string(PairOrder order);
std::string to_string(AuditScope scope);
PairOrder pair_order_from_string(const std::string& s);
AuditScope audit_scope_from_string(const std::string& s);

struct AuditOptions {
  PairOrder order = PairOrder::Unordered;
  AuditScope scope = AuditScope::WholeDomain;
  double tol = 1e-12;  // slack on the log-domain comparison
};

struct PairAudit {
  std::size_t x, y;
  double hausdorff;    // H(Fx, Fy)
  double d_xy;         // d(x, y)
  double almost_term;  // D(y, Fx)
  double lhs_log;      // ln(alpha(x, y) * Theta(H)), -inf when alpha = 0
  double rhs_unit_log; // ln Theta(d + lambda * D); the RHS is k times this
  bool constraining;   // lhs_log > 0, so the pair bounds k from below
  double k_required;   // lhs_log / rhs_unit_log when constraining
  bool ok;             // the inequality holds at the audited k
};

struct ContractionAudit {
  bool holds = true;
  std::optional<double> k_min;  // none when no pair constrains k
  std::optional<std::size_t> worst;  // index into `pairs`
  std::vector<PairAudit> pairs;  // audited pairs with H(Fx, Fy) > 0
  // Pairs with H > 0 but d + lambda * D = 0: no k can satisfy them.
  std::vector<std::size_t> structural_violations;
};

// Audits alpha(x,y) Theta(H(Fx,Fy)) <= [Theta(d(x,y) + lambda D(y,Fx))]^k.
// `a0` is required for AuditScope::Proximal and ignored otherwise.
ContractionAudit audit_contraction(const MultiMap& f, const Metric& m, const Theta& theta,
                                   const ContractionParams& p, const PointSet& a,
                                   const PointSet& b, const AuditOptions& opts = {},
                                   std::span<const std::size_t> a0 = {});

// Single-valued form: H is replaced by d(Fx, Fy).
ContractionAudit audit_single_valued(std::span<const std::size_t> f, const Metric& m,
                                     const Theta& theta, const ContractionParams& p,
                                     const PointSet& a, const PointSet& b,
                                     const AuditOptions& opts = {},
                                     std::span<const std::size_t> a0 = {});

}  // namespace bpp
