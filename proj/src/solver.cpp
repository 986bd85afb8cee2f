#include "bpp/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "bpp/error.hpp"

namespace bpp {

bool Instance::same_sets() const {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!approx_equal(a[i], b[i], tol.eps_dup)) return false;
  }
  return true;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Converged: return "CONVERGED";
    case Outcome::MaxIter: return "MAX_ITER";
    case Outcome::Stalled: return "STALLED";
    case Outcome::HypothesisViolation: return "HYPOTHESIS_VIOLATION";
  }
  return "?";
}

HypothesisAudit audit_hypotheses(const Instance& inst) {
  HypothesisAudit h;
  h.pairing = proximal_pairs(inst.a, inst.b, inst.metric, inst.tol.eps_prox);
  h.range = check_range_condition(inst.f, h.pairing);
  h.weak_p = check_weak_P(h.pairing, inst.a, inst.b, inst.metric, inst.tol.eps_prox);
  h.p = check_P(h.pairing, inst.a, inst.b, inst.metric, inst.tol.eps_prox);
  h.admissible = check_alpha_proximal_admissible(inst.f, inst.params.alpha, h.pairing);
  h.contraction = audit_contraction(inst.f, inst.metric, inst.theta, inst.params, inst.a, inst.b,
                                    inst.audit, h.pairing.a0);
  return h;
}

namespace {

class Iteration {
 public:
  Iteration(const Instance& inst, const ProximalPairing& pp)
      : inst_(inst), pp_(pp), images_(inst.a.size()) {}

  const std::vector<Point>& image(std::size_t x) {
    if (images_[x].empty()) images_[x] = inst_.f.image_points(x, inst_.b);
    return images_[x];
  }

  double gap(std::size_t x) {
    return dist_point_set(inst_.a[x], image(x), inst_.metric).distance - pp_.d_ab;
  }

  // y_n: the member of F x nearest to y_{n-1}, as a B index.
  std::size_t nearest_image(std::size_t x, const Point& target) {
    const auto hit = dist_point_set(target, image(x), inst_.metric);
    return inst_.f.image(x)[hit.index];
  }

  // x_{n+1}: the proximal partner of y nearest to x, if any.
  std::optional<std::size_t> partner(std::size_t y, std::size_t x) const {
    std::optional<std::size_t> best;
    double best_d = INFINITY;
    for (std::size_t u : pp_.partners.at(y)) {
      const double d = inst_.metric(inst_.a[x], inst_.a[u]);
      if (d < best_d) {
        best_d = d;
        best = u;
      }
    }
    return best;
  }

 private:
  const Instance& inst_;
  const ProximalPairing& pp_;
  std::vector<std::vector<Point>> images_;
};

void check_seeds(const Instance& inst, const ProximalPairing& pp, const Seeds& s) {
  if (s.x0 >= inst.a.size() || s.x1 >= inst.a.size() || s.y0 >= inst.b.size()) {
    throw InvalidArgument("seed index out of range");
  }
  if (pp.a0.empty()) throw InvalidArgument("A0 is empty; no proximal iteration exists");
  if (!pp.in_a0(s.x0)) throw InvalidArgument("seed x0 is not in A0");
  if (!pp.in_a0(s.x1)) throw InvalidArgument("seed x1 is not in A0");
  if (!inst.f.contains(s.x0, s.y0)) throw InvalidArgument("seed y0 is not in F x0");
  const double d = inst.metric(inst.a[s.x1], inst.b[s.y0]);
  if (std::abs(d - pp.d_ab) > pp.eps_prox) {
    std::ostringstream os;
    os << "seed pair (x1, y0) is not proximal: d(x1, y0) = " << d << " but d(A, B) = " << pp.d_ab;
    throw InvalidArgument(os.str());
  }
  if (inst.params.alpha(s.x0, s.x1) < 1.0) throw InvalidArgument("seed requires alpha(x0, x1) >= 1");
}

}  // namespace

BppResult solve(const Instance& inst, const Seeds& seeds, const SolveOptions& opts) {
  inst.params.validate();
  BppResult result;
  if (opts.run_audits) {
    result.audits = audit_hypotheses(inst);
  }
  const ProximalPairing pp = result.audits
                                 ? result.audits->pairing
                                 : proximal_pairs(inst.a, inst.b, inst.metric, inst.tol.eps_prox);
  check_seeds(inst, pp, seeds);

  const Metric& m = inst.metric;
  const double k = inst.params.k;
  const double d01 = m(inst.a[seeds.x0], inst.a[seeds.x1]);
  const double log_theta01 = inst.theta.log_value(d01);
  auto bound = [&](std::uint64_t n) {
    return inst.theta.inverse_log(log_theta01 * std::pow(k, static_cast<double>(n)));
  };

  Iteration it(inst, pp);
  IterationTrace& trace = result.trace;
  auto record = [&](TraceStep step) {
    if (!opts.keep_trace) trace.steps.clear();
    trace.steps.push_back(step);
  };

  TraceStep first;
  first.n = 0;
  first.x = seeds.x0;
  first.y = seeds.y0;
  first.has_next = true;
  first.x_next = seeds.x1;
  first.d_step = d01;
  first.gap = it.gap(seeds.x0);
  first.alpha_ok = true;
  first.bound = d01;
  record(first);

  bool alpha_all_ok = true;
  std::size_t best_x = seeds.x0;
  double best_gap = first.gap;
  std::size_t prev_y = seeds.y0;
  std::size_t cur = seeds.x1;
  std::uint64_t n = 1;
  // The step is a function of (x_n, y_{n-1}); a repeated pair means a cycle.
  std::unordered_map<std::uint64_t, std::uint64_t> seen;

  for (;;) {
    const double g = it.gap(cur);
    if (g < best_gap) {
      best_gap = g;
      best_x = cur;
    }
    TraceStep step;
    step.n = n;
    step.x = cur;
    step.gap = g;
    step.bound = bound(n);

    if (g <= inst.tol.eps_stop) {
      step.y = inst.f.contains(cur, prev_y) ? prev_y : it.nearest_image(cur, inst.a[cur]);
      step.d_y = m(inst.b[prev_y], inst.b[step.y]);
      record(step);
      trace.outcome = Outcome::Converged;
      break;
    }
    if (n > inst.tol.max_iter) {
      step.y = it.nearest_image(cur, inst.b[prev_y]);
      step.d_y = m(inst.b[prev_y], inst.b[step.y]);
      record(step);
      trace.outcome = Outcome::MaxIter;
      trace.detail = "iteration limit reached";
      break;
    }

    const std::uint64_t state = static_cast<std::uint64_t>(cur) * inst.b.size() + prev_y;
    if (const auto [pos, fresh] = seen.emplace(state, n); !fresh) {
      step.y = it.nearest_image(cur, inst.b[prev_y]);
      step.d_y = m(inst.b[prev_y], inst.b[step.y]);
      record(step);
      trace.outcome = Outcome::Stalled;
      trace.detail = "the iteration cycles with period " + std::to_string(n - pos->second) +
                     " without closing the gap";
      break;
    }

    step.y = it.nearest_image(cur, inst.b[prev_y]);
    step.d_y = m(inst.b[prev_y], inst.b[step.y]);
    const auto next = it.partner(step.y, cur);
    if (!next) {
      record(step);
      trace.outcome = Outcome::HypothesisViolation;
      trace.detail = "y_" + std::to_string(n) + " = " + to_string(inst.b[step.y]) +
                     " has no proximal partner in A0 (F x_n is not inside B0)";
      break;
    }
    step.has_next = true;
    step.x_next = *next;
    step.d_step = m(inst.a[cur], inst.a[*next]);
    step.alpha_ok = inst.params.alpha(cur, *next) >= 1.0;
    alpha_all_ok = alpha_all_ok && step.alpha_ok;
    record(step);

    if (step.d_step <= inst.tol.eps_step && it.gap(*next) > inst.tol.eps_stop) {
      trace.outcome = Outcome::Stalled;
      trace.detail = "step length fell to the step tolerance without closing the gap";
      best_x = it.gap(*next) < best_gap ? *next : best_x;
      break;
    }
    prev_y = step.y;
    cur = *next;
    ++n;
  }

  result.index = trace.outcome == Outcome::Converged ? cur : best_x;
  result.point = inst.a[result.index];
  result.gap = it.gap(result.index);
  result.certified = result.audits && result.audits->all_pass() && alpha_all_ok;
  trace.decay_applicable =
      result.certified && (inst.params.lambda == 0.0 || pp.d_ab <= inst.tol.eps_prox);
  return result;
}

BppResult solve(const Instance& inst, const SolveOptions& opts) {
  if (!inst.seeds) throw InvalidArgument("instance has no seeds");
  return solve(inst, *inst.seeds, opts);
}

BppResult solve_fixed_point(const Instance& inst, std::size_t x0, const SolveOptions& opts) {
  if (!inst.same_sets()) throw InvalidArgument("fixed-point mode needs A = B");
  if (x0 >= inst.a.size()) throw InvalidArgument("seed x0 out of range");
  for (std::size_t y : inst.f.image(x0)) {
    if (inst.params.alpha(x0, y) >= 1.0) return solve(inst, Seeds{x0, y, y}, opts);
  }
  throw InvalidArgument("no x1 in F x0 with alpha(x0, x1) >= 1");
}

BppResult solve_fixed_point(const PointSet& x, const MultiMap& f, const Metric& m,
                            const Theta& theta, const ContractionParams& p, std::size_t x0,
                            const Tolerances& tol, const SolveOptions& opts) {
  Instance inst;
  inst.name = "fixed-point";
  inst.metric = m;
  inst.a = x;
  inst.b = x;
  inst.f = f;
  inst.theta = theta;
  inst.params = p;
  inst.tol = tol;
  return solve_fixed_point(inst, x0, opts);
}

UniquenessReport check_uniqueness_H(std::span<const std::size_t> bpps, const Instance& inst,
                                    const ContractionAudit& contraction) {
  UniquenessReport r;
  r.condition_h = true;
  std::ostringstream diag;
  for (std::size_t i = 0; i < bpps.size() && r.condition_h; ++i) {
    for (std::size_t j = 0; j < bpps.size(); ++j) {
      if (i != j && inst.params.alpha(bpps[i], bpps[j]) < 1.0) {
        r.condition_h = false;
        diag << "condition H fails: alpha(" << to_string(inst.a[bpps[i]]) << ", "
             << to_string(inst.a[bpps[j]]) << ") < 1; no uniqueness claim";
        break;
      }
    }
  }
  r.unique_expected = r.condition_h && contraction.holds;
  r.consistent = !r.unique_expected || bpps.size() <= 1;

  if (!r.condition_h) {
    // already described
  } else if (!contraction.holds) {
    diag << "condition H holds but the contraction audit fails; no uniqueness claim";
  } else if (bpps.size() <= 1) {
    diag << "condition H and the contraction audit hold; " << bpps.size()
         << " best proximity point(s) found, consistent with uniqueness";
  } else {
    const std::size_t x1 = bpps[0], x2 = bpps[1];
    const double almost = dist_point_set(inst.a[x2], inst.f.image_points(x1, inst.b), inst.metric)
                              .distance;
    diag << "condition H and the contraction audit hold, yet " << bpps.size()
         << " best proximity points exist; for x1 = " << to_string(inst.a[x1])
         << ", x2 = " << to_string(inst.a[x2]) << " the almost term lambda * D(x2, F x1) = "
         << inst.params.lambda * almost << " does not vanish, so the uniqueness chain"
         << " Theta(d(x1,x2)) <= Theta(d(x1,x2))^k does not close";
    if (contraction.k_min) {
      diag << " (audit k_min = " << *contraction.k_min << ", k = " << inst.params.k << ")";
    }
  }
  r.diagnostic = diag.str();
  return r;
}

}  // namespace bpp
