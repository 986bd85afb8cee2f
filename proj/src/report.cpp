#include "bpp/report.hpp"

#include <random>

#include "bpp/instance_io.hpp"

namespace bpp {

using nlohmann::json;

namespace {

json header(const Instance& inst) {
  json h;
  h["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  h["instance"] = {{"name", inst.name}, {"digest", instance_digest(inst)}};
  h["tolerances"] = {{"eps_dup", inst.tol.eps_dup},   {"eps_prox", inst.tol.eps_prox},
                     {"eps_stop", inst.tol.eps_stop}, {"eps_step", inst.tol.eps_step},
                     {"max_iter", inst.tol.max_iter}};
  return h;
}

json points_of(const PointSet& set, const std::vector<std::size_t>& idx) {
  json arr = json::array();
  for (std::size_t i : idx) arr.push_back(set[i].coords);
  return arr;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json pair_witnesses(const PairPropertyReport& r, const Instance& inst) {
  json arr = json::array();
  for (const auto& w : r.witnesses) {
    arr.push_back({{"x1", inst.a[w.x1].coords},
                   {"y1", inst.b[w.y1].coords},
                   {"x2", inst.a[w.x2].coords},
                   {"y2", inst.b[w.y2].coords},
                   {"d_x", w.d_x},
                   {"d_y", w.d_y}});
  }
  return arr;
}

json contraction_json(const ContractionAudit& c, const Instance& inst, const AuditOptions& opts) {
  json j;
  j["order"] = to_string(opts.order);
  j["scope"] = to_string(opts.scope);
  j["holds"] = c.holds;
  j["k"] = inst.params.k;
  j["lambda"] = inst.params.lambda;
  j["k_min"] = optional_number(c.k_min);
  j["audited_pairs"] = c.pairs.size();
  j["structural_violations"] = c.structural_violations.size();
  if (c.worst) {
    const PairAudit& w = c.pairs[*c.worst];
    j["worst_pair"] = {{"x", inst.a[w.x].coords},
                       {"y", inst.a[w.y].coords},
                       {"hausdorff", w.hausdorff},
                       {"d_xy", w.d_xy},
                       {"almost_term", w.almost_term},
                       {"k_required", w.k_required}};
  } else {
    j["worst_pair"] = nullptr;
  }
  json failing = json::array();
  for (const auto& p : c.pairs) {
    if (!p.ok) failing.push_back({{"x", inst.a[p.x].coords}, {"y", inst.a[p.y].coords}, {"k_required", p.k_required}});
  }
  j["failing_pairs"] = failing;
  return j;
}

}  // namespace

json analyze_report(const Instance& inst) {
  json r = header(inst);
  r["command"] = "analyze";
  const ProximalPairing pp = proximal_pairs(inst.a, inst.b, inst.metric, inst.tol.eps_prox);
  r["metric"] = to_string(inst.metric.kind());
  r["d_ab"] = pp.d_ab;
  r["A0"] = points_of(inst.a, pp.a0);
  r["B0"] = points_of(inst.b, pp.b0);
  json pairs = json::array();
  for (const auto& [x, y] : pp.pairs) pairs.push_back({inst.a[x].coords, inst.b[y].coords});
  r["proximal_pairs"] = pairs;

  std::vector<std::vector<Point>> images;
  for (std::size_t x = 0; x < inst.a.size(); ++x) images.push_back(inst.f.image_points(x, inst.b));
  json table = json::array();
  for (std::size_t x = 0; x < inst.a.size(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < inst.a.size(); ++y) row.push_back(hausdorff(images[x], images[y], inst.metric));
    table.push_back(row);
  }
  r["hausdorff_table"] = table;
  return r;
}

json check_report(const Instance& inst) {
  json r = header(inst);
  r["command"] = "check";
  const HypothesisAudit h = audit_hypotheses(inst);
  r["d_ab"] = h.pairing.d_ab;
  r["a0_nonempty"] = h.a0_nonempty();
  r["range_condition"] = {{"holds", h.range.holds}, {"violators", json::array()}};
  for (const auto& v : h.range.violators) {
    r["range_condition"]["violators"].push_back({{"a", inst.a[v.a].coords}, {"b", inst.b[v.b].coords}});
  }
  r["weak_p"] = {{"holds", h.weak_p.holds}, {"violations", h.weak_p.violations},
                 {"witnesses", pair_witnesses(h.weak_p, inst)}};
  r["p_property"] = {{"holds", h.p.holds}, {"violations", h.p.violations},
                     {"witnesses", pair_witnesses(h.p, inst)}};
  json adm = {{"holds", h.admissible.holds}, {"violations", h.admissible.violations}};
  adm["witnesses"] = json::array();
  for (const auto& w : h.admissible.witnesses) {
    adm["witnesses"].push_back({{"x1", inst.a[w.x1].coords}, {"x2", inst.a[w.x2].coords},
                                {"u1", inst.a[w.u1].coords}, {"u2", inst.a[w.u2].coords},
                                {"alpha_u", w.alpha_u}});
  }
  r["alpha_proximal_admissible"] = adm;
  r["contraction"] = contraction_json(h.contraction, inst, inst.audit);

  AuditOptions other = inst.audit;
  other.scope = inst.audit.scope == AuditScope::Proximal ? AuditScope::WholeDomain : AuditScope::Proximal;
  const ContractionAudit alt = audit_contraction(inst.f, inst.metric, inst.theta, inst.params,
                                                 inst.a, inst.b, other, h.pairing.a0);
  r["contraction_alt_scope"] = contraction_json(alt, inst, other);
  r["theta"] = inst.theta.name();
  r["alpha_subsequential"] = inst.alpha_subsequential_assumed ? "assumed (unchecked)" : "not assumed";
  // Along the iteration D(x_n, F x_{n-1}) = d(A, B), so the almost term only
  // drops out of the contraction when lambda * d(A, B) = 0.
  r["almost_term_vanishes"] = inst.params.lambda * h.pairing.d_ab <= inst.tol.eps_prox;
  r["all_hypotheses_hold"] = h.all_pass();
  return r;
}

json solve_report(const Instance& inst, const BppResult& res, const OracleReport* oracle) {
  json r = header(inst);
  r["command"] = "solve";
  r["outcome"] = to_string(res.trace.outcome);
  r["detail"] = res.trace.detail;
  r["point"] = res.point.coords;
  r["point_index"] = res.index;
  r["gap"] = res.gap;
  r["certified"] = res.certified;
  r["decay_applicable"] = res.trace.decay_applicable;
  r["iterations"] = res.trace.steps.empty() ? 0 : res.trace.steps.back().n;
  json steps = json::array();
  for (const TraceStep& s : res.trace.steps) {
    json st = {{"n", s.n},
               {"x", inst.a[s.x].coords},
               {"y", inst.b[s.y].coords},
               {"gap", s.gap},
               {"d_y", s.d_y},
               {"bound", s.bound},
               {"alpha_ok", s.alpha_ok}};
    if (s.has_next) {
      st["x_next"] = inst.a[s.x_next].coords;
      st["d_step"] = s.d_step;
    }
    steps.push_back(st);
  }
  r["trace"] = steps;
  if (res.audits) r["hypotheses_hold"] = res.audits->all_pass();
  if (oracle) {
    r["oracle"] = {{"bpps", points_of(inst.a, oracle->bpps)},
                   {"contains_result", oracle->contains(res.index)}};
  }
  return r;
}

json oracle_report(const Instance& inst, const OracleReport& oracle) {
  json r = header(inst);
  r["command"] = "oracle";
  r["d_ab"] = oracle.d_ab;
  r["bpps"] = points_of(inst.a, oracle.bpps);
  json gaps = json::array();
  for (std::size_t x = 0; x < inst.a.size(); ++x) {
    gaps.push_back({{"x", inst.a[x].coords}, {"gap", oracle.gaps[x]}});
  }
  r["gaps"] = gaps;
  return r;
}

double empirical_lipschitz(const bvp::BvpProblem& prob, std::size_t pairs, std::uint64_t seed) {
  const bvp::IntegralOperator op(prob);
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    bvp::GridFunction x(prob.n + 1), y(prob.n + 1);
    // Alternate pure noise with small constant shifts, the latter being where
    // the sup of the row integrals is approached.
    const double shift = (p % 2) ? 1e-3 + unit() : 0.0;
    for (std::size_t i = 0; i <= prob.n; ++i) {
      x[i] = 4 * unit() - 2;
      y[i] = (p % 2) ? x[i] + shift : 4 * unit() - 2;
    }
    const double dxy = bvp::sup_norm_diff(x, y);
    if (dxy == 0.0) continue;
    worst = std::max(worst, bvp::sup_norm_diff(op.apply(x), op.apply(y)) / dxy);
  }
  return worst;
}

BvpRunSummary run_bvp(const bvp::BvpProblem& prob, std::uint64_t seed, std::size_t lipschitz_pairs) {
  BvpRunSummary run;
  run.problem = prob;
  run.solution = bvp::solve_bvp(prob);
  run.residual = bvp::residual_check(run.solution.solution, prob);
  run.lipschitz_pairs = lipschitz_pairs;
  run.lipschitz_estimate = empirical_lipschitz(prob, lipschitz_pairs, seed);
  run.max_row_sum = bvp::IntegralOperator(prob).max_row_sum();
  return run;
}

json bvp_report(const BvpRunSummary& run) {
  json r;
  r["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  r["command"] = "bvp";
  const auto& p = run.problem;
  r["problem"] = {{"f", p.f.describe()},
                  {"n", p.n},
                  {"quadrature", bvp::to_string(p.quadrature)},
                  {"eps_fix", p.eps_fix},
                  {"max_iter", p.max_iter}};
  r["converged"] = run.solution.converged;
  r["iterations"] = run.solution.iterations;
  r["history"] = run.solution.history;
  const auto& x = run.solution.solution;
  r["x_mid"] = x[p.n / 2];
  r["residual"] = run.residual;
  r["contraction"] = {{"empirical_lipschitz", run.lipschitz_estimate},
                      {"pairs", run.lipschitz_pairs},
                      {"max_row_sum", run.max_row_sum},
                      {"bound", 0.125 * p.f.lipschitz()}};
  return r;
}

}  // namespace bpp
