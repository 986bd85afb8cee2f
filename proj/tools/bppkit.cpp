// bppkit: audit, solve and cross-check best proximity point instances, and
// run the Green's-function Picard solver for -x'' = f(t, x), x(0) = x(1) = 0.
//
// Exit codes: 0 success, 1 usage or input error, 2 hypothesis violation,
// 3 non-convergence.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bpp/bvp.hpp"
#include "bpp/error.hpp"
#include "bpp/instance_io.hpp"
#include "bpp/oracle.hpp"
#include "bpp/report.hpp"
#include "bpp/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitNoConvergence = 3;

struct CommonOptions {
  std::string instance;
  bool json = false;
  std::optional<double> eps_prox;
  std::optional<double> eps_stop;
  std::optional<std::uint64_t> max_iter;
};

void add_instance_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("instance,--instance", o.instance, "Instance JSON file");
  cmd->add_flag("--json", o.json, "Print the machine-readable report");
  cmd->add_option("--eps-prox", o.eps_prox, "Tolerance for d(x, y) = d(A, B)");
  cmd->add_option("--eps-stop", o.eps_stop, "Gap tolerance that ends the iteration");
  cmd->add_option("--max-iter", o.max_iter, "Iteration limit");
}

bpp::Instance load(const CommonOptions& o) {
  if (o.instance.empty()) throw bpp::InvalidArgument("no instance file given (use --instance PATH)");
  bpp::Instance inst = bpp::load_instance(o.instance);
  if (o.eps_prox) inst.tol.eps_prox = *o.eps_prox;
  if (o.eps_stop) inst.tol.eps_stop = *o.eps_stop;
  if (o.max_iter) inst.tol.max_iter = *o.max_iter;
  return inst;
}

std::string pts(const nlohmann::json& arr) {
  std::string out = "{";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out += (i ? ", " : "");
    std::string p = "(";
    for (std::size_t k = 0; k < arr[i].size(); ++k) {
      std::ostringstream os;
      os << arr[i][k].get<double>();
      p += (k ? "," : "") + os.str();
    }
    out += p + ")";
  }
  return out + "}";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int run_analyze(const CommonOptions& o) {
  const bpp::Instance inst = load(o);
  const auto r = bpp::analyze_report(inst);
  if (o.json) {
    std::cout << r.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "instance " << inst.name << " (" << r["metric"].get<std::string>() << ")\n"
            << "d(A,B) = " << r["d_ab"].get<double>() << '\n'
            << "A0 = " << pts(r["A0"]) << '\n'
            << "B0 = " << pts(r["B0"]) << '\n'
            << "H(Fx,Fy):\n";
  for (const auto& row : r["hausdorff_table"]) {
    for (const auto& v : row) std::cout << std::setw(10) << v.get<double>();
    std::cout << '\n';
  }
  return kExitOk;
}

void print_contraction(const nlohmann::json& c) {
  std::cout << "  contraction [" << c["order"].get<std::string>() << ", scope "
            << c["scope"].get<std::string>() << "]: " << (c["holds"].get<bool>() ? "holds" : "FAILS")
            << " at k = " << c["k"].get<double>() << ", lambda = " << c["lambda"].get<double>();
  if (c["k_min"].is_null()) {
    std::cout << "; no pair constrains k\n";
  } else {
    std::cout << "; k_min = " << std::setprecision(10) << c["k_min"].get<double>()
              << std::setprecision(6) << '\n';
  }
}

int run_check(const CommonOptions& o) {
  const bpp::Instance inst = load(o);
  const auto r = bpp::check_report(inst);
  const bool ok = r["all_hypotheses_hold"].get<bool>();
  if (o.json) {
    std::cout << r.dump(2) << '\n';
    return ok ? kExitOk : kExitHypothesis;
  }
  std::cout << "instance " << inst.name << ", Theta = " << r["theta"].get<std::string>() << '\n'
            << "  d(A,B) = " << r["d_ab"].get<double>() << ", A0 nonempty: "
            << yes_no(r["a0_nonempty"].get<bool>()) << '\n'
            << "  F(A0) in B0: " << yes_no(r["range_condition"]["holds"].get<bool>()) << '\n'
            << "  weak P-property: " << yes_no(r["weak_p"]["holds"].get<bool>()) << '\n'
            << "  P-property: " << yes_no(r["p_property"]["holds"].get<bool>());
  if (!r["p_property"]["witnesses"].empty()) {
    const auto& w = r["p_property"]["witnesses"][0];
    std::cout << " (witness: d(x1,x2) = " << w["d_x"].get<double>()
              << " vs d(y1,y2) = " << w["d_y"].get<double>() << ")";
  }
  std::cout << '\n'
            << "  alpha-proximal admissible: " << yes_no(r["alpha_proximal_admissible"]["holds"].get<bool>())
            << '\n';
  print_contraction(r["contraction"]);
  print_contraction(r["contraction_alt_scope"]);
  std::cout << "  alpha-subsequential property: " << r["alpha_subsequential"].get<std::string>() << '\n'
            << "all hypotheses hold: " << yes_no(ok) << '\n';
  if (!r["almost_term_vanishes"].get<bool>()) {
    std::cout << "note: lambda * d(A,B) > 0, so the almost term stays in the contraction along the\n"
                 "      iteration; the audits above do not guarantee convergence or the decay bound\n";
  }
  return ok ? kExitOk : kExitHypothesis;
}

int run_solve(const CommonOptions& o, bool fixed_point, std::optional<std::size_t> x0, bool with_oracle) {
  const bpp::Instance inst = load(o);
  bpp::BppResult res;
  try {
    if (fixed_point) {
      const std::size_t start = x0 ? *x0 : (inst.seeds ? inst.seeds->x0 : 0);
      res = bpp::solve_fixed_point(inst, start);
    } else {
      bpp::Seeds seeds = inst.seeds ? *inst.seeds : bpp::Seeds{};
      if (!inst.seeds && !x0) throw bpp::InvalidArgument("instance has no seeds");
      if (x0) seeds.x0 = *x0;
      res = bpp::solve(inst, seeds);
    }
  } catch (const bpp::InvalidArgument& e) {
    std::cerr << "seed preconditions fail: " << e.what() << '\n';
    return kExitHypothesis;
  }
  std::optional<bpp::OracleReport> oracle;
  if (with_oracle) oracle = bpp::oracle_bpp(inst);
  const auto r = bpp::solve_report(inst, res, oracle ? &*oracle : nullptr);

  int code = kExitOk;
  if (res.trace.outcome == bpp::Outcome::HypothesisViolation) code = kExitHypothesis;
  if (res.trace.outcome == bpp::Outcome::MaxIter || res.trace.outcome == bpp::Outcome::Stalled) {
    code = kExitNoConvergence;
  }
  if (o.json) {
    std::cout << r.dump(2) << '\n';
    return code;
  }
  std::cout << "outcome: " << r["outcome"].get<std::string>();
  if (!res.trace.detail.empty()) std::cout << " (" << res.trace.detail << ")";
  std::cout << "\npoint: " << bpp::to_string(res.point) << ", gap = " << res.gap
            << ", iterations = " << r["iterations"].get<std::uint64_t>() << '\n'
            << "certified: " << yes_no(res.certified)
            << ", decay bound applicable: " << yes_no(res.trace.decay_applicable) << '\n';
  std::cout << "  n  x_n            y_n            d(x_n,x_n+1)  gap          bound\n";
  for (const auto& s : res.trace.steps) {
    std::cout << std::setw(3) << s.n << "  " << std::left << std::setw(14) << bpp::to_string(inst.a[s.x])
              << ' ' << std::setw(14) << bpp::to_string(inst.b[s.y]) << std::right << ' '
              << std::setw(12) << (s.has_next ? std::to_string(s.d_step) : std::string("-")) << "  "
              << std::setw(11) << s.gap << "  " << s.bound << '\n';
  }
  if (oracle) {
    std::cout << "oracle best proximity points: " << pts(r["oracle"]["bpps"]) << " (result "
              << (r["oracle"]["contains_result"].get<bool>() ? "agrees" : "DISAGREES") << ")\n";
  }
  return code;
}

int run_oracle(const CommonOptions& o) {
  const bpp::Instance inst = load(o);
  const auto oracle = bpp::oracle_bpp(inst);
  const auto r = bpp::oracle_report(inst, oracle);
  if (o.json) {
    std::cout << r.dump(2) << '\n';
  } else {
    std::cout << "d(A,B) = " << oracle.d_ab << '\n' << "best proximity points: " << pts(r["bpps"]) << '\n';
  }
  return kExitOk;
}

struct BvpOptions {
  std::string f = "sin";
  std::size_t n = 128;
  std::string quadrature = "simpson";
  double eps_fix = 1e-10;
  std::uint64_t max_iter = 1000;
  std::uint64_t seed = 0;
  std::string csv;
  bool json = false;
};

int run_bvp(const BvpOptions& o) {
  bpp::bvp::BvpProblem prob;
  prob.f = bpp::bvp::Forcing::parse(o.f);
  prob.n = o.n;
  prob.quadrature = bpp::bvp::quadrature_from_string(o.quadrature);
  prob.eps_fix = o.eps_fix;
  prob.max_iter = o.max_iter;
  prob.validate();
  const auto run = bpp::run_bvp(prob, o.seed);
  if (!o.csv.empty()) {
    std::ofstream out(o.csv);
    if (!out) throw bpp::Error("cannot write '" + o.csv + "'");
    out << "t,x\n" << std::setprecision(17);
    for (std::size_t i = 0; i <= prob.n; ++i) out << prob.node(i) << ',' << run.solution.solution[i] << '\n';
  }
  const int code = run.solution.converged ? kExitOk : kExitNoConvergence;
  if (o.json) {
    std::cout << bpp::bvp_report(run).dump(2) << '\n';
    return code;
  }
  std::cout << std::setprecision(12) << "f = " << prob.f.describe() << ", N = " << prob.n
            << ", quadrature = " << bpp::bvp::to_string(prob.quadrature) << '\n'
            << "converged: " << yes_no(run.solution.converged) << " after " << run.solution.iterations
            << " iterations\n"
            << "x(1/2) = " << run.solution.solution[prob.n / 2] << '\n'
            << "residual = " << run.residual << '\n'
            << "empirical Lipschitz = " << run.lipschitz_estimate << " over " << run.lipschitz_pairs
            << " pairs (max row sum " << run.max_row_sum << ", bound " << 0.125 * prob.f.lipschitz() << ")\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best proximity points of multivalued almost Theta-contractions"};
  app.require_subcommand(1);

  CommonOptions analyze_o, check_o, solve_o, oracle_o;
  auto* analyze = app.add_subcommand("analyze", "d(A,B), A0, B0 and the H(Fx,Fy) table");
  add_instance_options(analyze, analyze_o);
  auto* check = app.add_subcommand("check", "Audit every hypothesis, including k_min");
  add_instance_options(check, check_o);

  auto* solve = app.add_subcommand("solve", "Run the proximal Picard iteration");
  add_instance_options(solve, solve_o);
  bool fixed_point = false, with_oracle = false;
  std::optional<std::size_t> x0;
  solve->add_flag("--fixed-point", fixed_point, "Fixed-point mode (A = B)");
  solve->add_option("--x0", x0, "Override the starting point (A index)");
  solve->add_flag("--oracle", with_oracle, "Compare the result with the brute-force oracle");

  auto* oracle = app.add_subcommand("oracle", "Brute-force best proximity points");
  add_instance_options(oracle, oracle_o);

  BvpOptions bvp_o;
  auto* bvp = app.add_subcommand("bvp", "Solve -x'' = f(t,x), x(0) = x(1) = 0 by Picard iteration");
  bvp->add_option("--f", bvp_o.f, "constant:C | sin | affine:A[:G0,G1,...] | scaled_sin:MU");
  bvp->add_option("--n", bvp_o.n, "Number of grid intervals");
  bvp->add_option("--quadrature", bvp_o.quadrature, "simpson | trapezoid");
  bvp->add_option("--eps-fix", bvp_o.eps_fix, "Picard step tolerance");
  bvp->add_option("--max-iter", bvp_o.max_iter, "Iteration limit");
  bvp->add_option("--seed", bvp_o.seed, "Seed for the Lipschitz sampling");
  bvp->add_option("--csv", bvp_o.csv, "Write (t, x) to this CSV file");
  bvp->add_flag("--json", bvp_o.json, "Print the machine-readable report");

  bpp::GenProfile prof;
  std::uint64_t gen_seed = 0;
  std::string gen_metric = "L1", gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random lattice instance");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--n-a", prof.n_a, "Points in A");
  gen->add_option("--n-b", prof.n_b, "Points in B");
  gen->add_option("--dim", prof.dim, "Dimension");
  gen->add_option("--metric", gen_metric, "L1 | L2 | LINF");
  gen->add_option("--extent", prof.extent, "Coordinates lie in [-extent, extent]");
  gen->add_option("--image-size", prof.image_size, "Maximum image size");
  gen->add_option("--k", prof.k, "Contraction exponent");
  gen->add_option("--lambda", prof.lambda, "Almost-contraction weight");
  gen->add_flag("--force-weak-p", prof.force_weak_p, "Rejection-sample until weak P holds");
  gen->add_flag("--same-sets", prof.same_sets, "B = A");
  gen->add_flag("--range-respecting", prof.range_respecting, "Draw images of A0 from B0");
  gen->add_option("--out", gen_out, "Write the instance here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(analyze_o);
    if (*check) return run_check(check_o);
    if (*solve) return run_solve(solve_o, fixed_point, x0, with_oracle);
    if (*oracle) return run_oracle(oracle_o);
    if (*bvp) return run_bvp(bvp_o);
    if (*gen) {
      prof.metric = bpp::metric_kind_from_string(gen_metric);
      const auto g = bpp::gen_instance(gen_seed, prof);
      if (g.budget_exhausted) {
        std::cerr << "warning: rejection budget exhausted after " << g.attempts
                  << " attempts; weak P-property does not hold\n";
      }
      if (gen_out.empty()) {
        std::cout << bpp::instance_to_json(g.instance).dump(2) << '\n';
      } else {
        bpp::save_instance(g.instance, gen_out);
      }
      return kExitOk;
    }
  } catch (const bpp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
