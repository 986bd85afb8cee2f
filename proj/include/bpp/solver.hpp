#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bpp/contraction.hpp"
#include "bpp/instance.hpp"
#include "bpp/proximal.hpp"

namespace bpp {

// Every structural hypothesis of the existence theorem, audited on one instance.
struct HypothesisAudit {
  ProximalPairing pairing;
  RangeReport range;
  PairPropertyReport weak_p;
  PairPropertyReport p;  // informational; only weak-P is required
  AdmissibilityReport admissible;
  ContractionAudit contraction;

  bool a0_nonempty() const { return !pairing.a0.empty(); }
  bool all_pass() const {
    return a0_nonempty() && range.holds && weak_p.holds && admissible.holds && contraction.holds;
  }
};

HypothesisAudit audit_hypotheses(const Instance& inst);

enum class Outcome { Converged, MaxIter, Stalled, HypothesisViolation };

std::string to_string(Outcome outcome);

// One step of the proximal Picard iteration. Step n holds x_n, the image point
// y_n chosen in F x_n, and the move to x_{n+1}. The final step of a converged
// run has no successor (has_next = false).
struct TraceStep {
  std::uint64_t n = 0;
  std::size_t x = 0;       // A index of x_n
  std::size_t y = 0;       // B index of y_n
  bool has_next = false;
  std::size_t x_next = 0;  // A index of x_{n+1}
  double d_step = 0.0;     // d(x_n, x_{n+1})
  double d_y = 0.0;        // d(y_{n-1}, y_n), zero at n = 0
  double gap = 0.0;        // D(x_n, F x_n) - d(A, B)
  bool alpha_ok = true;    // alpha(x_n, x_{n+1}) >= 1
  double bound = 0.0;      // Theta^{-1}(Theta(d(x_0, x_1))^{k^n})
};

struct IterationTrace {
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::MaxIter;
  std::string detail;
  // The decay bound follows from the hypotheses only when the almost term
  // lambda * D(x_n, F x_{n-1}) <= lambda * d(A, B) vanishes, i.e. lambda = 0
  // or d(A, B) = 0.
  bool decay_applicable = false;
};

struct BppResult {
  std::size_t index = 0;  // A index of the returned point
  Point point;
  double gap = 0.0;  // D(point, F point) - d(A, B)
  IterationTrace trace;
  bool certified = false;  // every hypothesis audit passed and alpha held along the run
  std::optional<HypothesisAudit> audits;
};

struct SolveOptions {
  bool run_audits = true;
  bool keep_trace = true;  // false keeps only the last step
};

// Proximal Picard iteration from the given seeds. Throws InvalidArgument when
// the seeds violate their preconditions (x0, x1 in A0, y0 in F x0,
// d(x1, y0) = d(A, B), alpha(x0, x1) >= 1).
BppResult solve(const Instance& inst, const Seeds& seeds, const SolveOptions& opts = {});

// Uses inst.seeds; throws InvalidArgument when the instance has none.
BppResult solve(const Instance& inst, const SolveOptions& opts = {});

// Fixed-point mode (A = B). x1 is the first point of F x0 with
// alpha(x0, x1) >= 1. Throws InvalidArgument if A and B differ or no such
// point exists.
BppResult solve_fixed_point(const Instance& inst, std::size_t x0, const SolveOptions& opts = {});

BppResult solve_fixed_point(const PointSet& x, const MultiMap& f, const Metric& m,
                            const Theta& theta, const ContractionParams& p, std::size_t x0,
                            const Tolerances& tol = {}, const SolveOptions& opts = {});

struct UniquenessReport {
  bool condition_h = false;     // alpha >= 1 between every two listed points
  bool unique_expected = false; // condition H and the contraction audit both hold
  bool consistent = true;       // false when uniqueness is expected but several points exist
  std::string diagnostic;
};

UniquenessReport check_uniqueness_H(std::span<const std::size_t> bpps, const Instance& inst,
                                    const ContractionAudit& contraction);

}  // namespace bpp
