#pragma once

#include <string>

#include <json.hpp>

#include "bpp/bvp.hpp"
#include "bpp/instance.hpp"
#include "bpp/oracle.hpp"
#include "bpp/solver.hpp"

namespace bpp {

inline constexpr const char* kToolName = "bppkit";
inline constexpr const char* kToolVersion = "1.0.0";

// Machine-readable run reports. Every report carries the tool name and
// version, the instance digest and the tolerances used; identical inputs give
// byte-identical reports.

nlohmann::json analyze_report(const Instance& inst);

// All hypothesis audits, plus the contraction audit repeated over A0 so both
// exponents are visible.
nlohmann::json check_report(const Instance& inst);

nlohmann::json solve_report(const Instance& inst, const BppResult& result,
                            const OracleReport* oracle = nullptr);

nlohmann::json oracle_report(const Instance& inst, const OracleReport& oracle);

struct BvpRunSummary {
  bvp::BvpProblem problem;
  bvp::BvpSolution solution;
  double residual = 0.0;
  double lipschitz_estimate = 0.0;  // empirical, over random grid-function pairs
  std::size_t lipschitz_pairs = 0;
  double max_row_sum = 0.0;         // discrete bound on the contraction factor
};

// Runs the BVP and gathers the report numbers. Deterministic in `seed`.
BvpRunSummary run_bvp(const bvp::BvpProblem& prob, std::uint64_t seed, std::size_t lipschitz_pairs = 100);

// Empirical max ||Fx - Fy|| / ||x - y|| over random grid-function pairs.
double empirical_lipschitz(const bvp::BvpProblem& prob, std::size_t pairs, std::uint64_t seed);

nlohmann::json bvp_report(const BvpRunSummary& run);

}  // namespace bpp
