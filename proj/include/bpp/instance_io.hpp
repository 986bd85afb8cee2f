#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bpp/instance.hpp"

namespace bpp {

inline constexpr int kInstanceSchemaVersion = 1;

// Instance file, version 1:
//
//   {
//     "version": 1,
//     "name": "example",                          optional
//     "metric": {"kind": "L1"},                   L1 | L2 | LINF | TABLE (+ "table": [[...]])
//     "dim": 2,
//     "A": [[-2, 2], {"point": [2, 2]}, ...],
//     "B": [{"segment": {"from": [-8, 0], "to": [-8, -8], "step": 1}}, ...],
//                                                 optional; absent means B = A
//     "F": [[0], [9], [{"item": 2}]],             per A point: B indices or whole B items
//     "alpha": {"constant": 1.1} | {"table": [[...]]},       default constant 1
//     "theta": {"family": "POW_BASE", "base": 5},            EXP | POW_BASE | EXP_SQRT
//     "params": {"k": 0.99, "lambda": 2},
//     "seeds": {"x0": 0, "x1": 0, "y0": 0},       optional
//     "tolerances": {"eps_dup": 1e-9, "eps_prox": 1e-9, "eps_stop": 1e-9,
//                    "eps_step": 0, "max_iter": 1000000},    optional
//     "audit": {"order": "UNORDERED", "scope": "A"},         optional
//     "assumptions": {"alpha_subsequential": false}          optional
//   }
//
// Segment samplers are expanded at load time with both endpoints included.
// Points are deduplicated in order of appearance, and B indices everywhere
// refer to the expanded list. Sampled points that repeat an earlier point
// reuse its index; an explicit point that repeats one is a validation error.
// For a TABLE metric every point is a single table index.

Instance instance_from_json(const nlohmann::json& j);

// Throws ParseError (with position) or ValidationError (with field path).
Instance load_instance(const std::filesystem::path& path);

// Canonical form: samplers expanded, items as bare coordinate arrays, F as
// plain index lists, every optional section written out.
nlohmann::json instance_to_json(const Instance& inst);

void save_instance(const Instance& inst, const std::filesystem::path& path);

// 16 hex digits of FNV-1a over the canonical JSON text.
std::string instance_digest(const Instance& inst);

}  // namespace bpp
