#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "bpp/instance.hpp"
#include "bpp/instance_io.hpp"
#include "bpp/metric.hpp"

namespace bpp {
inline void PrintTo(const Point& p, std::ostream* os) { *os << to_string(p); }
}  // namespace bpp

namespace testutil {

inline std::string data_path(const std::string& name) { return std::string(BPP_DATA_DIR) + "/" + name; }

inline bpp::Instance example() { return bpp::load_instance(data_path("frame_example.json")); }

// Small integer lattice sets for exhaustive property checks.
inline std::vector<bpp::Point> lattice_set(std::mt19937_64& rng, std::size_t max_size, std::size_t dim,
                                           int extent = 5) {
  std::uniform_int_distribution<int> coord(-extent, extent);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  const std::size_t n = size(rng);
  std::vector<bpp::Point> out;
  while (out.size() < n) {
    bpp::Point p;
    for (std::size_t k = 0; k < dim; ++k) p.coords.push_back(coord(rng));
    bool dup = false;
    for (const auto& q : out) dup = dup || q == p;
    if (!dup) out.push_back(p);
  }
  return out;
}

}  // namespace testutil
