#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bpp/metric.hpp"

namespace bpp {

// F : A -> 2^B \ {}, stored as lists of indices into B's point order.
class MultiMap {
 public:
  MultiMap() = default;

  // Throws InvalidArgument if |images| != a_size, an image is empty, an
  // index is out of range for B, or an image lists the same index twice.
  MultiMap(std::vector<std::vector<std::size_t>> images, std::size_t a_size, std::size_t b_size);

  // Wraps a single-valued map x -> {f(x)}.
  static MultiMap singletons(std::span<const std::size_t> f, std::size_t b_size);

  std::size_t domain_size() const noexcept { return images_.size(); }
  std::size_t codomain_size() const noexcept { return b_size_; }
  const std::vector<std::size_t>& image(std::size_t a) const { return images_.at(a); }
  const std::vector<std::vector<std::size_t>>& images() const noexcept { return images_; }

  bool contains(std::size_t a, std::size_t b) const;

  // Materialises Fx as points of B.
  std::vector<Point> image_points(std::size_t a, const PointSet& b) const;

 private:
  std::vector<std::vector<std::size_t>> images_;
  std::size_t b_size_ = 0;
};

// alpha : A x A -> [0, inf), either a constant or an explicit table.
class AlphaMap {
 public:
  // Defaults to the constant 1, which makes every alpha-gated condition active.
  AlphaMap() = default;

  static AlphaMap constant(double c);
  static AlphaMap table(std::vector<std::vector<double>> rows);

  bool is_constant() const noexcept { return !table_.has_value(); }
  double constant_value() const noexcept { return constant_; }
  const std::vector<std::vector<double>>& table_rows() const { return table_.value(); }

  // Throws InvalidArgument if a table does not cover (i, j).
  double operator()(std::size_t i, std::size_t j) const;

  // Throws InvalidArgument unless a table is n x n.
  void check_covers(std::size_t n) const;

 private:
  double constant_ = 1.0;
  std::optional<std::vector<std::vector<double>>> table_;
};

}  // namespace bpp
