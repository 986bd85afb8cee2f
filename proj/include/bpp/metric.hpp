#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bpp {

inline constexpr double kDefaultDupEps = 1e-9;

// A point of the ambient space. For coordinate metrics this is a tuple of
// reals; for a TABLE metric it is a single coordinate holding the row index.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> c) : coords(c) {}

  std::size_t dim() const noexcept { return coords.size(); }
  bool operator==(const Point&) const = default;
};

std::string to_string(const Point& p);

enum class MetricKind { L1, L2, LInf, Table };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

class Metric {
 public:
  // Coordinate metric (L1, L2 or LInf).
  explicit Metric(MetricKind kind = MetricKind::L2);

  // Explicit distance table over an abstract finite space {0, ..., n-1}.
  // Throws InvalidArgument unless the matrix is a metric: square, finite,
  // nonnegative, zero diagonal, symmetric, positive off the diagonal and
  // satisfying the triangle inequality (each within `tol`).
  static Metric table(std::vector<std::vector<double>> rows, double tol = 1e-12);

  MetricKind kind() const noexcept { return kind_; }
  const std::vector<std::vector<double>>& table_rows() const noexcept { return table_; }
  std::size_t table_size() const noexcept { return table_.size(); }

  // Throws InvalidArgument on dimension mismatch or an invalid table index.
  double operator()(const Point& p, const Point& q) const;

 private:
  MetricKind kind_;
  std::vector<std::vector<double>> table_;
};

// Finite, ordered, duplicate-free set of points. The order is significant:
// every argmin/argmax in the toolkit breaks ties by first occurrence.
class PointSet {
 public:
  PointSet() = default;

  // Throws InvalidArgument if empty, if dimensions disagree, if a coordinate
  // is not finite, or if two points coincide within `dup_eps`.
  PointSet(std::string label, std::vector<Point> points, double dup_eps = kDefaultDupEps);

  const std::string& label() const noexcept { return label_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_.at(i); }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return points_.empty() ? 0 : points_.front().dim(); }
  bool empty() const noexcept { return points_.empty(); }

  // First index whose point equals `p` within `eps`.
  std::optional<std::size_t> find(const Point& p, double eps = kDefaultDupEps) const;

 private:
  std::string label_;
  std::vector<Point> points_;
};

bool approx_equal(const Point& p, const Point& q, double eps = kDefaultDupEps);

struct NearestPoint {
  double distance;
  std::size_t index;  // into the queried set
};

struct ClosestPair {
  double distance;
  std::size_t a_index;
  std::size_t b_index;
};

double dist(const Point& p, const Point& q, const Metric& m);

// D(p, S) = min over S, with the first minimiser in S order.
NearestPoint dist_point_set(const Point& p, std::span<const Point> set, const Metric& m);
NearestPoint dist_point_set(const Point& p, const PointSet& set, const Metric& m);

// dist(A, B) = min over A x B, first attaining pair in (A order, B order).
ClosestPair dist_set_set(std::span<const Point> a, std::span<const Point> b, const Metric& m);
ClosestPair dist_set_set(const PointSet& a, const PointSet& b, const Metric& m);

// sup_{x in A} D(x, B).
double directed_hausdorff(std::span<const Point> a, std::span<const Point> b, const Metric& m);

// H(A, B) = max of the two directed distances.
double hausdorff(std::span<const Point> a, std::span<const Point> b, const Metric& m);
double hausdorff(const PointSet& a, const PointSet& b, const Metric& m);

// Samples the segment from `from` to `to` at spacing `step`. Both endpoints
// are always included; the last interior gap may be shorter than `step`.
std::vector<Point> sample_segment(const Point& from, const Point& to, double step);

}  // namespace bpp
