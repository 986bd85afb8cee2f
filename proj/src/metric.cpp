#include "bpp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bpp/error.hpp"

namespace bpp {

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) os << ',';
    os << p.coords[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::L1: return "L1";
    case MetricKind::L2: return "L2";
    case MetricKind::LInf: return "LINF";
    case MetricKind::Table: return "TABLE";
  }
  return "?";
}

MetricKind metric_kind_from_string(const std::string& name) {
  if (name == "L1") return MetricKind::L1;
  if (name == "L2") return MetricKind::L2;
  if (name == "LINF") return MetricKind::LInf;
  if (name == "TABLE") return MetricKind::Table;
  throw InvalidArgument("unknown metric kind '" + name + "' (expected L1, L2, LINF or TABLE)");
}

Metric::Metric(MetricKind kind) : kind_(kind) {
  if (kind == MetricKind::Table) {
    throw InvalidArgument("TABLE metric must be built with Metric::table");
  }
}

Metric Metric::table(std::vector<std::vector<double>> rows, double tol) {
  const std::size_t n = rows.size();
  if (n == 0) throw InvalidArgument("distance table is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InvalidArgument("distance table row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
  }
  auto where = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v) || v < 0) {
        throw InvalidArgument("distance table entry " + where(i, j) + " is negative or not finite");
      }
      if (i == j && v > tol) {
        throw InvalidArgument("distance table diagonal " + where(i, j) + " is not zero");
      }
      if (i != j && v <= tol) {
        throw InvalidArgument("distance table entry " + where(i, j) +
                              " is zero for distinct points");
      }
      if (std::abs(v - rows[j][i]) > tol) {
        throw InvalidArgument("distance table is not symmetric at " + where(i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (rows[i][k] > rows[i][j] + rows[j][k] + tol) {
          throw InvalidArgument("distance table violates the triangle inequality: d" +
                                where(i, k) + " > d" + where(i, j) + " + d" + where(j, k));
        }
      }
    }
  }
  Metric m;
  m.kind_ = MetricKind::Table;
  m.table_ = std::move(rows);
  return m;
}

namespace {

std::size_t table_index(const Point& p, std::size_t n) {
  if (p.dim() != 1) throw InvalidArgument("TABLE metric points carry exactly one index coordinate");
  const double c = p.coords[0];
  if (!(c >= 0) || c != std::floor(c) || c >= static_cast<double>(n)) {
    throw InvalidArgument("point " + to_string(p) + " is not an index of the " +
                          std::to_string(n) + "-point distance table");
  }
  return static_cast<std::size_t>(c);
}

}  // namespace

double Metric::operator()(const Point& p, const Point& q) const {
  if (kind_ == MetricKind::Table) {
    return table_[table_index(p, table_.size())][table_index(q, table_.size())];
  }
  if (p.dim() != q.dim()) {
    throw InvalidArgument("dimension mismatch: " + to_string(p) + " vs " + to_string(q));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double diff = std::abs(p.coords[i] - q.coords[i]);
    switch (kind_) {
      case MetricKind::L1: acc += diff; break;
      case MetricKind::L2: acc += diff * diff; break;
      case MetricKind::LInf: acc = std::max(acc, diff); break;
      case MetricKind::Table: break;
    }
  }
  return kind_ == MetricKind::L2 ? std::sqrt(acc) : acc;
}

bool approx_equal(const Point& p, const Point& q, double eps) {
  if (p.dim() != q.dim()) return false;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (std::abs(p.coords[i] - q.coords[i]) > eps) return false;
  }
  return true;
}

PointSet::PointSet(std::string label, std::vector<Point> points, double dup_eps)
    : label_(std::move(label)), points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("point set '" + label_ + "' is empty");
  const std::size_t d = points_.front().dim();
  if (d == 0) throw InvalidArgument("point set '" + label_ + "' has zero-dimensional points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.dim() != d) {
      throw InvalidArgument("point set '" + label_ + "': point " + std::to_string(i) +
                            " has dimension " + std::to_string(p.dim()) + ", expected " +
                            std::to_string(d));
    }
    for (double c : p.coords) {
      if (!std::isfinite(c)) {
        throw InvalidArgument("point set '" + label_ + "': point " + std::to_string(i) +
                              " has a non-finite coordinate");
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (approx_equal(points_[j], p, dup_eps)) {
        throw InvalidArgument("point set '" + label_ + "': point " + std::to_string(i) + " " +
                              to_string(p) + " duplicates point " + std::to_string(j));
      }
    }
  }
}

std::optional<std::size_t> PointSet::find(const Point& p, double eps) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (approx_equal(points_[i], p, eps)) return i;
  }
  return std::nullopt;
}

double dist(const Point& p, const Point& q, const Metric& m) { return m(p, q); }

NearestPoint dist_point_set(const Point& p, std::span<const Point> set, const Metric& m) {
  if (set.empty()) throw InvalidArgument("distance to an empty set is undefined");
  NearestPoint best{m(p, set[0]), 0};
  for (std::size_t i = 1; i < set.size(); ++i) {
    const double d = m(p, set[i]);
    if (d < best.distance) best = {d, i};
  }
  return best;
}

NearestPoint dist_point_set(const Point& p, const PointSet& set, const Metric& m) {
  return dist_point_set(p, std::span<const Point>(set.points()), m);
}

ClosestPair dist_set_set(std::span<const Point> a, std::span<const Point> b, const Metric& m) {
  if (a.empty() || b.empty()) throw InvalidArgument("distance between empty sets is undefined");
  ClosestPair best{m(a[0], b[0]), 0, 0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = m(a[i], b[j]);
      if (d < best.distance) best = {d, i, j};
    }
  }
  return best;
}

ClosestPair dist_set_set(const PointSet& a, const PointSet& b, const Metric& m) {
  return dist_set_set(std::span<const Point>(a.points()), std::span<const Point>(b.points()), m);
}

double directed_hausdorff(std::span<const Point> a, std::span<const Point> b, const Metric& m) {
  if (a.empty() || b.empty()) throw InvalidArgument("Hausdorff distance of an empty set is undefined");
  double worst = 0.0;
  for (const Point& p : a) worst = std::max(worst, dist_point_set(p, b, m).distance);
  return worst;
}

double hausdorff(std::span<const Point> a, std::span<const Point> b, const Metric& m) {
  return std::max(directed_hausdorff(a, b, m), directed_hausdorff(b, a, m));
}

double hausdorff(const PointSet& a, const PointSet& b, const Metric& m) {
  return hausdorff(std::span<const Point>(a.points()), std::span<const Point>(b.points()), m);
}

std::vector<Point> sample_segment(const Point& from, const Point& to, double step) {
  if (from.dim() != to.dim() || from.dim() == 0) {
    throw InvalidArgument("segment endpoints must share a nonzero dimension");
  }
  if (!(step > 0) || !std::isfinite(step)) throw InvalidArgument("segment step must be positive");
  double length = 0.0;
  for (std::size_t i = 0; i < from.dim(); ++i) {
    const double d = to.coords[i] - from.coords[i];
    length += d * d;
  }
  length = std::sqrt(length);
  if (length == 0.0) return {from};

  // Interior samples sit at exact multiples of `step` from `from`; a sample
  // closer than step * 1e-9 to `to` is dropped in favour of the endpoint.
  std::vector<Point> out{from};
  const auto whole = static_cast<std::size_t>(std::floor(length / step));
  for (std::size_t j = 1; j <= whole; ++j) {
    const double s = static_cast<double>(j) * step;
    if (length - s <= step * 1e-9) break;
    const double frac = s / length;
    Point p;
    p.coords.resize(from.dim());
    for (std::size_t i = 0; i < from.dim(); ++i) {
      p.coords[i] = from.coords[i] + frac * (to.coords[i] - from.coords[i]);
    }
    out.push_back(std::move(p));
  }
  out.push_back(to);
  return out;
}

}  // namespace bpp
