#include "bpp/instance_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bpp/error.hpp"

namespace bpp {

using nlohmann::json;

namespace {

std::string at(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(at(path, key), "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(path, "expected a finite number");
  return v;
}

std::size_t index(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw ValidationError(path, "expected a nonnegative integer index");
  }
  return j.get<std::size_t>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  return j;
}

std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path, "expected a string");
  return j.get<std::string>();
}

Point point(const json& j, std::size_t dim, const std::string& path) {
  array(j, path);
  if (j.size() != dim) {
    throw ValidationError(path, "point has " + std::to_string(j.size()) +
                                    " coordinates, expected dim = " + std::to_string(dim));
  }
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) p.coords.push_back(number(j[i], at(path, i)));
  return p;
}

// A point list expanded from items, with the indices each item produced.
struct ExpandedSet {
  std::vector<Point> points;
  std::vector<std::vector<std::size_t>> item_indices;
};

ExpandedSet expand_items(const json& items, std::size_t dim, double eps_dup,
                         const std::string& path) {
  array(items, path);
  if (items.empty()) throw ValidationError(path, "set must be nonempty");
  ExpandedSet out;
  auto add = [&](Point p, bool sampled, const std::string& where) {
    for (std::size_t k = 0; k < out.points.size(); ++k) {
      if (approx_equal(out.points[k], p, eps_dup)) {
        if (!sampled) {
          throw ValidationError(where, "duplicates point " + std::to_string(k) + " " +
                                           to_string(p));
        }
        out.item_indices.back().push_back(k);
        return;
      }
    }
    out.item_indices.back().push_back(out.points.size());
    out.points.push_back(std::move(p));
  };

  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string ipath = at(path, i);
    const json& item = items[i];
    out.item_indices.emplace_back();
    if (item.is_array()) {
      add(point(item, dim, ipath), false, ipath);
    } else if (item.is_object() && item.contains("point")) {
      add(point(item["point"], dim, at(ipath, "point")), false, ipath);
    } else if (item.is_object() && item.contains("segment")) {
      const std::string spath = at(ipath, "segment");
      const json& seg = item["segment"];
      const Point from = point(require(seg, "from", spath), dim, at(spath, "from"));
      const Point to = point(require(seg, "to", spath), dim, at(spath, "to"));
      const double step = number(require(seg, "step", spath), at(spath, "step"));
      if (!(step > 0)) throw ValidationError(at(spath, "step"), "step must be positive");
      for (Point& p : sample_segment(from, to, step)) add(std::move(p), true, ipath);
    } else {
      throw ValidationError(ipath, "expected a coordinate array, {\"point\": ...} or {\"segment\": ...}");
    }
  }
  return out;
}

Metric parse_metric(const json& j, const std::string& path) {
  const MetricKind kind = [&] {
    try {
      return metric_kind_from_string(string(require(j, "kind", path), at(path, "kind")));
    } catch (const InvalidArgument& e) {
      throw ValidationError(at(path, "kind"), e.what());
    }
  }();
  if (kind != MetricKind::Table) return Metric(kind);
  const std::string tpath = at(path, "table");
  const json& t = array(require(j, "table", path), tpath);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    array(t[i], at(tpath, i));
    rows.emplace_back();
    for (std::size_t k = 0; k < t[i].size(); ++k) {
      rows.back().push_back(number(t[i][k], at(at(tpath, i), k)));
    }
  }
  try {
    return Metric::table(std::move(rows));
  } catch (const InvalidArgument& e) {
    throw ValidationError(tpath, e.what());
  }
}

AlphaMap parse_alpha(const json& j, std::size_t n, const std::string& path) {
  if (j.contains("constant")) {
    const double c = number(j["constant"], at(path, "constant"));
    if (c < 0) throw ValidationError(at(path, "constant"), "alpha must be >= 0");
    return AlphaMap::constant(c);
  }
  const std::string tpath = at(path, "table");
  const json& t = array(require(j, "table", path), tpath);
  if (t.size() != n) {
    throw ValidationError(tpath, "alpha table needs " + std::to_string(n) + " rows (one per A point)");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    array(t[i], at(tpath, i));
    if (t[i].size() != n) throw ValidationError(at(tpath, i), "alpha table row has the wrong length");
    rows.emplace_back();
    for (std::size_t k = 0; k < n; ++k) {
      const double v = number(t[i][k], at(at(tpath, i), k));
      if (v < 0) throw ValidationError(at(at(tpath, i), k), "alpha must be >= 0");
      rows.back().push_back(v);
    }
  }
  return AlphaMap::table(std::move(rows));
}

Theta parse_theta(const json& j, const std::string& path) {
  const std::string family = string(require(j, "family", path), at(path, "family"));
  try {
    switch (theta_family_from_string(family)) {
      case ThetaFamily::Exp: return Theta::exp();
      case ThetaFamily::ExpSqrt: return Theta::exp_sqrt();
      case ThetaFamily::PowBase:
        return Theta::pow_base(number(require(j, "base", path), at(path, "base")));
    }
  } catch (const InvalidArgument& e) {
    throw ValidationError(path, e.what());
  }
  throw ValidationError(path, "unknown Theta family");
}

}  // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("", "instance must be a JSON object");
  const json& version = require(j, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kInstanceSchemaVersion) {
    throw ValidationError("version", "unsupported schema version (expected " +
                                         std::to_string(kInstanceSchemaVersion) + ")");
  }

  Instance inst;
  if (j.contains("name")) inst.name = string(j["name"], "name");

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ValidationError("tolerances", "expected an object");
    auto nonneg = [&](const char* key, double& out) {
      if (!t.contains(key)) return;
      out = number(t[key], at("tolerances", key));
      if (out < 0) throw ValidationError(at("tolerances", key), "must be >= 0");
    };
    nonneg("eps_dup", inst.tol.eps_dup);
    nonneg("eps_prox", inst.tol.eps_prox);
    nonneg("eps_stop", inst.tol.eps_stop);
    nonneg("eps_step", inst.tol.eps_step);
    if (t.contains("max_iter")) inst.tol.max_iter = index(t["max_iter"], "tolerances.max_iter");
  }

  inst.metric = parse_metric(require(j, "metric", ""), "metric");
  const json& dim_j = require(j, "dim", "");
  if (!dim_j.is_number_integer() || dim_j.get<std::int64_t>() < 1) {
    throw ValidationError("dim", "expected an integer >= 1");
  }
  const auto dim = dim_j.get<std::size_t>();
  if (inst.metric.kind() == MetricKind::Table && dim != 1) {
    throw ValidationError("dim", "TABLE metric points are single indices; dim must be 1");
  }

  const ExpandedSet a = expand_items(require(j, "A", ""), dim, inst.tol.eps_dup, "A");
  const bool has_b = j.contains("B");
  const ExpandedSet b = has_b ? expand_items(j["B"], dim, inst.tol.eps_dup, "B") : a;
  if (inst.metric.kind() == MetricKind::Table) {
    auto check = [&](const ExpandedSet& s, const char* name) {
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        const double c = s.points[i].coords[0];
        if (c < 0 || c != std::floor(c) || c >= static_cast<double>(inst.metric.table_size())) {
          throw ValidationError(std::string(name) + "[" + std::to_string(i) + "]",
                                "not an index of the distance table");
        }
      }
    };
    check(a, "A");
    check(b, "B");
  }
  inst.a = PointSet("A", a.points, inst.tol.eps_dup);
  inst.b = PointSet("B", b.points, inst.tol.eps_dup);

  const json& f = array(require(j, "F", ""), "F");
  if (f.size() != inst.a.size()) {
    throw ValidationError("F", "has " + std::to_string(f.size()) + " entries but A has " +
                                   std::to_string(inst.a.size()) + " points");
  }
  std::vector<std::vector<std::size_t>> images(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    const std::string fpath = at("F", x);
    array(f[x], fpath);
    if (f[x].empty()) throw ValidationError(fpath, "image must be nonempty");
    auto push = [&](std::size_t bi) {
      if (std::find(images[x].begin(), images[x].end(), bi) == images[x].end()) {
        images[x].push_back(bi);
      }
    };
    for (std::size_t k = 0; k < f[x].size(); ++k) {
      const std::string epath = at(fpath, k);
      const json& e = f[x][k];
      if (e.is_object()) {
        const std::size_t item = index(require(e, "item", epath), at(epath, "item"));
        if (item >= b.item_indices.size()) {
          throw ValidationError(epath, "item " + std::to_string(item) + " out of range (B has " +
                                           std::to_string(b.item_indices.size()) + " items)");
        }
        for (std::size_t bi : b.item_indices[item]) push(bi);
      } else {
        const std::size_t bi = index(e, epath);
        if (bi >= inst.b.size()) {
          throw ValidationError(epath, "index " + std::to_string(bi) + " out of range (B has " +
                                           std::to_string(inst.b.size()) + " points)");
        }
        push(bi);
      }
    }
  }
  inst.f = MultiMap(std::move(images), inst.a.size(), inst.b.size());

  inst.params.alpha = j.contains("alpha") ? parse_alpha(j["alpha"], inst.a.size(), "alpha")
                                          : AlphaMap::constant(1.0);
  inst.theta = j.contains("theta") ? parse_theta(j["theta"], "theta") : Theta::exp();

  const json& params = require(j, "params", "");
  inst.params.k = number(require(params, "k", "params"), "params.k");
  inst.params.lambda = number(require(params, "lambda", "params"), "params.lambda");
  if (!(inst.params.k > 0 && inst.params.k < 1)) throw ValidationError("params.k", "k must lie in (0, 1)");
  if (inst.params.lambda < 0) throw ValidationError("params.lambda", "lambda must be >= 0");

  if (j.contains("seeds")) {
    const json& s = j["seeds"];
    Seeds seeds;
    seeds.x0 = index(require(s, "x0", "seeds"), "seeds.x0");
    seeds.x1 = index(require(s, "x1", "seeds"), "seeds.x1");
    seeds.y0 = index(require(s, "y0", "seeds"), "seeds.y0");
    if (seeds.x0 >= inst.a.size()) throw ValidationError("seeds.x0", "index out of range for A");
    if (seeds.x1 >= inst.a.size()) throw ValidationError("seeds.x1", "index out of range for A");
    if (seeds.y0 >= inst.b.size()) throw ValidationError("seeds.y0", "index out of range for B");
    inst.seeds = seeds;
  }

  if (j.contains("audit")) {
    const json& a_j = j["audit"];
    try {
      if (a_j.contains("order")) {
        inst.audit.order = pair_order_from_string(string(a_j["order"], "audit.order"));
      }
      if (a_j.contains("scope")) {
        inst.audit.scope = audit_scope_from_string(string(a_j["scope"], "audit.scope"));
      }
    } catch (const InvalidArgument& e) {
      throw ValidationError("audit", e.what());
    }
  }
  if (j.contains("assumptions") && j["assumptions"].contains("alpha_subsequential")) {
    const json& v = j["assumptions"]["alpha_subsequential"];
    if (!v.is_boolean()) throw ValidationError("assumptions.alpha_subsequential", "expected a boolean");
    inst.alpha_subsequential_assumed = v.get<bool>();
  }
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

json instance_to_json(const Instance& inst) {
  json j;
  j["version"] = kInstanceSchemaVersion;
  j["name"] = inst.name;
  j["metric"] = {{"kind", to_string(inst.metric.kind())}};
  if (inst.metric.kind() == MetricKind::Table) j["metric"]["table"] = inst.metric.table_rows();
  j["dim"] = inst.a.dim();
  auto points = [](const PointSet& s) {
    json arr = json::array();
    for (const Point& p : s.points()) arr.push_back(p.coords);
    return arr;
  };
  j["A"] = points(inst.a);
  j["B"] = points(inst.b);
  j["F"] = inst.f.images();
  if (inst.params.alpha.is_constant()) {
    j["alpha"] = {{"constant", inst.params.alpha.constant_value()}};
  } else {
    j["alpha"] = {{"table", inst.params.alpha.table_rows()}};
  }
  j["theta"] = {{"family", to_string(inst.theta.family())}};
  if (inst.theta.family() == ThetaFamily::PowBase) j["theta"]["base"] = inst.theta.base();
  j["params"] = {{"k", inst.params.k}, {"lambda", inst.params.lambda}};
  if (inst.seeds) {
    j["seeds"] = {{"x0", inst.seeds->x0}, {"x1", inst.seeds->x1}, {"y0", inst.seeds->y0}};
  }
  j["tolerances"] = {{"eps_dup", inst.tol.eps_dup},   {"eps_prox", inst.tol.eps_prox},
                     {"eps_stop", inst.tol.eps_stop}, {"eps_step", inst.tol.eps_step},
                     {"max_iter", inst.tol.max_iter}};
  j["audit"] = {{"order", to_string(inst.audit.order)}, {"scope", to_string(inst.audit.scope)}};
  j["assumptions"] = {{"alpha_subsequential", inst.alpha_subsequential_assumed}};
  return j;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << instance_to_json(inst).dump(2) << '\n';
}

std::string instance_digest(const Instance& inst) {
  const std::string text = instance_to_json(inst).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bpp
