#include "bpp/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "bpp/error.hpp"

namespace bpp::bvp {

double green(double t, double s) {
  if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0)) {
    throw InvalidArgument("Green's function is defined on [0,1]^2");
  }
  return t <= s ? t * (1.0 - s) : s * (1.0 - t);
}

std::string to_string(Quadrature q) { return q == Quadrature::Simpson ? "simpson" : "trapezoid"; }

Quadrature quadrature_from_string(const std::string& s) {
  if (s == "simpson" || s == "SIMPSON") return Quadrature::Simpson;
  if (s == "trapezoid" || s == "TRAPEZOID") return Quadrature::Trapezoid;
  throw InvalidArgument("unknown quadrature '" + s + "' (expected simpson or trapezoid)");
}

Forcing Forcing::constant(double c) {
  if (!std::isfinite(c)) throw InvalidArgument("constant forcing must be finite");
  return {Kind::Constant, c};
}

Forcing Forcing::sine() { return {Kind::Sin, 1.0}; }

Forcing Forcing::affine(double a, std::vector<double> g_coeffs) {
  if (!(std::abs(a) <= 1.0)) throw InvalidArgument("affine forcing needs |a| <= 1");
  for (double c : g_coeffs) {
    if (!std::isfinite(c)) throw InvalidArgument("affine forcing coefficients must be finite");
  }
  Forcing f{Kind::Affine, a};
  f.g_ = std::move(g_coeffs);
  return f;
}

Forcing Forcing::scaled_sine(double mu) {
  if (!(std::abs(mu) <= 1.0)) throw InvalidArgument("scaled_sin forcing needs |mu| <= 1");
  return {Kind::ScaledSin, mu};
}

namespace {

double parse_number(const std::string& s, const std::string& whole) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("bad number '" + s + "' in forcing '" + whole + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

Forcing Forcing::parse(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw InvalidArgument("empty forcing");
  const std::string& kind = parts[0];
  if (kind == "sin" && parts.size() == 1) return sine();
  if (kind == "constant" && parts.size() == 2) return constant(parse_number(parts[1], spec));
  if (kind == "scaled_sin" && parts.size() == 2) return scaled_sine(parse_number(parts[1], spec));
  if (kind == "affine" && (parts.size() == 2 || parts.size() == 3)) {
    std::vector<double> g;
    if (parts.size() == 3) {
      for (const auto& c : split(parts[2], ',')) g.push_back(parse_number(c, spec));
    }
    return affine(parse_number(parts[1], spec), std::move(g));
  }
  throw InvalidArgument("unknown forcing '" + spec +
                        "' (expected constant:C, sin, affine:A[:G0,G1,...] or scaled_sin:MU)");
}

double Forcing::operator()(double t, double x) const {
  switch (kind_) {
    case Kind::Constant: return p_;
    case Kind::Sin: return std::sin(x);
    case Kind::ScaledSin: return p_ * std::sin(x);
    case Kind::Affine: {
      double g = 0.0;
      for (auto it = g_.rbegin(); it != g_.rend(); ++it) g = g * t + *it;
      return p_ * x + g;
    }
  }
  return 0.0;
}

double Forcing::lipschitz() const noexcept {
  switch (kind_) {
    case Kind::Constant: return 0.0;
    case Kind::Sin: return 1.0;
    case Kind::ScaledSin:
    case Kind::Affine: return std::abs(p_);
  }
  return 0.0;
}

std::string Forcing::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant: os << "constant:" << p_; break;
    case Kind::Sin: os << "sin"; break;
    case Kind::ScaledSin: os << "scaled_sin:" << p_; break;
    case Kind::Affine:
      os << "affine:" << p_;
      if (!g_.empty()) {
        os << ':';
        for (std::size_t i = 0; i < g_.size(); ++i) os << (i ? "," : "") << g_[i];
      }
      break;
  }
  return os.str();
}

void BvpProblem::validate() const {
  if (n < 2) throw InvalidArgument("BVP grid needs at least 2 intervals");
  if (quadrature == Quadrature::Simpson && n % 2 != 0) {
    throw InvalidArgument("Simpson quadrature needs an even number of intervals");
  }
  if (!(eps_fix > 0)) throw InvalidArgument("eps_fix must be positive");
}

namespace {

using NodeWeights = std::vector<std::pair<std::size_t, double>>;

// Weights integrating a smooth function over [s_lo, s_hi] of an n-interval
// grid from its node values. A single-interval Simpson piece integrates the
// quadratic through one extra neighbouring node, so that node lies outside
// the piece and must be fed the piece's own smooth formula.
NodeWeights piece_rule(std::size_t lo, std::size_t hi, std::size_t n, Quadrature q, double h) {
  NodeWeights w;
  const std::size_t m = hi - lo;
  if (m == 0) return w;
  if (q == Quadrature::Trapezoid) {
    w.emplace_back(lo, h / 2);
    for (std::size_t j = lo + 1; j < hi; ++j) w.emplace_back(j, h);
    w.emplace_back(hi, h / 2);
    return w;
  }
  if (m == 1) {
    if (hi + 1 <= n) {
      w = {{lo, 5 * h / 12}, {hi, 8 * h / 12}, {hi + 1, -h / 12}};
    } else {
      w = {{lo - 1, -h / 12}, {lo, 8 * h / 12}, {hi, 5 * h / 12}};
    }
    return w;
  }
  const std::size_t simpson_end = (m % 2 == 0) ? hi : hi - 3;
  for (std::size_t j = lo; j < simpson_end; j += 2) {
    w.emplace_back(j, h / 3);
    w.emplace_back(j + 1, 4 * h / 3);
    w.emplace_back(j + 2, h / 3);
  }
  if (simpson_end != hi) {  // Simpson 3/8 on the last three intervals
    const double c = 3 * h / 8;
    w.emplace_back(hi - 3, c);
    w.emplace_back(hi - 2, 3 * c);
    w.emplace_back(hi - 1, 3 * c);
    w.emplace_back(hi, c);
  }
  return w;
}

// Composite rule over m uniform subintervals of [a, b] for a function known
// everywhere. m is rounded up to at least 2 (and to even for Simpson).
template <typename Fn>
double integrate(Fn fn, double a, double b, std::size_t m, Quadrature q) {
  if (b <= a) return 0.0;
  m = std::max<std::size_t>(m, 2);
  if (q == Quadrature::Simpson && m % 2) ++m;
  const double h = (b - a) / static_cast<double>(m);
  double acc = 0.0;
  for (std::size_t j = 0; j <= m; ++j) {
    const double s = j == m ? b : a + h * static_cast<double>(j);
    double c;
    if (q == Quadrature::Trapezoid) {
      c = (j == 0 || j == m) ? 0.5 : 1.0;
    } else {
      c = (j == 0 || j == m) ? 1.0 / 3 : (j % 2 ? 4.0 / 3 : 2.0 / 3);
    }
    acc += c * fn(s);
  }
  return acc * h;
}

}  // namespace

double kernel_row_integral(double t, std::size_t n, Quadrature q) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("kernel row integral needs t in [0, 1]");
  if (n < 2) throw InvalidArgument("kernel row integral needs n >= 2");
  const auto cells = [n](double len) {
    return static_cast<std::size_t>(std::ceil(len * static_cast<double>(n) - 1e-12));
  };
  const double left = integrate([t](double s) { return s * (1.0 - t); }, 0.0, t, cells(t), q);
  const double right =
      integrate([t](double s) { return t * (1.0 - s); }, t, 1.0, cells(1.0 - t), q);
  return left + right;
}

IntegralOperator::IntegralOperator(const BvpProblem& prob) : prob_(prob) {
  prob_.validate();
  const std::size_t n = prob_.n;
  const double h = prob_.h();
  w_.assign(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 1; i < n; ++i) {
    const double t = prob_.node(i);
    // Split at the kink s = t_i; each piece uses its own branch of G.
    for (const auto& [j, wt] : piece_rule(0, i, n, prob_.quadrature, h)) {
      w_[i][j] += wt * prob_.node(j) * (1.0 - t);
    }
    for (const auto& [j, wt] : piece_rule(i, n, n, prob_.quadrature, h)) {
      w_[i][j] += wt * t * (1.0 - prob_.node(j));
    }
  }
}

GridFunction IntegralOperator::apply(const GridFunction& x) const {
  const std::size_t n = prob_.n;
  if (x.size() != n + 1) {
    throw InvalidArgument("grid function has " + std::to_string(x.size()) + " values, expected " +
                          std::to_string(n + 1));
  }
  std::vector<double> fx(n + 1);
  for (std::size_t j = 0; j <= n; ++j) fx[j] = prob_.f(prob_.node(j), x[j]);
  GridFunction out(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) acc += w_[i][j] * fx[j];
    out[i] = acc;
  }
  return out;
}

double IntegralOperator::max_row_sum() const {
  double best = 0.0;
  for (const auto& row : w_) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

GridFunction apply_operator(const GridFunction& x, const BvpProblem& prob) {
  return IntegralOperator(prob).apply(x);
}

double sup_norm_diff(const GridFunction& x, const GridFunction& y) {
  if (x.size() != y.size()) throw InvalidArgument("grid functions differ in size");
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

BvpSolution solve_bvp(const BvpProblem& prob, const GridFunction& x0) {
  const IntegralOperator op(prob);
  BvpSolution sol;
  GridFunction x = x0;
  while (sol.iterations < prob.max_iter) {
    GridFunction next = op.apply(x);
    const double step = sup_norm_diff(next, x);
    sol.history.push_back(step);
    ++sol.iterations;
    x = std::move(next);
    if (step <= prob.eps_fix) {
      sol.converged = true;
      break;
    }
  }
  sol.solution = std::move(x);
  return sol;
}

BvpSolution solve_bvp(const BvpProblem& prob) {
  return solve_bvp(prob, GridFunction(prob.n + 1, 0.0));
}

double residual_check(const GridFunction& x, const BvpProblem& prob) {
  const std::size_t n = prob.n;
  if (x.size() != n + 1) throw InvalidArgument("grid function does not match the problem grid");
  const double h2 = prob.h() * prob.h();
  double worst = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double lap = -(x[i - 1] - 2 * x[i] + x[i + 1]) / h2;
    worst = std::max(worst, std::abs(lap - prob.f(prob.node(i), x[i])));
  }
  return worst;
}

}  // namespace bpp::bvp
