#include "bpp/theta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bpp/error.hpp"

namespace bpp {

Theta Theta::exp() { return {ThetaFamily::Exp, 0.0}; }

Theta Theta::pow_base(double base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw InvalidArgument("POW_BASE needs a finite base > 1");
  }
  return {ThetaFamily::PowBase, base};
}

Theta Theta::exp_sqrt() { return {ThetaFamily::ExpSqrt, 0.0}; }

std::string Theta::name() const {
  switch (family_) {
    case ThetaFamily::Exp: return "EXP";
    case ThetaFamily::ExpSqrt: return "EXP_SQRT";
    case ThetaFamily::PowBase: {
      std::ostringstream os;
      os << "POW_BASE(" << base_ << ")";
      return os.str();
    }
  }
  return "?";
}

double Theta::log_value(double t) const {
  if (!(t >= 0) || !std::isfinite(t)) throw InvalidArgument("Theta argument must be finite and >= 0");
  switch (family_) {
    case ThetaFamily::Exp: return t;
    case ThetaFamily::PowBase: return t * std::log(base_);
    case ThetaFamily::ExpSqrt: return std::sqrt(t);
  }
  return 0.0;
}

double Theta::operator()(double t) const {
  if (!(t > 0)) throw InvalidArgument("Theta is defined on (0, inf); got t <= 0");
  if (family_ == ThetaFamily::PowBase && std::isfinite(t)) return std::pow(base_, t);
  return std::exp(log_value(t));
}

double Theta::minus_one(double t) const {
  if (!(t > 0)) throw InvalidArgument("Theta is defined on (0, inf); got t <= 0");
  return std::expm1(log_value(t));
}

double Theta::inverse_log(double log_y) const {
  if (!(log_y >= 0) || !std::isfinite(log_y)) {
    throw InvalidArgument("Theta inverse needs ln y >= 0");
  }
  switch (family_) {
    case ThetaFamily::Exp: return log_y;
    case ThetaFamily::PowBase: return log_y / std::log(base_);
    case ThetaFamily::ExpSqrt: return log_y * log_y;
  }
  return 0.0;
}

double Theta::inverse(double y) const {
  if (!(y > 1.0)) throw InvalidArgument("Theta inverse is defined on (1, inf)");
  return inverse_log(std::log(y));
}

ThetaFamily theta_family_from_string(const std::string& name) {
  if (name == "EXP") return ThetaFamily::Exp;
  if (name == "POW_BASE") return ThetaFamily::PowBase;
  if (name == "EXP_SQRT") return ThetaFamily::ExpSqrt;
  throw InvalidArgument("unknown Theta family '" + name + "' (expected EXP, POW_BASE or EXP_SQRT)");
}

std::string to_string(ThetaFamily family) {
  switch (family) {
    case ThetaFamily::Exp: return "EXP";
    case ThetaFamily::PowBase: return "POW_BASE";
    case ThetaFamily::ExpSqrt: return "EXP_SQRT";
  }
  return "?";
}

std::string to_string(LimitTrend trend) {
  switch (trend) {
    case LimitTrend::Stable: return "stable";
    case LimitTrend::ToZero: return "to_zero";
    case LimitTrend::ToInfinity: return "to_infinity";
    case LimitTrend::Erratic: return "erratic";
  }
  return "?";
}

std::vector<double> ThetaGrid::default_k_values() {
  std::vector<double> ks;
  for (int i = 1; i <= 19; ++i) ks.push_back(0.05 * i);
  return ks;
}

namespace {

Theta3Row theta3_row(const Theta& theta, double k, const ThetaGrid& grid) {
  Theta3Row row{k, {}, 0.0, LimitTrend::Erratic};
  for (int e = grid.alpha_exp_hi; e >= grid.alpha_exp_lo; --e) {
    const double a = std::pow(10.0, e);
    row.ratios.push_back(theta.minus_one(a) / std::pow(a, k));
  }
  const std::size_t m = row.ratios.size();
  if (m < 3) return row;
  const double r0 = row.ratios[m - 3], r1 = row.ratios[m - 2], r2 = row.ratios[m - 1];
  const double lo = std::min({r0, r1, r2});
  const double hi = std::max({r0, r1, r2});
  row.spread = lo > 0 ? hi / lo - 1.0 : INFINITY;

  if (row.spread <= grid.stability_tol && lo > grid.ratio_floor && hi < grid.ratio_ceiling) {
    row.trend = LimitTrend::Stable;
  } else if (r0 > r1 && r1 > r2) {
    row.trend = LimitTrend::ToZero;
  } else if (r0 < r1 && r1 < r2) {
    row.trend = LimitTrend::ToInfinity;
  }
  return row;
}

}  // namespace

ThetaConditionsReport check_theta_conditions(const Theta& theta, const ThetaGrid& grid) {
  ThetaConditionsReport report;

  // Theta1 on a log-spaced grid of (0, t_max].
  {
    const double lo = std::log(1e-8), hi = std::log(grid.t_max);
    const std::size_t n = std::max<std::size_t>(grid.monotone_samples, 2);
    bool increasing = true;
    double prev = theta.log_value(std::exp(lo));
    for (std::size_t i = 1; i < n && increasing; ++i) {
      const double t = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
      const double cur = theta.log_value(t);
      increasing = cur > prev;
      prev = cur;
    }
    report.theta1 = increasing;
  }

  // Theta2: Theta(alpha) - 1 decreases to 0 along the alpha grid.
  {
    bool decreasing = true;
    double prev = INFINITY, last = INFINITY;
    for (int e = grid.alpha_exp_hi; e >= grid.alpha_exp_lo; --e) {
      const double v = theta.minus_one(std::pow(10.0, e));
      decreasing = decreasing && v > 0 && v < prev;
      prev = last = v;
    }
    report.theta2 = decreasing && last < 1e-3;
  }

  Theta3Result& t3 = report.theta3;
  double best_spread = INFINITY;
  for (double k : grid.k_values) {
    Theta3Row row = theta3_row(theta, k, grid);
    const bool stable = row.trend == LimitTrend::Stable;
    // Prefer stable rows; among equals prefer the smallest spread.
    const bool better = (stable && !t3.pass) || (stable == t3.pass && row.spread < best_spread);
    if (better) {
      t3.pass = stable;
      t3.best_k = k;
      t3.limit_estimate = row.ratios.back();
      t3.trend = row.trend;
      best_spread = row.spread;
    }
    t3.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace bpp
