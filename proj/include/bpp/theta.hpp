#pragma once

#include <string>
#include <vector>

namespace bpp {

enum class ThetaFamily { Exp, PowBase, ExpSqrt };

// Theta : (0, inf) -> (1, inf) from a closed catalog with exact inverses:
//   EXP        e^t
//   POW_BASE   b^t, b > 1
//   EXP_SQRT   e^sqrt(t)
// Most callers work with ln Theta to stay clear of overflow (5^28 is fine,
// e^1000 is not).
class Theta {
 public:
  static Theta exp();
  static Theta pow_base(double base);
  static Theta exp_sqrt();

  ThetaFamily family() const noexcept { return family_; }
  double base() const noexcept { return base_; }
  std::string name() const;

  // Theta(t). Throws InvalidArgument for t <= 0 or non-finite t.
  double operator()(double t) const;

  // ln Theta(t), extended continuously by ln Theta(0) = 0.
  double log_value(double t) const;

  // Theta(t) - 1 without cancellation near t = 0.
  double minus_one(double t) const;

  // Theta^{-1}(y) for y > 1.
  double inverse(double y) const;

  // Theta^{-1}(e^L) for L >= 0; inverse_log(0) = 0.
  double inverse_log(double log_y) const;

 private:
  Theta(ThetaFamily family, double base) : family_(family), base_(base) {}

  ThetaFamily family_;
  double base_;  // POW_BASE only
};

ThetaFamily theta_family_from_string(const std::string& name);
std::string to_string(ThetaFamily family);

struct ThetaGrid {
  double t_max = 10.0;
  std::size_t monotone_samples = 2000;  // log-spaced on [1e-8, t_max]
  int alpha_exp_hi = -2;                // alpha = 10^hi ... 10^lo
  int alpha_exp_lo = -8;
  std::vector<double> k_values = default_k_values();
  double stability_tol = 0.05;  // last three ratios within 5%
  double ratio_floor = 1e-6;
  double ratio_ceiling = 1e9;

  static std::vector<double> default_k_values();  // 0.05, 0.10, ..., 0.95
};

enum class LimitTrend { Stable, ToZero, ToInfinity, Erratic };

std::string to_string(LimitTrend trend);

struct Theta3Row {
  double k;
  std::vector<double> ratios;  // (Theta(alpha) - 1) / alpha^k along the alpha grid
  double spread;               // max/min - 1 over the last three ratios
  LimitTrend trend;
};

struct Theta3Result {
  bool pass = false;
  double best_k = 0.0;          // the k whose tail is most stable
  double limit_estimate = 0.0;  // ratio at the smallest alpha, for best_k
  LimitTrend trend = LimitTrend::Erratic;
  std::vector<Theta3Row> rows;
};

struct ThetaConditionsReport {
  bool theta1 = false;  // nondecreasing (checked as strictly increasing on the grid)
  bool theta2 = false;  // Theta(alpha) -> 1 as alpha -> 0+
  Theta3Result theta3;
};

// Report-only numeric check of the three Theta conditions.
ThetaConditionsReport check_theta_conditions(const Theta& theta, const ThetaGrid& grid = {});

}  // namespace bpp
