#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bpp::bvp {

// Green's function of -x'' = g, x(0) = x(1) = 0:
//   t (1 - s)  for t <= s
//   s (1 - t)  for s <  t
// Throws InvalidArgument outside [0, 1]^2.
double green(double t, double s);

enum class Quadrature { Trapezoid, Simpson };

std::string to_string(Quadrature q);
Quadrature quadrature_from_string(const std::string& s);

// Right-hand sides f(t, x) from a closed catalog. Every entry is Lipschitz in
// x with constant <= 1, which is what the 1/8 contraction bound needs.
class Forcing {
 public:
  enum class Kind { Constant, Sin, Affine, ScaledSin };

  static Forcing constant(double c);
  static Forcing sine();
  // a * x + g(t), g(t) = sum_i coeffs[i] t^i. Requires |a| <= 1.
  static Forcing affine(double a, std::vector<double> g_coeffs);
  // mu * sin(x). Requires |mu| <= 1.
  static Forcing scaled_sine(double mu);

  // Parses "constant:C", "sin", "affine:A[:G0,G1,...]" or "scaled_sin:MU".
  static Forcing parse(const std::string& spec);

  Kind kind() const noexcept { return kind_; }
  double operator()(double t, double x) const;
  double lipschitz() const noexcept;  // proven bound in x
  std::string describe() const;

 private:
  Forcing(Kind kind, double p) : kind_(kind), p_(p) {}

  Kind kind_;
  double p_;  // c, a or mu
  std::vector<double> g_;
};

struct BvpProblem {
  Forcing f = Forcing::sine();
  std::size_t n = 128;  // number of intervals
  Quadrature quadrature = Quadrature::Simpson;
  double eps_fix = 1e-10;
  std::uint64_t max_iter = 1000;

  // Throws InvalidArgument unless n >= 2 (and even for Simpson).
  void validate() const;
  double h() const { return 1.0 / static_cast<double>(n); }
  double node(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(n); }
};

// Values at t_i = i / n, i = 0..n.
using GridFunction = std::vector<double>;

// int_0^1 G(t, s) ds by the chosen rule, split at the kink s = t. The
// closed form is t (1 - t) / 2.
double kernel_row_integral(double t, std::size_t n, Quadrature q);

// Discrete form of (Fx)(t_i) = int_0^1 G(t_i, s) f(s, x(s)) ds:
// (Fx)_i = sum_j W_ij f(t_j, x_j). Rows 0 and n are zero.
class IntegralOperator {
 public:
  explicit IntegralOperator(const BvpProblem& prob);

  GridFunction apply(const GridFunction& x) const;

  // Largest row sum of |W|: the discrete Lipschitz factor before f's own.
  double max_row_sum() const;

  const BvpProblem& problem() const noexcept { return prob_; }
  const std::vector<std::vector<double>>& weights() const noexcept { return w_; }

 private:
  BvpProblem prob_;
  std::vector<std::vector<double>> w_;
};

GridFunction apply_operator(const GridFunction& x, const BvpProblem& prob);

struct BvpSolution {
  GridFunction solution;
  std::uint64_t iterations = 0;
  std::vector<double> history;  // ||x_{n+1} - x_n||_inf
  bool converged = false;
};

// Picard iteration x_{n+1} = F x_n until the sup-norm step is <= eps_fix.
// Does not throw on non-convergence; check `converged`.
BvpSolution solve_bvp(const BvpProblem& prob, const GridFunction& x0);
BvpSolution solve_bvp(const BvpProblem& prob);  // from x0 = 0

// max over interior nodes of |-(x_{i-1} - 2 x_i + x_{i+1}) / h^2 - f(t_i, x_i)|.
double residual_check(const GridFunction& x, const BvpProblem& prob);

double sup_norm_diff(const GridFunction& x, const GridFunction& y);

}  // namespace bpp::bvp
