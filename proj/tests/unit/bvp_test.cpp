#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bpp/bvp.hpp"
#include "bpp/error.hpp"
#include "bpp/report.hpp"

using namespace bpp;
using namespace bpp::bvp;

namespace {

double closed_row(double t) { return -t * t / 2 + t / 2; }

BvpProblem problem(const std::string& f, std::size_t n, Quadrature q = Quadrature::Simpson) {
  BvpProblem p;
  p.f = Forcing::parse(f);
  p.n = n;
  p.quadrature = q;
  return p;
}

}  // namespace

TEST(Green, Values) {
  EXPECT_DOUBLE_EQ(green(0.25, 0.5), 0.125);
  EXPECT_DOUBLE_EQ(green(0.5, 0.25), 0.125);
  for (double t : {0.0, 0.3, 0.5, 1.0}) {
    EXPECT_DOUBLE_EQ(green(t, t), t * (1 - t));
    EXPECT_EQ(green(0, t), 0.0);
    EXPECT_EQ(green(1, t), 0.0);
  }
  EXPECT_THROW(green(-0.1, 0.5), InvalidArgument);
  EXPECT_THROW(green(0.5, 1.5), InvalidArgument);
}

TEST(KernelRow, Values) {
  EXPECT_NEAR(kernel_row_integral(0.5, 128, Quadrature::Simpson), 0.125, 1e-12);
  EXPECT_EQ(kernel_row_integral(0.0, 128, Quadrature::Simpson), 0.0);
  EXPECT_NEAR(kernel_row_integral(0.25, 128, Quadrature::Simpson), 3.0 / 32, 1e-12);
  EXPECT_NEAR(kernel_row_integral(0.25, 128, Quadrature::Trapezoid), 3.0 / 32, 1e-12);
}

TEST(KernelRow, OffGridPoints) {
  // G is linear on each side of the kink, so every split rule is exact.
  for (double t : {0.1, 1.0 / 3, 0.77}) {
    for (std::size_t n : {2, 8, 128}) {
      EXPECT_NEAR(kernel_row_integral(t, n, Quadrature::Simpson), closed_row(t), 1e-12) << t << ' ' << n;
      EXPECT_NEAR(kernel_row_integral(t, n, Quadrature::Trapezoid), closed_row(t), 1e-12) << t << ' ' << n;
    }
  }
}

TEST(Forcing, Catalog) {
  EXPECT_EQ(Forcing::parse("constant:2")(0.3, 7.0), 2.0);
  EXPECT_DOUBLE_EQ(Forcing::parse("sin")(0.3, 1.0), std::sin(1.0));
  EXPECT_DOUBLE_EQ(Forcing::parse("scaled_sin:0.5")(0, 1.0), 0.5 * std::sin(1.0));
  EXPECT_DOUBLE_EQ(Forcing::parse("affine:0.5:1,2")(0.5, 2.0), 0.5 * 2 + 1 + 2 * 0.5);
  EXPECT_DOUBLE_EQ(Forcing::parse("affine:-1")(0.5, 2.0), -2.0);
  EXPECT_EQ(Forcing::parse("constant:3").lipschitz(), 0.0);
  EXPECT_EQ(Forcing::parse("sin").lipschitz(), 1.0);
  EXPECT_EQ(Forcing::parse("affine:-0.75").lipschitz(), 0.75);
  EXPECT_THROW(Forcing::parse("affine:1.5"), InvalidArgument);
  EXPECT_THROW(Forcing::parse("scaled_sin:2"), InvalidArgument);
  EXPECT_THROW(Forcing::parse("cos"), InvalidArgument);
  EXPECT_THROW(Forcing::parse("constant:abc"), InvalidArgument);
}

TEST(Problem, Validation) {
  EXPECT_THROW(problem("sin", 1).validate(), InvalidArgument);
  EXPECT_THROW(problem("sin", 7).validate(), InvalidArgument);
  EXPECT_NO_THROW(problem("sin", 7, Quadrature::Trapezoid).validate());
  EXPECT_EQ(quadrature_from_string("simpson"), Quadrature::Simpson);
  EXPECT_EQ(quadrature_from_string("TRAPEZOID"), Quadrature::Trapezoid);
  EXPECT_THROW(quadrature_from_string("gauss"), InvalidArgument);
}

TEST(Operator, ConstantForcing) {
  const BvpProblem p = problem("constant:2", 128);
  const GridFunction fx = apply_operator(GridFunction(129, 0.0), p);
  for (std::size_t i = 0; i <= 128; ++i) {
    const double t = p.node(i);
    EXPECT_NEAR(fx[i], t * (1 - t), 1e-12);
  }
  EXPECT_EQ(fx.front(), 0.0);
  EXPECT_EQ(fx.back(), 0.0);
  const GridFunction z = apply_operator(GridFunction(129, 3.0), problem("constant:0", 128));
  for (double v : z) EXPECT_EQ(v, 0.0);
}

TEST(Operator, RowSumIsOneEighth) {
  for (std::size_t n : {16, 64, 128}) {
    EXPECT_NEAR(IntegralOperator(problem("sin", n)).max_row_sum(), 0.125, 1e-12);
    EXPECT_NEAR(IntegralOperator(problem("sin", n, Quadrature::Trapezoid)).max_row_sum(), 0.125, 1e-12);
  }
}

TEST(Operator, WeightsAreSymmetricUpToNodeWeight) {
  // Trapezoid weights are G(t_i, t_j) h away from the ends, so W_ij = W_ji inside.
  const IntegralOperator op(problem("sin", 16, Quadrature::Trapezoid));
  const auto& w = op.weights();
  for (std::size_t i = 1; i < 16; ++i) {
    for (std::size_t j = 1; j < 16; ++j) EXPECT_NEAR(w[i][j], w[j][i], 1e-15);
  }
}

TEST(SolveBvp, ConstantTwo) {
  const BvpProblem p = problem("constant:2", 128);
  const BvpSolution s = solve_bvp(p);
  ASSERT_TRUE(s.converged);
  EXPECT_NEAR(s.solution[64], 0.25, 1e-8);
  double err = 0;
  for (std::size_t i = 0; i <= 128; ++i) err = std::max(err, std::abs(s.solution[i] - p.node(i) * (1 - p.node(i))));
  EXPECT_LE(err, 1e-8);
  EXPECT_LE(residual_check(s.solution, p), 1e-8);
}

TEST(SolveBvp, ConstantZeroIsImmediate) {
  const BvpSolution s = solve_bvp(problem("constant:0", 64));
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(s.iterations, 1u);
  EXPECT_EQ(residual_check(s.solution, problem("constant:0", 64)), 0.0);
}

TEST(SolveBvp, SineFromZeroStaysAtZero) {
  // sin 0 = 0, so the zero function is already the fixed point.
  const BvpSolution s = solve_bvp(problem("sin", 128));
  EXPECT_TRUE(s.converged);
  for (double v : s.solution) EXPECT_EQ(v, 0.0);
}

TEST(SolveBvp, SineRatiosFromNonzeroStart) {
  const BvpProblem p = problem("sin", 128);
  GridFunction x0(129);
  for (std::size_t i = 1; i < 128; ++i) x0[i] = 3.0 * std::sin(M_PI * p.node(i));
  const BvpSolution s = solve_bvp(p, x0);
  ASSERT_TRUE(s.converged);
  ASSERT_GE(s.history.size(), 3u);
  for (std::size_t n = 1; n < s.history.size(); ++n) {
    if (s.history[n - 1] < 1e-13) break;
    EXPECT_LE(s.history[n] / s.history[n - 1], 0.13) << n;
  }
}

TEST(SolveBvp, AffineResidualIsSecondOrder) {
  // -x'' = x + 1: the finite-difference residual of the discrete fixed point
  // is dominated by the O(h^2) truncation of the second difference.
  const double r64 = residual_check(solve_bvp(problem("affine:1:1", 64)).solution, problem("affine:1:1", 64));
  const double r128 = residual_check(solve_bvp(problem("affine:1:1", 128)).solution, problem("affine:1:1", 128));
  EXPECT_GT(r64 / r128, 3.5);
  EXPECT_LT(r64 / r128, 4.5);
}

TEST(SolveBvp, IterationLimit) {
  BvpProblem p = problem("affine:1:1", 32);
  p.max_iter = 2;
  const BvpSolution s = solve_bvp(p);
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.iterations, 2u);
}

TEST(EmpiricalLipschitz, WithinDiscreteSlack) {
  for (std::size_t n : {16, 64, 128}) {
    const BvpProblem p = problem("sin", n);
    const double est = empirical_lipschitz(p, 100, 7);
    EXPECT_LE(est, 0.125 + 10 * p.h() * p.h()) << n;
    // f = x turns a constant shift into exactly the 1/8 row sum.
    EXPECT_NEAR(empirical_lipschitz(problem("affine:1", n), 100, 7), 0.125, 1e-9) << n;
  }
}
