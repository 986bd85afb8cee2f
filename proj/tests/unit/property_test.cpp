// Randomised checks of the invariants. Every generator is seeded, so a
// failure names the trial that reproduces it.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bpp/bvp.hpp"
#include "bpp/contraction.hpp"
#include "bpp/error.hpp"
#include "bpp/instance_io.hpp"
#include "bpp/oracle.hpp"
#include "bpp/proximal.hpp"
#include "bpp/report.hpp"
#include "bpp/solver.hpp"
#include "helpers.hpp"

using namespace bpp;

namespace {

constexpr int kTrials = 300;

const std::vector<Metric>& coordinate_metrics() {
  static const std::vector<Metric> ms{Metric(MetricKind::L1), Metric(MetricKind::L2),
                                      Metric(MetricKind::LInf)};
  return ms;
}

bool same_as_sets(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto within = [](const std::vector<Point>& x, const std::vector<Point>& y) {
    for (const auto& p : x) {
      bool found = false;
      for (const auto& q : y) found = found || approx_equal(p, q);
      if (!found) return false;
    }
    return true;
  };
  return within(a, b) && within(b, a);
}

GenProfile certified_profile(std::uint64_t trial) {
  GenProfile g;
  g.n_a = 3 + trial % 2;
  g.n_b = g.n_a + 1;
  g.same_sets = trial % 3 == 0;
  if (g.same_sets) g.n_b = g.n_a;
  g.range_respecting = true;
  g.force_weak_p = true;
  g.k = 0.99;
  // Fixed-point instances have d(A, B) = 0, where the almost term may stay.
  g.lambda = g.same_sets ? 2.0 : 0.0;
  return g;
}

}  // namespace

TEST(MetricProperties, HausdorffIsAMetricOnFiniteSets) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t dim = 1 + t % 3;
    const auto a = testutil::lattice_set(rng, 4, dim, 3);
    const auto b = testutil::lattice_set(rng, 4, dim, 3);
    const auto c = testutil::lattice_set(rng, 4, dim, 3);
    for (const Metric& m : coordinate_metrics()) {
      const double ab = hausdorff(a, b, m), ba = hausdorff(b, a, m);
      EXPECT_EQ(ab, ba) << "trial " << t;
      EXPECT_EQ(ab == 0.0, same_as_sets(a, b)) << "trial " << t;
      EXPECT_EQ(hausdorff(a, a, m), 0.0);
      EXPECT_LE(hausdorff(a, c, m), ab + hausdorff(b, c, m) + 1e-12) << "trial " << t;
    }
  }
}

TEST(MetricProperties, PointMetricAxioms) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int t = 0; t < kTrials; ++t) {
    Point p{u(rng), u(rng), u(rng)}, q{u(rng), u(rng), u(rng)}, r{u(rng), u(rng), u(rng)};
    for (const Metric& m : coordinate_metrics()) {
      EXPECT_EQ(m(p, q), m(q, p));
      EXPECT_GT(m(p, q), 0.0);
      EXPECT_LE(m(p, r), m(p, q) + m(q, r) + 1e-12);
    }
    // The norms are ordered: linf <= l2 <= l1.
    EXPECT_LE(coordinate_metrics()[2](p, q), coordinate_metrics()[1](p, q) + 1e-12);
    EXPECT_LE(coordinate_metrics()[1](p, q), coordinate_metrics()[0](p, q) + 1e-12);
  }
}

TEST(MetricProperties, SetDistanceIsALowerBound) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < kTrials; ++t) {
    const auto a = testutil::lattice_set(rng, 5, 2);
    const auto b = testutil::lattice_set(rng, 6, 2);
    const Metric& m = coordinate_metrics()[t % 3];
    const double d = dist_set_set(a, b, m).distance;
    // Any subset of B, here the first half.
    const std::vector<Point> sub(b.begin(), b.begin() + static_cast<long>((b.size() + 1) / 2));
    for (const auto& x : a) EXPECT_LE(d, dist_point_set(x, sub, m).distance);
  }
}

TEST(MetricProperties, TableMetricFromPointsIsAccepted) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 50; ++t) {
    const auto pts = testutil::lattice_set(rng, 6, 2);
    std::vector<std::vector<double>> rows(pts.size(), std::vector<double>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) rows[i][j] = dist(pts[i], pts[j], coordinate_metrics()[0]);
    }
    EXPECT_NO_THROW(Metric::table(rows));
    if (pts.size() >= 3) {
      // Stretching one entry past the sum of two others breaks the triangle inequality.
      auto bad = rows;
      bad[0][1] = bad[1][0] = rows[0][2] + rows[2][1] + 1;
      EXPECT_THROW(Metric::table(bad), InvalidArgument);
    }
  }
}

TEST(ProximalProperties, PImpliesWeakPAndProjectionsAgree) {
  std::size_t p_holds = 0;
  for (std::uint64_t seed = 0; seed < kTrials; ++seed) {
    GenProfile g;
    g.n_a = 2 + seed % 6;
    g.n_b = 2 + (seed / 6) % 6;
    g.metric = static_cast<MetricKind>(seed % 3);
    g.extent = 3;
    const Instance inst = gen_instance(seed, g).instance;
    const auto pp = proximal_pairs(inst.a, inst.b, inst.metric);
    EXPECT_EQ(pp.a0.empty(), pp.b0.empty());
    EXPECT_FALSE(pp.a0.empty());  // finite sets always attain the distance
    for (const auto& [x, y] : pp.pairs) {
      EXPECT_LE(std::abs(inst.metric(inst.a[x], inst.b[y]) - pp.d_ab), pp.eps_prox);
      EXPECT_TRUE(pp.in_a0(x));
      EXPECT_TRUE(pp.in_b0(y));
    }
    const bool p = check_P(pp, inst.a, inst.b, inst.metric).holds;
    if (p) {
      ++p_holds;
      EXPECT_TRUE(check_weak_P(pp, inst.a, inst.b, inst.metric).holds) << "seed " << seed;
    }
  }
  EXPECT_GT(p_holds, 0u);
}

TEST(ThetaProperties, InverseRoundTripAndMonotone) {
  const std::vector<Theta> thetas{Theta::exp(), Theta::pow_base(5), Theta::pow_base(1.5), Theta::exp_sqrt()};
  for (const Theta& th : thetas) {
    double prev = 1.0;
    for (int i = 0; i <= 400; ++i) {
      const double t = std::pow(10.0, -8.0 + 9.0 * i / 400.0);  // 1e-8 .. 10
      const double v = th(t);
      EXPECT_GT(v, prev) << th.name() << " t=" << t;
      prev = v;
      EXPECT_NEAR(th.inverse(v), t, 1e-10) << th.name() << " t=" << t;
      EXPECT_NEAR(th.inverse_log(th.log_value(t)), t, 1e-10 * std::max(1.0, t)) << th.name();
    }
  }
}

TEST(ContractionProperties, MonotoneInK) {
  std::size_t exercised = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenProfile g;
    g.n_a = 4;
    g.lambda = static_cast<double>(seed % 3);
    Instance inst = gen_instance(seed, g).instance;
    const auto base = audit_contraction(inst.f, inst.metric, inst.theta, inst.params, inst.a, inst.b);
    if (!base.k_min || *base.k_min >= 1) continue;
    ++exercised;
    for (double k = std::max(0.01, *base.k_min); k < 1; k += 0.07) {
      inst.params.k = k;
      EXPECT_TRUE(audit_contraction(inst.f, inst.metric, inst.theta, inst.params, inst.a, inst.b).holds)
          << "seed " << seed << " k " << k;
    }
    inst.params.k = *base.k_min * 0.95;
    if (inst.params.k > 0) {
      EXPECT_FALSE(audit_contraction(inst.f, inst.metric, inst.theta, inst.params, inst.a, inst.b).holds);
    }
  }
  EXPECT_GE(exercised, 20u);
}

TEST(ContractionProperties, ExpAuditIsHausdorffContraction) {
  // alpha = 1, lambda = 0, Theta = EXP: the audit holds at k iff H(Fx,Fy) <= k d(x,y).
  std::size_t holding = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenProfile g;
    g.n_a = 3;
    g.n_b = 1 + seed % 3;  // small codomains make contractive maps common
    g.image_size = 1 + seed % 2;
    g.metric = static_cast<MetricKind>(seed % 3);
    Instance inst = gen_instance(seed, g).instance;
    for (double k : {0.3, 0.6, 0.9}) {
      inst.params.k = k;
      bool direct = true;
      for (std::size_t x = 0; x < inst.a.size(); ++x) {
        for (std::size_t y = x + 1; y < inst.a.size(); ++y) {
          const double h = hausdorff(inst.f.image_points(x, inst.b), inst.f.image_points(y, inst.b), inst.metric);
          direct = direct && h <= k * inst.metric(inst.a[x], inst.a[y]) + 1e-12;
        }
      }
      EXPECT_EQ(audit_contraction(inst.f, inst.metric, Theta::exp(), inst.params, inst.a, inst.b).holds, direct)
          << "seed " << seed << " k " << k;
      holding += direct;
    }
  }
  EXPECT_GE(holding, 20u);
}

TEST(OracleProperties, AgreesWithSetDistance) {
  for (std::uint64_t seed = 0; seed < kTrials; ++seed) {
    GenProfile g;
    g.n_a = 1 + seed % 7;
    g.n_b = 1 + seed % 5;
    g.image_size = 3;
    const Instance inst = gen_instance(seed, g).instance;
    const OracleReport r = oracle_bpp(inst);
    EXPECT_EQ(r.d_ab, dist_set_set(inst.a, inst.b, inst.metric).distance);
    double min_gap = INFINITY;
    for (std::size_t x = 0; x < inst.a.size(); ++x) {
      EXPECT_GE(r.gaps[x], -inst.tol.eps_prox);
      EXPECT_EQ(r.contains(x), r.gaps[x] <= inst.tol.eps_prox);
      min_gap = std::min(min_gap, r.gaps[x]);
    }
    EXPECT_GE(min_gap, 0.0);
  }
}

TEST(SolverProperties, CertifiedRunsLandInOracleSet) {
  std::size_t certified = 0;
  for (std::uint64_t seed = 0; certified < 50 && seed < 5000; ++seed) {
    Instance inst = gen_instance(seed, certified_profile(seed)).instance;
    inst.audit.order = PairOrder::Ordered;
    if (!inst.seeds) continue;
    const BppResult r = solve(inst);
    if (!r.certified) continue;
    ++certified;
    EXPECT_EQ(r.trace.outcome, Outcome::Converged) << "seed " << seed;
    EXPECT_LE(r.gap, 1e-9);
    EXPECT_TRUE(oracle_bpp(inst).contains(r.index)) << "seed " << seed;
    EXPECT_TRUE(r.trace.decay_applicable);
    const ProximalPairing& pp = r.audits->pairing;
    for (const TraceStep& s : r.trace.steps) {
      if (!s.has_next) continue;
      EXPECT_NEAR(inst.metric(inst.a[s.x_next], inst.b[s.y]), pp.d_ab, pp.eps_prox);
      EXPECT_TRUE(s.alpha_ok);
      EXPECT_LE(s.d_step, s.bound + 1e-9) << "seed " << seed << " n " << s.n;
      if (s.n >= 1) {
        EXPECT_LE(s.d_step, s.d_y + 1e-9) << "seed " << seed << " n " << s.n;
      }
    }
  }
  EXPECT_EQ(certified, 50u);
}

TEST(IoProperties, GeneratedInstancesRoundTrip) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenProfile g;
    g.metric = static_cast<MetricKind>(seed % 3);
    g.same_sets = seed % 4 == 0;
    const Instance inst = gen_instance(seed, g).instance;
    const auto j = instance_to_json(inst);
    const Instance back = instance_from_json(j);
    EXPECT_EQ(instance_to_json(back).dump(), j.dump());
    EXPECT_EQ(instance_digest(back), instance_digest(inst));
    EXPECT_EQ(check_report(back).dump(), check_report(inst).dump());
  }
}

TEST(BvpProperties, KernelShape) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng), s = u(rng);
    EXPECT_EQ(bvp::green(t, s), bvp::green(s, t));
    EXPECT_GE(bvp::green(t, s), 0.0);
    EXPECT_LE(bvp::green(t, s), 0.25);
    EXPECT_EQ(bvp::green(0, s), 0.0);
    EXPECT_EQ(bvp::green(1, s), 0.0);
  }
}

TEST(BvpProperties, LipschitzAndPicardRatio) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> amp(-3, 3);
  const std::vector<std::string> catalog{"sin", "scaled_sin:-0.7", "affine:0.9:0.5,-1", "affine:-1:2"};
  for (const std::string& f : catalog) {
    for (std::size_t n : {16, 32, 64}) {
      bvp::BvpProblem p;
      p.f = bvp::Forcing::parse(f);
      p.n = n;
      EXPECT_LE(empirical_lipschitz(p, 100, n), 0.125 + 10 * p.h() * p.h()) << f << ' ' << n;

      bvp::GridFunction x0(n + 1);
      const double a = amp(rng), b = amp(rng);
      for (std::size_t i = 1; i < n; ++i) x0[i] = a * std::sin(M_PI * p.node(i)) + b * p.node(i) * (1 - p.node(i));
      const auto sol = bvp::solve_bvp(p, x0);
      ASSERT_TRUE(sol.converged) << f;
      for (std::size_t k = 1; k < sol.history.size(); ++k) {
        if (sol.history[k - 1] < 1e-12) break;
        EXPECT_LE(sol.history[k] / sol.history[k - 1], 0.13) << f << ' ' << n << ' ' << k;
      }
    }
  }
}
