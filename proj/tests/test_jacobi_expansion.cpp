#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jfrac/errors.hpp"
#include "jfrac/jacobi_expansion.hpp"
#include "jfrac/random.hpp"

using namespace jfrac;

namespace {

const ParamPair kPairs[] = {{-0.5, -0.5}, {-0.5, 0.5}, {0.0, 0.0}, {0.5, 1.5}, {3.0, 3.0}, {2.0, -0.5}};

}  // namespace

TEST(TrigJacobi, OrthonormalUnderAngleRule) {
  for (const ParamPair& pp : kPairs) {
    const int N = 20;
    const QuadratureRule r = default_angle_rule(pp, 40);
    std::vector<std::vector<double>> P;
    for (double t : r.nodes) P.push_back(trig_jacobi_all(N, pp, t));
    for (int m = 0; m <= N; ++m)
      for (int n = m; n <= N; ++n) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * P[i][m] * P[i][n];
        EXPECT_NEAR(s, m == n ? 1.0 : 0.0, 1e-12) << pp.alpha << " " << pp.beta << " " << m << " " << n;
      }
  }
}

TEST(TrigJacobi, UnitMeasureForLegendreCase) {
  EXPECT_NEAR(norm_const(0, {0.0, 0.0}), 1.0, 1e-15);
}

TEST(TrigJacobi, RecurrenceMatchesDirectEvaluation) {
  SplitMix64 rng(3);
  for (const ParamPair& pp : kPairs) {
    const double t = rng.uniform(0.05, 3.1);
    const auto all = trig_jacobi_all(40, pp, t);
    for (int n = 0; n <= 40; ++n) {
      const double ref = norm_const(n, pp) * jacobi_poly(n, pp.alpha, pp.beta, std::cos(t));
      EXPECT_NEAR(all[n], ref, 1e-11 * std::max(1.0, std::abs(ref)));
      EXPECT_NEAR(trig_jacobi(n, pp, t), ref, 1e-11 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST(TrigJacobi, EigenvaluesAreShiftedSquares) {
  const ParamPair pp{0.5, 1.5};
  EXPECT_DOUBLE_EQ(eigen_root(3, pp), 4.5);
  EXPECT_DOUBLE_EQ(eigenvalue(3, pp), 20.25);
  EXPECT_DOUBLE_EQ(eigenvalue(0, {-0.5, -0.5}), 0.0);
}

TEST(TrigJacobi, StencilReproducesEigenvalue) {
  for (const ParamPair& pp : kPairs)
    for (int n : {0, 1, 4, 9})
      for (double t : {0.4, 1.3, 2.7}) {
        auto f = [&](double x) { return trig_jacobi(n, pp, x); };
        const double got = apply_operator_stencil(f, pp, t, 1e-4);
        const double ref = eigenvalue(n, pp) * f(t);
        EXPECT_NEAR(got, ref, 1e-5 * std::max(1.0, std::abs(eigenvalue(n, pp))));
      }
}

TEST(TrigJacobi, StencilRejectsBadSteps) {
  auto f = [](double) { return 1.0; };
  EXPECT_THROW(apply_operator_stencil(f, {0, 0}, 1.0, 0.0), DomainError);
  EXPECT_THROW(apply_operator_stencil(f, {0, 0}, 0.01, 0.02), DomainError);
}

TEST(Expansion, RoundTripRecoversCoefficients) {
  SplitMix64 rng(7);
  for (const ParamPair& pp : kPairs) {
    const int N = 24;
    std::vector<double> c(N + 1);
    for (double& x : c) x = rng.normal();
    const CoefficientVector cv(pp, c);
    const QuadratureRule r = default_angle_rule(pp, 64);
    const auto samples = synthesize(cv, r.nodes);
    const CoefficientVector back = expand_samples(samples, pp, N, r);
    for (int n = 0; n <= N; ++n) EXPECT_NEAR(back[n], c[n], 1e-12);
    // Parseval
    double l2 = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) l2 += r.weights[i] * samples[i] * samples[i];
    EXPECT_NEAR(std::sqrt(l2), cv.l2_norm(), 1e-12 * cv.l2_norm());
  }
}

TEST(Expansion, SynthesizeScalarAgreesWithVector) {
  const CoefficientVector cv({0.5, 1.5}, {1.0, -2.0, 0.25, 3.0});
  const std::vector<double> th{0.3, 1.1, 2.9};
  const auto v = synthesize(cv, th);
  for (std::size_t i = 0; i < th.size(); ++i) EXPECT_NEAR(v[i], synthesize(cv, th[i]), 1e-14);
}

TEST(Expansion, ExpandOfSmoothFunctionConverges) {
  const ParamPair pp{0.0, 0.0};
  auto f = [](double t) { return std::exp(std::cos(t)); };
  const QuadratureRule r = default_angle_rule(pp, 64);
  const CoefficientVector cv = expand(f, pp, 30, r);
  for (double t : {0.2, 1.0, 2.5}) EXPECT_NEAR(synthesize(cv, t), f(t), 1e-13);
}

TEST(Expansion, ChecksRuleCompatibility) {
  const ParamPair pp{0.5, 0.5};
  auto f = [](double) { return 1.0; };
  EXPECT_THROW(expand(f, pp, 10, default_angle_rule(pp, 8)), InsufficientExactness);
  EXPECT_THROW(expand(f, pp, 4, default_angle_rule({0.0, 0.0}, 16)), DomainError);
  EXPECT_THROW(expand(f, pp, 4, gauss_legendre_rule(16, 0.0, 3.0)), DomainError);
}

TEST(Expansion, RejectsBadInput) {
  EXPECT_THROW(CoefficientVector({0, 0}, {}), DomainError);
  EXPECT_THROW(CoefficientVector({0, 0}, {1.0, NAN}), DomainError);
  EXPECT_THROW(CoefficientVector({-1.0, 0}, {1.0}), DomainError);
  EXPECT_THROW(trig_jacobi(1, {0, 0}, 0.0), DomainError);
  EXPECT_THROW(trig_jacobi(1, {0, 0}, std::numbers::pi), DomainError);
  EXPECT_THROW(measure_density(-0.1, {0, 0}), DomainError);
}

TEST(Expansion, UnitVector) {
  const auto u = CoefficientVector::unit({0, 0}, 2, 5);
  EXPECT_EQ(u.truncation(), 5);
  EXPECT_EQ(u[2], 1.0);
  EXPECT_EQ(u.l2_norm(), 1.0);
  EXPECT_THROW(CoefficientVector::unit({0, 0}, 6, 5), DomainError);
}

TEST(TrigJacobi, GramMatrixOnParameterGrid) {
  for (double a : {-0.5, 0.0, 1.5, 5.0})
    for (double b : {-0.5, 0.0, 1.5, 5.0}) {
      const ParamPair pp{a, b};
      const QuadratureRule r = default_angle_rule(pp);
      const TrigJacobiBasis basis(pp, 16);
      std::vector<double> G(17 * 17, 0.0), P(17);
      for (std::size_t i = 0; i < r.size(); ++i) {
        basis.fill(r.nodes[i], P.data());
        for (int m = 0; m <= 16; ++m)
          for (int n = 0; n <= 16; ++n) G[m * 17 + n] += r.weights[i] * P[m] * P[n];
      }
      double worst = 0.0;
      for (int m = 0; m <= 16; ++m)
        for (int n = 0; n <= 16; ++n) worst = std::max(worst, std::abs(G[m * 17 + n] - (m == n)));
      EXPECT_LE(worst, 1e-8) << a << " " << b;
    }
}

TEST(TrigJacobi, StencilResidualIsSecondOrder) {
  const ParamPair pp{0.5, 1.5};
  for (int n : {3, 6})
    for (double t : {0.7, 2.2}) {
      auto f = [&](double x) { return trig_jacobi(n, pp, x); };
      auto residual = [&](double h) { return std::abs(apply_operator_stencil(f, pp, t, h) - eigenvalue(n, pp) * f(t)); };
      const double ratio = residual(4e-3) / residual(2e-3);
      EXPECT_NEAR(ratio, 4.0, 0.1) << n << " " << t;
    }
}

TEST(Expansion, IsLinear) {
  const ParamPair pp{1.5, 0.0};
  const QuadratureRule r = default_angle_rule(pp, 64);
  auto f = [](double t) { return std::sin(3.0 * t) + t; };
  auto g = [](double t) { return std::exp(-t * t); };
  const double a = 2.5, b = -0.75;
  const CoefficientVector cf = expand(f, pp, 30, r), cg = expand(g, pp, 30, r);
  const CoefficientVector cs = expand([&](double t) { return a * f(t) + b * g(t); }, pp, 30, r);
  for (int n = 0; n <= 30; ++n) EXPECT_NEAR(cs[n], a * cf[n] + b * cg[n], 1e-10);
}

TEST(Expansion, ReproducesPolynomialsInCosine) {
  for (const ParamPair& pp : kPairs) {
    const int N = 12;
    auto f = [](double t) {
      const double x = std::cos(t);
      double s = 0.0;
      for (int k = N; k >= 0; --k) s = s * x + (k % 3 == 0 ? 1.0 : -0.5) / (1.0 + k);
      return s;
    };
    const CoefficientVector cv = expand(f, pp, N, default_angle_rule(pp, 2 * N));
    double worst = 0.0;
    for (int i = 1; i < 100; ++i) {
      const double t = std::numbers::pi * i / 100.0;
      worst = std::max(worst, std::abs(synthesize(cv, t) - f(t)));
    }
    EXPECT_LE(worst, 1e-8) << pp.alpha << " " << pp.beta;
  }
}

TEST(WorkedExamples, MeasureNormsAndEigenvalues) {
  const double h = std::numbers::pi / 2;
  EXPECT_NEAR(measure_density(h, {-0.5, -0.5}), 1.0, 1e-15);
  EXPECT_NEAR(measure_density(h, {0.5, 0.5}), 0.25, 1e-15);
  EXPECT_NEAR(norm_const(0, {0.0, 0.0}), 1.0, 1e-15);
  EXPECT_NEAR(norm_const(0, {-0.5, -0.5}), 1.0 / std::sqrt(std::numbers::pi), 1e-15);
  const ParamPair p21{2.0, 1.0};
  const QuadratureRule r = default_angle_rule(p21, 16);
  EXPECT_NEAR(r.integrate([&](double t) { return std::pow(trig_jacobi(3, p21, t), 2); }), 1.0, 1e-9);
  EXPECT_NEAR(trig_jacobi(0, {1.0, 3.0}, 0.4), trig_jacobi(0, {1.0, 3.0}, 2.9), 1e-15);
  EXPECT_NEAR(trig_jacobi(4, {-0.5, -0.5}, 0.8), std::sqrt(2.0 / std::numbers::pi) * std::cos(3.2), 1e-14);
  for (int n = 0; n < 6; ++n) EXPECT_DOUBLE_EQ(eigenvalue(n, {-0.5, -0.5}), n * n);
  EXPECT_DOUBLE_EQ(eigenvalue(0, {0.0, 0.0}), 0.25);
  EXPECT_DOUBLE_EQ(eigenvalue(2, {1.0, 2.0}), 16.0);
  // sin(t/2) cos(t/2) = sin(t)/2 has unit mass on (0, pi)
  const QuadratureRule r00 = default_angle_rule({0.0, 0.0}, 4);
  EXPECT_NEAR(r00.integrate([](double) { return 1.0; }), 1.0, 1e-14);
}

TEST(WorkedExamples, ExpandSynthesizeStencil) {
  const ParamPair pp{0.5, 1.5};
  const QuadratureRule r = default_angle_rule(pp);
  const CoefficientVector e3 = expand([&](double t) { return trig_jacobi(3, pp, t); }, pp, 8, r);
  for (int n = 0; n <= 8; ++n) EXPECT_NEAR(e3[n], n == 3 ? 1.0 : 0.0, 1e-9);
  const CoefficientVector ones = expand([](double) { return 1.0; }, pp, 8, r);
  for (int n = 0; n <= 8; ++n) EXPECT_NEAR(ones[n], n == 0 ? 1.0 / norm_const(0, pp) : 0.0, 1e-9);
  const CoefficientVector mix =
      expand([&](double t) { return 2.0 * trig_jacobi(1, pp, t) + 5.0 * trig_jacobi(4, pp, t); }, pp, 8, r);
  for (int n = 0; n <= 8; ++n) EXPECT_NEAR(mix[n], n == 1 ? 2.0 : n == 4 ? 5.0 : 0.0, 1e-9);
  EXPECT_NEAR(synthesize(CoefficientVector::unit(pp, 0, 4), 1.3), norm_const(0, pp), 1e-15);
  EXPECT_EQ(synthesize(CoefficientVector(pp, {0.0, 0.0, 0.0}), 1.3), 0.0);

  for (int n = 0; n <= 8; ++n) {
    auto f = [&](double t) { return trig_jacobi(n, pp, t); };
    const double t = 1.1, lam = eigenvalue(n, pp) * f(t);
    const double e1 = std::abs(apply_operator_stencil(f, pp, t, 1e-3) - lam);
    const double e2 = std::abs(apply_operator_stencil(f, pp, t, 5e-4) - lam);
    if (n > 0) EXPECT_NEAR(e1 / e2, 4.0, 0.5) << n;
    else EXPECT_LT(e1, 1e-12);
  }
  EXPECT_DOUBLE_EQ(apply_operator_stencil([](double) { return 1.0; }, pp, 1.0, 1e-3), 0.25 * pp.rho() * pp.rho());
  const ParamPair leg{0.0, 0.0};
  EXPECT_NEAR(apply_operator_stencil([&](double t) { return trig_jacobi(1, leg, t); }, leg, std::numbers::pi / 2, 1e-3),
              0.0, 1e-6);
}
