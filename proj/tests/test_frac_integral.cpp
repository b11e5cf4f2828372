#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jfrac/errors.hpp"
#include "jfrac/frac_integral.hpp"
#include "jfrac/poisson_kernel.hpp"
#include "jfrac/random.hpp"

using namespace jfrac;

namespace {

constexpr double kPi = std::numbers::pi;

// Kernel as the time average of the heat-type semigroup: the closed form on
// (0, 1] and the spectral series beyond.
double kernel_by_time_average(const FracParams& fp, double theta, double phi) {
  const PoissonClosedForm closed(fp.pp);
  const double s = fp.sigma;
  const QuadratureRule head = gauss_legendre_rule(80, 0.0, 1.0);
  double total = head.integrate([&](double u) { return closed(std::pow(u, 1.0 / s), theta, phi) / s; });
  const double cuts[] = {1.0, 3.0, 8.0, 20.0, 60.0};
  for (int i = 0; i + 1 < 5; ++i) {
    const QuadratureRule r = gauss_legendre_rule(60, cuts[i], cuts[i + 1]);
    total += r.integrate(
        [&](double t) { return std::pow(t, s - 1.0) * poisson_series(t, theta, phi, fp.pp); });
  }
  return total / std::tgamma(s);
}

}  // namespace

TEST(FracParams, EnforcesRegime) {
  EXPECT_THROW(FracParams(0.0, {0, 0}), DomainError);
  EXPECT_THROW(FracParams(1.0, {0, 0}), DomainError);
  EXPECT_THROW(FracParams(0.5, {-0.6, 0}), DomainError);
  EXPECT_THROW(FracParams(0.5, {0, -0.5}), DomainError);
  EXPECT_NO_THROW(FracParams(0.5, {-0.5, 0.0}));
}

TEST(FracKernel, TimeIntegralMatchesHighPrecisionValues) {
  const FracKernel k(FracParams(0.5, {0.5, 1.5}));
  EXPECT_NEAR(k.log_time_integral(1e-3), 21.9708287507838771, 1e-11);
  EXPECT_NEAR(k.log_time_integral(0.5), 1.77970982693867555, 1e-11);
  EXPECT_NEAR(k.log_time_integral_direct(1e-3), 21.9708287507838771, 1e-11);
}

TEST(FracKernel, TableAgreesWithDirectIntegration) {
  for (double sigma : {0.25, 0.75})
    for (const ParamPair pp : {ParamPair{-0.5, 0.0}, ParamPair{2.0, 5.0}}) {
      const FracKernel k(FracParams(sigma, pp));
      for (double d : {1e-30, 1e-12, 1e-5, 0.03, 0.7, 2.0, 3.9})
        EXPECT_NEAR(k.log_time_integral(d), k.log_time_integral_direct(d), 1e-9) << sigma << " " << d;
    }
}

TEST(FracKernel, MatchesTimeAverageOfSemigroup) {
  for (const auto& [sigma, pp] : {std::pair{0.5, ParamPair{0.5, 1.5}}, std::pair{0.3, ParamPair{0.0, 0.0}},
                                  std::pair{0.8, ParamPair{-0.5, 0.5}}}) {
    const FracParams fp(sigma, pp);
    const FracKernel k(fp);
    for (const auto& [th, ph] : {std::pair{1.0, 2.2}, std::pair{0.3, 2.9}, std::pair{2.0, 2.6}}) {
      const double ref = kernel_by_time_average(fp, th, ph);
      EXPECT_NEAR(k(th, ph), ref, 1e-8 * ref) << sigma << " " << th << " " << ph;
    }
  }
}

TEST(FracKernel, SymmetricPositiveAndFree) {
  const FracParams fp(0.4, {1.0, 2.0});
  const FracKernel k(fp);
  SplitMix64 rng(2);
  for (int i = 0; i < 30; ++i) {
    const double a = rng.uniform(0.01, 3.13), b = rng.uniform(0.01, 3.13);
    const double x = k(a, b);
    EXPECT_GT(x, 0.0);
    EXPECT_NEAR(x, k(b, a), 1e-13 * x);
    if (i < 3) EXPECT_NEAR(x, frac_kernel(fp, a, b), 1e-13 * x);
  }
}

TEST(FracKernel, ActsAsInversePowerOnPolynomials) {
  // Nodes cluster at the diagonal through phi = theta -+ x^2.
  const FracParams fp(0.5, {-0.5, 0.5});
  const FracKernel k(fp);
  const int N = 10;
  const TrigJacobiBasis basis(fp.pp, N);
  const QuadratureRule gl = gauss_legendre_rule(40, 0.0, 1.0);
  std::vector<double> P(N + 1), Q(N + 1);
  for (double th : {0.6, 1.7, 2.8}) {
    std::vector<double> acc(N + 1, 0.0);
    for (int side = 0; side < 2; ++side) {
      const double len = side == 0 ? th : kPi - th, R = std::sqrt(len);
      for (std::size_t i = 0; i < gl.size(); ++i) {
        const double x = gl.nodes[i] * R, ph = side == 0 ? th - x * x : th + x * x;
        const double w = gl.weights[i] * R * 2.0 * x * measure_density(ph, fp.pp) * k(th, ph);
        basis.fill(ph, P.data());
        for (int n = 0; n <= N; ++n) acc[n] += w * P[n];
      }
    }
    basis.fill(th, Q.data());
    for (int n = 0; n <= N; ++n)
      EXPECT_NEAR(acc[n], std::pow(eigen_root(n, fp.pp), -fp.sigma) * Q[n], 1e-9) << th << " " << n;
  }
}

TEST(FracIntegral, SpectralMultiplier) {
  const CoefficientVector cv({0.5, 1.5}, {1.0, 2.0, -1.0});
  const CoefficientVector out = frac_integral_spectral(cv, 0.5);
  for (int n = 0; n <= 2; ++n) EXPECT_DOUBLE_EQ(out[n], cv[n] * std::pow(n + 1.5, -0.5));
  const CoefficientVector zero_mode({-0.5, -0.5}, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(frac_integral_spectral(zero_mode, 0.5)[1], 1.0);
  EXPECT_THROW(frac_integral_spectral(CoefficientVector({-0.5, -0.5}, {1.0}), 0.5), DomainError);
}

TEST(FracIntegral, SemigroupRouteMatchesEigenAction) {
  for (const ParamPair pp : {ParamPair{0.0, 0.0}, ParamPair{0.5, 1.5}}) {
    const FracParams fp(0.6, pp);
    for (int n = 0; n <= 10; ++n) {
      auto f = [&](double t) { return trig_jacobi(n, pp, t); };
      for (double th : {0.5, 2.0}) {
        const double ref = std::pow(eigen_root(n, pp), -fp.sigma) * f(th);
        EXPECT_NEAR(frac_integral_semigroup(f, fp, th, 16, 64), ref, 1e-7);
      }
    }
  }
}

TEST(SharpBound, MajorantShape) {
  const FracParams fp(0.5, {0.0, 0.0});
  const double th = 1.0, ph = 2.0;
  const double w = 1.0 / (std::pow(std::sin(0.5) * std::sin(1.0), 0.5) * std::pow(std::cos(0.5) * std::cos(1.0), 0.5));
  EXPECT_NEAR(sharp_bound_rhs(fp, th, ph), w * (2.0 + std::pow(std::sin(0.25), -0.5)), 1e-13);
  EXPECT_THROW(sharp_bound_rhs(fp, 1.0, 1.0), DomainError);
  EXPECT_THROW(sharp_bound_rhs(fp, 0.0, 1.0), DomainError);
}

TEST(SharpBound, RatioStaysBoundedOnSmallGrid) {
  SharpBoundGrid g;
  g.alphas = {0.0};
  g.betas = {0.0, 10.0};
  g.thetas = {0.1, 1.5, 3.0};
  g.diagonal_offsets = {0.01, 0.0001};
  const BoundReport rep = verify_sharp_bound(0.5, g);
  ASSERT_EQ(rep.per_pair.size(), 2u);
  EXPECT_GT(rep.min_kernel, 0.0);
  EXPECT_GT(rep.sup, 0.0);
  EXPECT_LT(rep.spread, 4.0);
  for (const auto& s : rep.samples) EXPECT_NE(s.theta, s.phi);
}

TEST(SharpBound, EmptyGridGivesEmptyReport) {
  SharpBoundGrid g;
  const BoundReport rep = verify_sharp_bound(0.5, g);
  EXPECT_TRUE(rep.samples.empty());
  EXPECT_EQ(rep.sup, 0.0);
}

TEST(PiIntegral, KnownMoments) {
  // gamma = 1/2 is the uniform probability on [-1, 1]
  EXPECT_NEAR(pi_integral(0.5, [](double om, double) { return om * om; }), 4.0 / 3.0, 1e-12);
  // arcsine law
  EXPECT_NEAR(pi_integral(0.0, [](double om, double op) { return om * op; }), 0.5, 1e-12);
  EXPECT_NEAR(pi_integral(-0.5, [](double om, double) { return om; }), 1.0, 1e-15);
  EXPECT_THROW(pi_integral(-0.6, [](double, double) { return 1.0; }), DomainError);
}

TEST(LemmaEstimate, ArcsineCaseHasClosedForm) {
  for (const auto& [A, B] : {std::pair{2.0, 1.0}, std::pair{1.001, 1.0}, std::pair{50.0, 0.1}}) {
    const LemmaCheck c = lemma_estimate_check(0.0, 0.0, A, B);
    EXPECT_NEAR(c.lhs, 1.0 / std::sqrt(A * A - B * B), 1e-10 / std::sqrt(A * A - B * B));
    EXPECT_TRUE(c.holds());
  }
}

TEST(LemmaEstimate, HoldsOnRandomSamples) {
  SplitMix64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const double g = rng.uniform(-0.5, 20.0), l = i % 2 ? -0.5 : rng.uniform(-0.5, 20.0);
    const double B = std::pow(10.0, rng.uniform(-3.0, 2.0));
    const double A = B * (1.0 + std::pow(10.0, rng.uniform(-3.0, 3.0)));
    const LemmaCheck c = lemma_estimate_check(g, l, A, B);
    EXPECT_LE(c.log_lhs, c.log_rhs + 1e-12) << g << " " << l << " " << A << " " << B;
  }
}

TEST(LemmaEstimate, Domain) {
  EXPECT_THROW(lemma_estimate_check(0.0, 0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(lemma_estimate_check(-1.0, 0.0, 2.0, 1.0), DomainError);
  EXPECT_THROW(lemma_estimate_check(0.0, -0.7, 2.0, 1.0), DomainError);
  EXPECT_TRUE(lemma_estimate_check(-0.5, -0.5, 2.0, 1.0).holds());
}

TEST(FracIntegral, ContractionWhenSpectrumAboveOne) {
  SplitMix64 rng(8);
  for (const ParamPair pp : {ParamPair{0.5, 0.5}, ParamPair{0.0, 1.0}, ParamPair{3.0, 2.0}})
    for (int i = 0; i < 20; ++i) {
      std::vector<double> c(17);
      for (double& x : c) x = rng.normal();
      const CoefficientVector cv(pp, c);
      EXPECT_LE(frac_integral_spectral(cv, rng.uniform(0.01, 0.99)).l2_norm(), cv.l2_norm());
    }
}

TEST(WorkedExamples, IntegralEstimate) {
  const LemmaCheck d = lemma_estimate_check(-0.5, -0.5, 3.0, 0.5);
  EXPECT_EQ(d.lhs, 1.0);
  EXPECT_TRUE(lemma_estimate_check(0.5, 1.0, 2.0, 1.0).holds());
  const LemmaCheck l = lemma_estimate_check(1.5, -0.5, 1.1, 1.0);
  EXPECT_TRUE(l.holds());
  EXPECT_GT(l.rhs, 0.0);
}
