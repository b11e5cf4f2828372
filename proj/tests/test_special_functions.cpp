#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "jfrac/errors.hpp"
#include "jfrac/random.hpp"
#include "jfrac/special_functions.hpp"

using namespace jfrac;

namespace {

using quad = __float128;

// Rodrigues form expanded with the Leibniz rule:
// P_n = (-1)^n / (2^n n!) (1-x)^-a (1+x)^-b d^n[(1-x)^(a+n) (1+x)^(b+n)]
double jacobi_rodrigues(int n, double a, double b, double x) {
  auto falling = [](quad top, int k) {
    quad r = 1;
    for (int i = 0; i < k; ++i) r *= top - i;
    return r;
  };
  const quad xm = 1 - quad(x), xp = 1 + quad(x);
  quad s = 0, binom = 1;
  for (int k = 0; k <= n; ++k) {
    // d^k (1-x)^(a+n) and d^(n-k) (1+x)^(b+n), divided by the outer powers
    quad term = binom * falling(quad(a) + n, k) * falling(quad(b) + n, n - k);
    if (k % 2) term = -term;
    for (int i = 0; i < n - k; ++i) term *= xm;
    for (int i = 0; i < k; ++i) term *= xp;
    s += term;
    binom = binom * (n - k) / (k + 1);
  }
  quad scale = 1;
  for (int i = 1; i <= n; ++i) scale *= 2 * quad(i);
  return static_cast<double>((n % 2 ? -s : s) / scale);
}

// sum_{k} (-1)^k Gamma(n-k+lambda) / (Gamma(lambda) k! (n-2k)!) (2x)^(n-2k)
double gegenbauer_explicit(int n, double lambda, double x) {
  quad s = 0;
  for (int k = 0; 2 * k <= n; ++k) {
    quad c = 1;
    for (int i = 0; i < n - k; ++i) c *= quad(lambda) + i;
    for (int i = 1; i <= k; ++i) c /= i;
    for (int i = 1; i <= n - 2 * k; ++i) c /= i;
    for (int i = 0; i < n - 2 * k; ++i) c *= 2 * quad(x);
    s += (k % 2 ? -c : c);
  }
  return static_cast<double>(s);
}

// log of 1 / ||P_n|| in the probability-normalized interval measure
double log_norm_size(int n, double a, double b) {
  const double rho = a + b + 1.0;
  if (n == 0) return 0.0;
  return 0.5 * (std::log(2.0 * n + rho) + std::lgamma(n + 1.0) + std::lgamma(n + rho) - std::lgamma(n + a + 1.0) -
                std::lgamma(n + b + 1.0) - std::lgamma(rho + 1.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0));
}

double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

}  // namespace

TEST(LogGamma, MatchesTgammaAndKnownValues) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.25, 30.0})
    EXPECT_NEAR(log_gamma(x), std::log(std::tgamma(x)), 1e-13 * std::max(1.0, std::abs(log_gamma(x))));
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-15);
  EXPECT_EQ(log_gamma(1.0), 0.0);
  EXPECT_EQ(log_gamma(2.0), 0.0);
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.5), DomainError);
}

TEST(LogGamma, SignedVersionHandlesNegativeArguments) {
  int sign = 0;
  const double l = log_abs_gamma(-0.5, &sign);
  EXPECT_EQ(sign, -1);
  EXPECT_NEAR(std::exp(l), 2.0 * std::sqrt(std::numbers::pi), 1e-14);
}

TEST(JacobiPoly, MatchesRodriguesOracle) {
  const double ref = jacobi_rodrigues(4, 1.5, 0.5, 0.7);
  EXPECT_NEAR(jacobi_poly(4, 1.5, 0.5, 0.7), ref, 1e-11 * std::abs(ref));
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = rng.uniform(-0.9, 5.0), b = rng.uniform(-0.9, 5.0);
    const double x = rng.uniform(-1.0, 1.0);
    for (int n = 0; n <= 50; ++n) {
      const double r = jacobi_rodrigues(n, a, b, x);
      // relative to the L2 size of P_n near its zeros
      const double size = std::max(std::abs(r), std::exp(-log_norm_size(n, a, b)));
      EXPECT_NEAR(jacobi_poly(n, a, b, x), r, 1e-10 * size) << "n=" << n << " a=" << a << " b=" << b << " x=" << x;
    }
  }
}

TEST(JacobiPoly, SymmetricCaseHasParity) {
  for (double a : {-0.5, 0.0, 1.25, 4.0})
    for (int n = 0; n <= 20; ++n)
      for (double x : {0.1, 0.55, 0.93}) {
        const double p = jacobi_poly(n, a, a, x);
        EXPECT_NEAR(jacobi_poly(n, a, a, -x), n % 2 ? -p : p, 1e-12 * std::max(1.0, std::abs(p)));
      }
}

TEST(JacobiPoly, EndpointValueIsBinomial) {
  for (int n : {0, 1, 5, 12}) {
    const double a = 1.25, b = 0.5;
    const double ref = std::exp(std::lgamma(n + a + 1) - std::lgamma(n + 1) - std::lgamma(a + 1));
    EXPECT_NEAR(jacobi_poly(n, a, b, 1.0), ref, 1e-12 * ref);
  }
}

TEST(JacobiPoly, FillMatchesSingleEvaluation) {
  const auto all = jacobi_poly_all(15, 0.3, 2.0, 0.41);
  ASSERT_EQ(all.size(), 16u);
  for (int n = 0; n <= 15; ++n) EXPECT_DOUBLE_EQ(all[n], jacobi_poly(n, 0.3, 2.0, 0.41));
}

TEST(Gegenbauer, MatchesExplicitSum) {
  for (double lambda : {0.5, 1.0, 1.5, 3.25})
    for (int n = 0; n <= 14; ++n)
      for (double x : {-0.95, -0.3, 0.0, 0.6, 0.99}) {
        const double ref = gegenbauer_explicit(n, lambda, x);
        EXPECT_NEAR(gegenbauer(n, lambda, x), ref, 1e-11 * std::max(1.0, std::abs(ref)));
      }
}

TEST(GaussJacobi, IntegratesBetaMomentsExactly) {
  for (double a : {-0.5, 0.0, 0.7, 3.0})
    for (double b : {-0.5, 0.25, 2.0}) {
      const int n = 12;
      const QuadratureRule r = gauss_jacobi_rule(n, a, b);
      ASSERT_EQ(r.size(), static_cast<std::size_t>(n));
      EXPECT_GE(r.exactness, 2 * n - 1);
      for (int i = 0; i + 1 < n; ++i) EXPECT_LT(r.nodes[i], r.nodes[i + 1]);
      for (int i = 0; i <= 11; ++i)
        for (int j = 0; i + j <= 2 * n - 1; j += 5) {
          // (1-x)^i (1+x)^j against the weight
          const double got = r.integrate([&](double x) { return std::pow(1 - x, i) * std::pow(1 + x, j); });
          const double ref = std::pow(2.0, a + b + i + j + 1) * beta_fn(a + i + 1, b + j + 1);
          EXPECT_NEAR(got, ref, 1e-12 * ref) << a << " " << b << " " << i << " " << j;
        }
    }
}

TEST(Gegenbauer, RatioToJacobiIsGammaQuotient) {
  for (double lambda : {0.25, 1.0, 2.5})
    for (int k = 0; k <= 30; ++k) {
      const double ref = std::exp(std::lgamma(lambda + 0.5) + std::lgamma(k + 2 * lambda) - std::lgamma(2 * lambda) -
                                  std::lgamma(k + lambda + 0.5));
      EXPECT_NEAR(gegenbauer_jacobi_ratio(k, lambda), ref, 1e-10 * ref);
      const double x = 0.37;
      const double p = jacobi_poly(k, lambda - 0.5, lambda - 0.5, x);
      EXPECT_NEAR(gegenbauer(k, lambda, x), ref * p, 1e-10 * std::max(1.0, std::abs(ref * p)));
    }
}

TEST(GaussJacobi, ExactOnMonomials) {
  for (double a : {-0.5, 0.0, 0.5, 3.0})
    for (double b : {-0.5, 0.0, 0.5, 3.0}) {
      const int n = 10;
      const QuadratureRule r = gauss_jacobi_rule(n, a, b);
      // M_j = int (1+x)^j dw by the Beta recursion, then x^k = ((1+x) - 1)^k
      std::vector<quad> M(2 * n);
      M[0] = std::pow(2.0, a + b + 1) * beta_fn(a + 1, b + 1);
      for (int j = 1; j < 2 * n; ++j) M[j] = M[j - 1] * 2 * (quad(b) + j) / (quad(a) + b + j + 1);
      for (int k = 0; k < 2 * n; ++k) {
        quad ref = 0, c = 1;
        for (int i = 0; i <= k; ++i) {
          ref += ((k - i) % 2 ? -c : c) * M[i];
          c = c * (k - i) / (i + 1);
        }
        const double got = r.integrate([&](double x) { return std::pow(x, k); });
        const double scale = std::max(std::abs(static_cast<double>(ref)), static_cast<double>(M[0]) * 1e-3);
        EXPECT_NEAR(got, static_cast<double>(ref), 1e-12 * scale) << a << " " << b << " k=" << k;
      }
    }
}

TEST(GaussJacobi, RejectsInvalidParameters) {
  EXPECT_THROW(gauss_jacobi_rule(0, 0.0, 0.0), DomainError);
  EXPECT_THROW(gauss_jacobi_rule(5, -1.0, 0.0), DomainError);
}

TEST(GaussJacobi, AngleRuleMatchesMeasureMass) {
  for (double a : {-0.5, 0.0, 1.5})
    for (double b : {-0.5, 0.5, 4.0}) {
      const QuadratureRule r = gauss_jacobi_angle_rule(20, a, b);
      for (std::size_t i = 0; i + 1 < r.size(); ++i) EXPECT_LT(r.nodes[i], r.nodes[i + 1]);
      double mass = 0.0;
      for (double w : r.weights) mass += w;
      // int (sin t/2)^(2a+1) (cos t/2)^(2b+1) dt = B(a+1, b+1)
      EXPECT_NEAR(mass, beta_fn(a + 1, b + 1), 1e-13);
    }
}

TEST(GaussLegendre, MapsToInterval) {
  const QuadratureRule r = gauss_legendre_rule(10, 1.0, 3.0);
  EXPECT_NEAR(r.integrate([](double x) { return std::pow(x, 19); }), (std::pow(3.0, 20) - 1.0) / 20.0,
              1e-9);
}

TEST(PiRule, NormalizedWithEvenMoments) {
  for (double g : {-0.5, 0.0, 0.5, 2.0}) {
    const QuadratureRule r = pi_rule(g, 16);
    EXPECT_NEAR(r.integrate([](double) { return 1.0; }), 1.0, 1e-14);
    EXPECT_NEAR(r.integrate([](double u) { return u; }), 0.0, 1e-14);
    // second moment of (1-u^2)^(g-1/2) normalized: 1/(2g+2)
    EXPECT_NEAR(r.integrate([](double u) { return u * u; }), 1.0 / (2.0 * g + 2.0), 1e-14);
  }
  const QuadratureRule atoms = pi_rule(-0.5, 4);
  ASSERT_EQ(atoms.size(), 2u);
  EXPECT_EQ(atoms.nodes[0], -1.0);
  EXPECT_EQ(atoms.nodes[1], 1.0);
  EXPECT_EQ(atoms.weights[0], 0.5);
}

TEST(WorkedExamples, SpecialFunctions) {
  EXPECT_EQ(log_gamma(1.0), 0.0);
  EXPECT_NEAR(log_gamma(5.0), std::log(24.0), 1e-14);
  EXPECT_EQ(jacobi_poly(0, 2.5, -0.3, 0.123), 1.0);
  EXPECT_NEAR(jacobi_poly(1, 0.0, 0.0, 0.3), 0.3, 1e-15);
  EXPECT_EQ(gegenbauer(0, 2.0, 0.4), 1.0);
  EXPECT_NEAR(gegenbauer(1, 2.0, 0.4), 1.6, 1e-15);
  const double c6 = gegenbauer_explicit(6, 1.5, -0.2);
  EXPECT_NEAR(gegenbauer(6, 1.5, -0.2), c6, 1e-9 * std::max(1.0, std::abs(c6)));

  const QuadratureRule one = gauss_jacobi_rule(1, 0.0, 0.0);
  EXPECT_NEAR(one.nodes[0], 0.0, 1e-15);
  EXPECT_NEAR(one.weights[0], 2.0, 1e-14);
  const QuadratureRule sym = gauss_jacobi_rule(8, 1.5, 1.5);
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(sym.nodes[i], -sym.nodes[7 - i], 1e-14);
    EXPECT_NEAR(sym.weights[i], sym.weights[7 - i], 1e-14 * sym.weights[i]);
  }
  // int x^6 (1-x)^2.5 (1+x)^0.5 via x = (1+x) - 1 and Beta moments
  const QuadratureRule r = gauss_jacobi_rule(16, 2.5, 0.5);
  quad ref = 0, c = 1;
  for (int i = 0; i <= 6; ++i) {
    const quad m = std::pow(2.0, 4.0 + i) * beta_fn(3.5, 1.5 + i);
    ref += ((6 - i) % 2 ? -c : c) * m;
    c = c * (6 - i) / (i + 1);
  }
  EXPECT_NEAR(r.integrate([](double x) { return std::pow(x, 6); }), static_cast<double>(ref),
              1e-12 * std::abs(static_cast<double>(ref)));
}
