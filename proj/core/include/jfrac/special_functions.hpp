#pragma once

#include <cstddef>
#include <vector>

namespace jfrac {

double log_gamma(double x);

// log|Gamma(x)| for any non-pole x; sign receives +1 or -1.
double log_abs_gamma(double x, int* sign);

double jacobi_poly(int n, double alpha, double beta, double x);

// P_0..P_n at x.
std::vector<double> jacobi_poly_all(int n, double alpha, double beta, double x);

// Same, writing into out[0..n]; out must have room for n + 1 values.
void jacobi_poly_fill(int n, double alpha, double beta, double x, double* out);

double gegenbauer(int k, double lambda, double x);

// Multiplier c with C_k^lambda(x) = c * P_k^{(lambda-1/2, lambda-1/2)}(x).
double gegenbauer_jacobi_ratio(int k, double lambda);

enum class WeightKind {
  jacobi_interval,  // (1-x)^a (1+x)^b on [-1, 1]
  jacobi_angle,     // (sin t/2)^{2a+1} (cos t/2)^{2b+1} on (0, pi)
  pi_measure,       // normalized (1-u^2)^{g-1/2} on [-1, 1], a = b = g
};

struct WeightDescriptor {
  WeightKind kind = WeightKind::jacobi_interval;
  double alpha = 0.0;
  double beta = 0.0;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int exactness = 0;
  WeightDescriptor weight;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

// Gauss rule for (1-x)^alpha (1+x)^beta dx on [-1, 1].
QuadratureRule gauss_jacobi_rule(int n, double alpha, double beta);

// Gauss rule for the trigonometric Jacobi measure on (0, pi), nodes increasing.
QuadratureRule gauss_jacobi_angle_rule(int n, double alpha, double beta);

// Gauss-Legendre on [a, b].
QuadratureRule gauss_legendre_rule(int n, double a, double b);

// Normalized measure (1-u^2)^{gamma-1/2} du on [-1, 1]; gamma = -1/2 gives the
// two-atom rule at +-1.
QuadratureRule pi_rule(double gamma, int n);

}  // namespace jfrac
