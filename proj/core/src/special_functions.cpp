#include "jfrac/special_functions.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jfrac/errors.hpp"

namespace jfrac {

namespace {

void require_jacobi(double alpha, double beta, const char* who) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw DomainError(std::string(who) + ": Jacobi parameters must exceed -1");
}

// Recurrence coefficients of the orthonormal Jacobi family, normalized to a
// probability measure: b[k+1] p[k+1] = (x - a[k]) p[k] - b[k] p[k-1].
struct JacobiMatrix {
  std::vector<double> diag;
  std::vector<double> off;  // off[k] couples k and k+1
};

JacobiMatrix jacobi_matrix(int n, double a, double b) {
  JacobiMatrix m;
  m.diag.resize(n);
  m.off.resize(n > 0 ? n : 0);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      m.diag[k] = (b - a) / (ab + 2.0);
    } else {
      const double s = 2.0 * k + ab;
      m.diag[k] = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k <= n; ++k) {
    double beta_k;
    if (k == 1) {
      beta_k = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      beta_k = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    m.off[k - 1] = std::sqrt(beta_k);
  }
  return m;
}

struct OrthoEval {
  double p;      // p_n(x)
  double dp;     // p_n'(x)
  double sumsq;  // sum_{k<n} p_k(x)^2
};

OrthoEval ortho_eval(const JacobiMatrix& m, int n, double x) {
  double p_prev = 0.0, p = 1.0, d_prev = 0.0, d = 0.0, sumsq = 0.0;
  for (int k = 0; k < n; ++k) {
    sumsq += p * p;
    const double bk = k > 0 ? m.off[k - 1] : 0.0;
    const double p_next = ((x - m.diag[k]) * p - bk * p_prev) / m.off[k];
    const double d_next = (p + (x - m.diag[k]) * d - bk * d_prev) / m.off[k];
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return {p, d, sumsq};
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  int sign = 1;
  return ::lgamma_r(x, &sign);
}

double log_abs_gamma(double x, int* sign) {
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("log_abs_gamma: pole");
  int s = 1;
  const double v = ::lgamma_r(x, &s);
  if (sign) *sign = s;
  return v;
}

void jacobi_poly_fill(int n, double alpha, double beta, double x, double* out) {
  require_jacobi(alpha, beta, "jacobi_poly");
  if (n < 0) throw DomainError("jacobi_poly: negative degree");
  out[0] = 1.0;
  if (n == 0) return;
  const double ab = alpha + beta;
  out[1] = 0.5 * ((ab + 2.0) * x + (alpha - beta));
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + ab;
    const double c0 = 2.0 * k * (k + ab) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta);
    const double c2 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
    out[k] = (c1 * out[k - 1] - c2 * out[k - 2]) / c0;
  }
}

std::vector<double> jacobi_poly_all(int n, double alpha, double beta, double x) {
  if (n < 0) throw DomainError("jacobi_poly: negative degree");
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  jacobi_poly_fill(n, alpha, beta, x, out.data());
  return out;
}

double jacobi_poly(int n, double alpha, double beta, double x) {
  require_jacobi(alpha, beta, "jacobi_poly");
  if (n < 0) throw DomainError("jacobi_poly: negative degree");
  if (n == 0) return 1.0;
  const double ab = alpha + beta;
  double pm = 1.0;
  double p = 0.5 * ((ab + 2.0) * x + (alpha - beta));
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + ab;
    const double c0 = 2.0 * k * (k + ab) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * x + alpha * alpha - beta * beta);
    const double c2 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
    const double next = (c1 * p - c2 * pm) / c0;
    pm = p;
    p = next;
  }
  return p;
}

double gegenbauer_jacobi_ratio(int k, double lambda) {
  if (!(lambda > -0.5)) throw DomainError("gegenbauer: lambda must exceed -1/2");
  if (lambda == 0.0) throw DomainError("gegenbauer: lambda = 0 is degenerate");
  if (k < 0) throw DomainError("gegenbauer: negative degree");
  if (k == 0) return 1.0;
  int s1, s2, s3, s4;
  const double l = log_abs_gamma(lambda + 0.5, &s1) + log_abs_gamma(k + 2.0 * lambda, &s2) -
                   log_abs_gamma(2.0 * lambda, &s3) - log_abs_gamma(k + lambda + 0.5, &s4);
  return s1 * s2 * s3 * s4 * std::exp(l);
}

double gegenbauer(int k, double lambda, double x) {
  const double c = gegenbauer_jacobi_ratio(k, lambda);
  return c * jacobi_poly(k, lambda - 0.5, lambda - 0.5, x);
}

QuadratureRule gauss_jacobi_rule(int n, double alpha, double beta) {
  require_jacobi(alpha, beta, "gauss_jacobi_rule");
  if (n < 1) throw DomainError("gauss_jacobi_rule: need at least one node");

  const JacobiMatrix m = jacobi_matrix(n, alpha, beta);
  Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag(k) = m.diag[k];
  for (int k = 0; k + 1 < n; ++k) sub(k) = m.off[k];

  std::vector<double> x(n);
  if (n == 1) {
    x[0] = m.diag[0];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("gauss_jacobi_rule: eigen solver failed");
    for (int i = 0; i < n; ++i) x[i] = es.eigenvalues()(i);
  }

  const double log_mu0 = (alpha + beta + 1.0) * std::log(2.0) + log_gamma(alpha + 1.0) +
                         log_gamma(beta + 1.0) - log_gamma(alpha + beta + 2.0);
  const double mu0 = std::exp(log_mu0);

  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = std::clamp(x[i], -1.0, 1.0);
    for (int it = 0; it < 8; ++it) {
      const OrthoEval e = ortho_eval(m, n, xi);
      if (e.dp == 0.0) break;
      const double dx = e.p / e.dp;
      xi -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1e-300, std::abs(xi))) break;
    }
    const OrthoEval e = ortho_eval(m, n, xi);
    r.nodes[i] = xi;
    r.weights[i] = mu0 / e.sumsq;
  }
  // eigenvalues arrive sorted; Newton keeps order for well-separated nodes
  for (int i = 1; i < n; ++i)
    if (!(r.nodes[i] > r.nodes[i - 1])) throw ConvergenceError("gauss_jacobi_rule: nodes not separated");
  r.exactness = 2 * n - 1;
  r.weight = {WeightKind::jacobi_interval, alpha, beta};
  return r;
}

QuadratureRule gauss_jacobi_angle_rule(int n, double alpha, double beta) {
  QuadratureRule g = gauss_jacobi_rule(n, alpha, beta);
  const double scale = std::exp(-(alpha + beta + 1.0) * std::log(2.0));
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // x increasing -> theta decreasing
    const double x = g.nodes[n - 1 - i];
    double th;
    if (x > 0.5)
      th = 2.0 * std::asin(std::sqrt(0.5 * (1.0 - x)));
    else if (x < -0.5)
      th = std::numbers::pi - 2.0 * std::asin(std::sqrt(0.5 * (1.0 + x)));
    else
      th = std::acos(x);
    r.nodes[i] = th;
    r.weights[i] = g.weights[n - 1 - i] * scale;
  }
  r.exactness = g.exactness;
  r.weight = {WeightKind::jacobi_angle, alpha, beta};
  return r;
}

QuadratureRule gauss_legendre_rule(int n, double a, double b) {
  if (!(b > a)) throw DomainError("gauss_legendre_rule: need a < b");
  QuadratureRule r = gauss_jacobi_rule(n, 0.0, 0.0);
  const double h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = a + h * (r.nodes[i] + 1.0);
    r.weights[i] *= h;
  }
  return r;
}

QuadratureRule pi_rule(double gamma, int n) {
  if (!(gamma >= -0.5)) throw DomainError("pi_rule: gamma must be at least -1/2");
  QuadratureRule r;
  if (gamma == -0.5) {
    r.nodes = {-1.0, 1.0};
    r.weights = {0.5, 0.5};
    r.exactness = std::numeric_limits<int>::max();
    r.weight = {WeightKind::pi_measure, gamma, gamma};
    return r;
  }
  r = gauss_jacobi_rule(n, gamma - 0.5, gamma - 0.5);
  const double c = std::exp(log_gamma(gamma + 1.0) - 0.5 * std::log(std::numbers::pi) -
                            log_gamma(gamma + 0.5));
  for (double& w : r.weights) w *= c;
  r.weight = {WeightKind::pi_measure, gamma, gamma};
  return r;
}

}  // namespace jfrac
