#include "jfrac/jacobi_expansion.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jfrac/errors.hpp"

namespace jfrac {

void ParamPair::require_basic() const {
  if (!basic())
    throw DomainError("parameters (alpha=" + std::to_string(alpha) + ", beta=" +
                      std::to_string(beta) + ") must both exceed -1");
}

void ParamPair::require_theorem13() const {
  if (!theorem13())
    throw DomainError("parameters (alpha=" + std::to_string(alpha) + ", beta=" +
                      std::to_string(beta) + ") need alpha >= -1/2 and beta > -1/2");
}

CoefficientVector::CoefficientVector(ParamPair pp, std::vector<double> coeffs)
    : pp_(pp), c_(std::move(coeffs)) {
  pp_.require_basic();
  if (c_.empty()) throw DomainError("CoefficientVector: empty coefficient list");
  for (double v : c_)
    if (!std::isfinite(v)) throw DomainError("CoefficientVector: non-finite coefficient");
}

double CoefficientVector::l2_norm() const {
  double s = 0.0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

CoefficientVector CoefficientVector::unit(ParamPair pp, int n, int truncation) {
  if (n < 0 || n > truncation) throw DomainError("CoefficientVector::unit: index out of range");
  std::vector<double> c(static_cast<std::size_t>(truncation) + 1, 0.0);
  c[n] = 1.0;
  return CoefficientVector(pp, std::move(c));
}

static void require_open_angle(double theta, const char* who) {
  if (!(theta > 0.0 && theta < std::numbers::pi))
    throw DomainError(std::string(who) + ": theta must lie in (0, pi)");
}

double measure_density(double theta, ParamPair pp) {
  require_open_angle(theta, "measure_density");
  return std::pow(std::sin(0.5 * theta), 2.0 * pp.alpha + 1.0) *
         std::pow(std::cos(0.5 * theta), 2.0 * pp.beta + 1.0);
}

double log_norm_const(int n, ParamPair pp) {
  pp.require_basic();
  if (n < 0) throw DomainError("norm_const: negative degree");
  const double rho = pp.rho();
  double l;
  if (n == 0)
    l = log_gamma(rho + 1.0) - log_gamma(pp.alpha + 1.0) - log_gamma(pp.beta + 1.0);
  else
    l = std::log(2.0 * n + rho) + log_gamma(n + 1.0) + log_gamma(n + rho) -
        log_gamma(n + pp.alpha + 1.0) - log_gamma(n + pp.beta + 1.0);
  return 0.5 * l;
}

double norm_const(int n, ParamPair pp) { return std::exp(log_norm_const(n, pp)); }

double trig_jacobi(int n, ParamPair pp, double theta) {
  require_open_angle(theta, "trig_jacobi");
  return norm_const(n, pp) * jacobi_poly(n, pp.alpha, pp.beta, std::cos(theta));
}

TrigJacobiBasis::TrigJacobiBasis(ParamPair pp, int N) : pp_(pp), N_(N) {
  pp_.require_basic();
  if (N < 0) throw DomainError("trig_jacobi: negative degree");
  const double a = pp.alpha, b = pp.beta, ab = a + b;
  d0_ = norm_const(0, pp);
  a_.assign(static_cast<std::size_t>(N) + 1, 0.0);
  b_.assign(a_.size(), 0.0);
  c_.assign(a_.size(), 0.0);
  // ratio[k] = d_k / d_{k-1}
  std::vector<double> ratio(a_.size(), 1.0);
  if (N >= 1) ratio[1] = std::exp(log_norm_const(1, pp) - log_norm_const(0, pp));
  for (int k = 2; k <= N; ++k) {
    const double rho = ab + 1.0;
    ratio[k] = std::sqrt((2.0 * k + rho) / (2.0 * k - 2.0 + rho) * k * (k + rho - 1.0) /
                         ((k + a) * (k + b)));
  }
  if (N >= 1) {
    a_[1] = 0.5 * ratio[1] * (ab + 2.0);
    b_[1] = 0.5 * ratio[1] * (a - b);
  }
  for (int k = 2; k <= N; ++k) {
    const double s = 2.0 * k + ab;
    const double c0 = 2.0 * k * (k + ab) * (s - 2.0);
    const double r1 = ratio[k];
    const double r2 = ratio[k] * ratio[k - 1];
    a_[k] = (s - 1.0) * s * (s - 2.0) / c0 * r1;
    b_[k] = (s - 1.0) * (a * a - b * b) / c0 * r1;
    c_[k] = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s / c0 * r2;
  }
}

void TrigJacobiBasis::fill_cos(double x, double* out) const {
  out[0] = d0_;
  if (N_ == 0) return;
  out[1] = (a_[1] * x + b_[1]) * d0_;
  for (int k = 2; k <= N_; ++k) out[k] = (a_[k] * x + b_[k]) * out[k - 1] - c_[k] * out[k - 2];
}

void TrigJacobiBasis::fill(double theta, double* out) const {
  require_open_angle(theta, "trig_jacobi");
  fill_cos(std::cos(theta), out);
}

void trig_jacobi_fill(int n, ParamPair pp, double theta, double* out) {
  TrigJacobiBasis(pp, n).fill(theta, out);
}

std::vector<double> trig_jacobi_all(int n, ParamPair pp, double theta) {
  if (n < 0) throw DomainError("trig_jacobi: negative degree");
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  trig_jacobi_fill(n, pp, theta, out.data());
  return out;
}

double eigen_root(int n, ParamPair pp) {
  pp.require_basic();
  return n + 0.5 * pp.rho();
}

double eigenvalue(int n, ParamPair pp) {
  const double r = eigen_root(n, pp);
  return r * r;
}

QuadratureRule default_angle_rule(ParamPair pp, int nodes) {
  pp.require_basic();
  return gauss_jacobi_angle_rule(nodes, pp.alpha, pp.beta);
}

static void check_rule(const QuadratureRule& rule, ParamPair pp, int N) {
  if (N < 0) throw DomainError("expand: negative truncation");
  if (rule.weight.kind != WeightKind::jacobi_angle || rule.weight.alpha != pp.alpha ||
      rule.weight.beta != pp.beta)
    throw DomainError("expand: rule weight does not match the parameter pair");
  if (rule.exactness < 2 * N)
    throw InsufficientExactness("expand: rule exactness " + std::to_string(rule.exactness) +
                                " below 2N = " + std::to_string(2 * N));
}

CoefficientVector expand_samples(std::span<const double> samples, ParamPair pp, int N,
                                 const QuadratureRule& rule) {
  pp.require_basic();
  check_rule(rule, pp, N);
  if (samples.size() != rule.size()) throw DomainError("expand: sample count mismatch");
  std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
  std::vector<double> P(static_cast<std::size_t>(N) + 1);
  const TrigJacobiBasis basis(pp, N);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    basis.fill(rule.nodes[i], P.data());
    const double wf = rule.weights[i] * samples[i];
    for (int n = 0; n <= N; ++n) c[n] += wf * P[n];
  }
  return CoefficientVector(pp, std::move(c));
}

CoefficientVector expand(const std::function<double(double)>& f, ParamPair pp, int N,
                         const QuadratureRule& rule) {
  pp.require_basic();
  check_rule(rule, pp, N);
  std::vector<double> s(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) s[i] = f(rule.nodes[i]);
  return expand_samples(s, pp, N, rule);
}

double synthesize(const CoefficientVector& cv, double theta) {
  const int N = cv.truncation();
  std::vector<double> P(static_cast<std::size_t>(N) + 1);
  trig_jacobi_fill(N, cv.params(), theta, P.data());
  double s = 0.0;
  for (int n = 0; n <= N; ++n) s += cv[n] * P[n];
  return s;
}

std::vector<double> synthesize(const CoefficientVector& cv, std::span<const double> thetas) {
  const int N = cv.truncation();
  const TrigJacobiBasis basis(cv.params(), N);
  std::vector<double> P(static_cast<std::size_t>(N) + 1);
  std::vector<double> out(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    basis.fill(thetas[i], P.data());
    double s = 0.0;
    for (int n = 0; n <= N; ++n) s += cv[n] * P[n];
    out[i] = s;
  }
  return out;
}

double apply_operator_stencil(const std::function<double(double)>& f, ParamPair pp, double theta,
                              double h) {
  pp.require_basic();
  if (!(h > 0.0)) throw DomainError("apply_operator_stencil: step must be positive");
  if (!(theta - h > 0.0 && theta + h < std::numbers::pi))
    throw DomainError("apply_operator_stencil: stencil leaves (0, pi)");
  const double fm = f(theta - h), f0 = f(theta), fp = f(theta + h);
  const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
  const double d1 = (fp - fm) / (2.0 * h);
  const double rho = pp.rho();
  const double drift = (pp.alpha - pp.beta + rho * std::cos(theta)) / std::sin(theta);
  return -d2 - drift * d1 + 0.25 * rho * rho * f0;
}

}  // namespace jfrac
