#include "jfrac/poisson_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jfrac/errors.hpp"
#include "jfrac/jacobi_expansion.hpp"

namespace jfrac {

double z_coord(double u, double v, double theta, double phi) {
  const double z = u * std::sin(0.5 * theta) * std::sin(0.5 * phi) +
                   v * std::cos(0.5 * theta) * std::cos(0.5 * phi);
  return std::clamp(z, -1.0, 1.0);
}

int poisson_series_truncation(double t, ParamPair pp) {
  const double m = std::max({pp.alpha, pp.beta, -0.5});
  const double n = (33.0 + (2.0 * m + 1.0) * std::log1p(40.0 / t)) / t;
  return static_cast<int>(std::ceil(n)) + 2;
}

double poisson_series(double t, double theta, double phi, ParamPair pp, int N) {
  pp.require_basic();
  if (!(t > 0.0)) throw DomainError("poisson_series: t must be positive");
  if (t < 0.05) throw TruncationError("poisson_series: t < 0.05, use the closed form");
  if (N == 0) {
    N = poisson_series_truncation(t, pp);
  } else if (N < 0 || std::exp(-t * N) >= 1e-14) {
    throw TruncationError("poisson_series: truncation " + std::to_string(N) +
                          " too small for t = " + std::to_string(t));
  }
  const TrigJacobiBasis basis(pp, N);
  std::vector<double> a(static_cast<std::size_t>(N) + 1), b(a.size());
  basis.fill(theta, a.data());
  basis.fill(phi, b.data());
  const double half = 0.5 * pp.rho();
  double s = 0.0;
  for (int n = N; n >= 0; --n) s += std::exp(-t * std::abs(n + half)) * a[n] * b[n];
  return s;
}

PoissonClosedForm::PoissonClosedForm(ParamPair pp, int n_uv, int max_nodes, double rel_tol)
    : pp_(pp), n_uv_(n_uv), max_nodes_(std::max(n_uv, max_nodes)), rel_tol_(rel_tol) {
  if (!(pp.alpha >= -0.5 && pp.beta >= -0.5))
    throw DomainError("poisson_closed_form: needs alpha, beta >= -1/2");
  if (n_uv < 1) throw DomainError("poisson_closed_form: need at least one node");
  log_prefactor_ =
      log_gamma(pp.rho() + 1.0) - log_gamma(pp.alpha + 1.0) - log_gamma(pp.beta + 1.0);
}

const PoissonClosedForm::Level& PoissonClosedForm::level(std::size_t i) const {
  std::lock_guard<std::mutex> lock(mu_);
  while (levels_.size() <= i) {
    const int n = n_uv_ << levels_.size();
    Level lv;
    lv.u = pi_rule(pp_.alpha, n);
    lv.v = pi_rule(pp_.beta, n);
    for (double x : lv.u.nodes) lv.u_comp.push_back(1.0 - x);
    for (double x : lv.v.nodes) lv.v_comp.push_back(1.0 - x);
    levels_.push_back(std::move(lv));
  }
  return levels_[i];
}

double PoissonClosedForm::eval_level(const Level& lv, double t, double theta, double phi) const {
  const double s = std::sin(0.5 * theta) * std::sin(0.5 * phi);
  const double c = std::cos(0.5 * theta) * std::cos(0.5 * phi);
  const double sd = std::sin(0.25 * (theta - phi));
  const double sh = std::sinh(0.25 * t);
  const double base = 2.0 * sh * sh + 2.0 * sd * sd;
  const double e = -(pp_.rho() + 1.0);
  double total = 0.0;
  for (std::size_t j = 0; j < lv.v.size(); ++j) {
    const double bj = base + lv.v_comp[j] * c;
    double inner = 0.0;
    for (std::size_t i = 0; i < lv.u.size(); ++i)
      inner += lv.u.weights[i] * std::exp(e * std::log(bj + lv.u_comp[i] * s));
    total += lv.v.weights[j] * inner;
  }
  return total;
}

double PoissonClosedForm::operator()(double t, double theta, double phi) const {
  if (!(t > 0.0)) throw DomainError("poisson_closed_form: t must be positive");
  const double scale = std::exp(log_prefactor_ - pp_.rho() * std::log(2.0)) * std::sinh(0.5 * t);
  const bool atoms = pp_.alpha == -0.5 && pp_.beta == -0.5;
  double prev = eval_level(level(0), t, theta, phi);
  if (atoms) return scale * prev;
  for (std::size_t i = 1; (n_uv_ << i) <= max_nodes_; ++i) {
    const double cur = eval_level(level(i), t, theta, phi);
    const bool done = std::abs(cur - prev) <= rel_tol_ * std::abs(cur);
    prev = cur;
    if (done) break;
  }
  return scale * prev;
}

double poisson_closed_form(double t, double theta, double phi, ParamPair pp, int n_uv) {
  return PoissonClosedForm(pp, n_uv)(t, theta, phi);
}

double product_formula_check(int n, ParamPair pp, double theta, double phi) {
  if (!(pp.alpha > -0.5 && pp.beta > -0.5))
    throw DomainError("product_formula_check: needs alpha, beta > -1/2");
  if (n < 0) throw DomainError("product_formula_check: negative degree");
  const double lhs = trig_jacobi(n, pp, theta) * trig_jacobi(n, pp, phi);
  const int nodes = std::max(n + 2, 16);
  const QuadratureRule ru = pi_rule(pp.alpha, nodes), rv = pi_rule(pp.beta, nodes);
  const double lambda = pp.rho();
  const double ratio = gegenbauer_jacobi_ratio(2 * n, lambda);
  double integral = 0.0;
  for (std::size_t j = 0; j < rv.size(); ++j) {
    double inner = 0.0;
    for (std::size_t i = 0; i < ru.size(); ++i) {
      const double z = z_coord(ru.nodes[i], rv.nodes[j], theta, phi);
      inner += ru.weights[i] * jacobi_poly(2 * n, lambda - 0.5, lambda - 0.5, z);
    }
    integral += rv.weights[j] * inner;
  }
  const double pref = (2.0 * n + lambda) * std::exp(log_gamma(lambda) - log_gamma(pp.alpha + 1.0) -
                                                    log_gamma(pp.beta + 1.0));
  return std::abs(lhs - pref * ratio * integral);
}

double gegenbauer_generating_check(double lambda, double r, double z, int N) {
  if (!(lambda > 0.0)) throw DomainError("gegenbauer_generating_check: lambda must be positive");
  if (!(std::abs(r) < 1.0)) throw DomainError("gegenbauer_generating_check: |r| must be < 1");
  if (N < 0) throw DomainError("gegenbauer_generating_check: negative truncation");
  double sum = 0.0, rk = 1.0;
  for (int k = 0; k <= N; ++k) {
    sum += (k + lambda) / lambda * gegenbauer(k, lambda, z) * rk;
    rk *= r;
  }
  const double rhs = (1.0 - r * r) / std::pow(1.0 - 2.0 * r * z + r * r, lambda + 1.0);
  return std::abs(sum - rhs);
}

}  // namespace jfrac
