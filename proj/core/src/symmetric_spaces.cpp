#include "jfrac/symmetric_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jfrac/errors.hpp"
#include "jfrac/jacobi_expansion.hpp"
#include "jfrac/special_functions.hpp"

namespace jfrac {

namespace {

constexpr double kPi = std::numbers::pi;

double binom(int n, int k) {
  if (k < 0 || n < k) return 0.0;
  return std::round(std::exp(log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0)));
}

int default_nodes(int J, int N, int nodes) {
  return nodes > 0 ? nodes : std::max(64, 2 * (N + J) + 32);
}

void require_degrees(int J, int N, const char* who) {
  if (J < 0 || N < 0) throw DomainError(std::string(who) + ": negative truncation");
}

double sum_squares_norm(const std::vector<std::vector<double>>& profiles,
                        std::span<const double> w, double p) {
  if (!(p >= 1.0)) throw DomainError("mixed norm: p must be at least 1");
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double e = 0.0;
    for (const auto& f : profiles) e += f[i] * f[i];
    s += w[i] * std::pow(e, 0.5 * p);
  }
  return std::pow(s, 1.0 / p);
}

}  // namespace

int harmonic_dimension(int j, int d) {
  if (d < 2) throw DomainError("harmonic_dimension: need d >= 2");
  if (j < 0) throw DomainError("harmonic_dimension: negative degree");
  return static_cast<int>(binom(j + d - 1, d - 1) - binom(j + d - 3, d - 1));
}

std::vector<double> geodesic_coords(double theta, std::span<const double> xprime) {
  if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("geodesic_coords: theta outside [0, pi]");
  if (xprime.empty()) throw DomainError("geodesic_coords: empty direction");
  double n2 = 0.0;
  for (double x : xprime) n2 += x * x;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
    throw DomainError("geodesic_coords: direction is not a unit vector");
  std::vector<double> out(xprime.size() + 1);
  const double s = std::sin(theta);
  out[0] = std::cos(theta);
  for (std::size_t i = 0; i < xprime.size(); ++i) out[i + 1] = xprime[i] * s;
  return out;
}

double circular_harmonic(int j, int k, double phi) {
  if (j < 0) throw DomainError("circular_harmonic: negative degree");
  if (j == 0) {
    if (k != 1) throw DomainError("circular_harmonic: degree 0 has a single harmonic");
    return 1.0 / std::sqrt(2.0 * kPi);
  }
  if (k == 1) return std::cos(j * phi) / std::sqrt(kPi);
  if (k == 2) return std::sin(j * phi) / std::sqrt(kPi);
  throw DomainError("circular_harmonic: k must be 1 or 2");
}

double psi_radial(int n, int j, double theta, int d) {
  if (d < 2) throw DomainError("psi_radial: need d >= 2");
  if (j < 0 || j > n) throw DomainError("psi_radial: need 0 <= j <= n");
  const int k = n - j;
  const double lambda = j + 0.5 * (d - 1);
  // a^2 = k! (k + lambda) Gamma(lambda)^2 / (pi 2^(1 - 2 lambda) Gamma(k + 2 lambda))
  const double la = 0.5 * (log_gamma(k + 1.0) + std::log(k + lambda) + 2.0 * log_gamma(lambda) -
                           std::log(kPi) - (1.0 - 2.0 * lambda) * std::log(2.0) -
                           log_gamma(k + 2.0 * lambda));
  const double x = std::cos(theta);
  double c0 = 1.0, c1 = 2.0 * lambda * x;
  double c = k == 0 ? c0 : c1;
  for (int i = 2; i <= k; ++i) {
    c = (2.0 * (i + lambda - 1.0) * x * c1 - (i + 2.0 * lambda - 2.0) * c0) / i;
    c0 = c1;
    c1 = c;
  }
  return std::exp(la) * std::pow(std::sin(theta), j) * c;
}

SphereFunction::SphereFunction(int d, int J, int N, int nodes) : d_(d), J_(J), N_(N) {
  if (d < 2) throw DomainError("SphereFunction: need d >= 2");
  require_degrees(J, N, "SphereFunction");
  nodes = default_nodes(J, N, nodes);
  const double a = 0.5 * (d - 2);
  const QuadratureRule rule = gauss_jacobi_angle_rule(nodes, a, a);
  nodes_ = rule.nodes;
  weights_ = rule.weights;
  for (double& w : weights_) w = std::ldexp(w, d - 1);
  for (int j = 0; j <= J; ++j) {
    offset_.push_back(profiles_.size());
    for (int k = 0; k < harmonic_dimension(j, d); ++k)
      profiles_.emplace_back(nodes_.size(), 0.0);
  }
  basis_.assign(static_cast<std::size_t>(J + 1) * (N + 1) * nodes_.size(), 0.0);
  std::vector<double> P(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= J; ++j) {
    const TrigJacobiBasis tb(ParamPair(a + j, a + j), N);
    const double scale = std::pow(2.0, -(j + 0.5 * (d - 1)));
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      tb.fill(nodes_[i], P.data());
      const double f = scale * std::pow(std::sin(nodes_[i]), j);
      for (int n = 0; n <= N; ++n)
        basis_[(static_cast<std::size_t>(j) * (N + 1) + n) * nodes_.size() + i] = f * P[n];
    }
  }
}

int SphereFunction::harmonics(int j) const { return harmonic_dimension(j, d_); }

std::size_t SphereFunction::slot(int j, int k) const {
  if (j < 0 || j > J_) throw DomainError("SphereFunction: degree out of range");
  if (k < 1 || k > harmonics(j)) throw DomainError("SphereFunction: harmonic index out of range");
  return offset_[j] + static_cast<std::size_t>(k - 1);
}

std::span<double> SphereFunction::profile(int j, int k) { return profiles_[slot(j, k)]; }
std::span<const double> SphereFunction::profile(int j, int k) const {
  return profiles_[slot(j, k)];
}

double SphereFunction::basis(int n, int j, std::size_t node) const {
  return basis_[(static_cast<std::size_t>(j) * (N_ + 1) + n) * nodes_.size() + node];
}

std::vector<double> SphereFunction::coefficients(int j, int k) const {
  const auto& f = profiles_[slot(j, k)];
  std::vector<double> c(static_cast<std::size_t>(N_) + 1, 0.0);
  for (int n = 0; n <= N_; ++n)
    for (std::size_t i = 0; i < nodes_.size(); ++i) c[n] += weights_[i] * f[i] * basis(n, j, i);
  return c;
}

void SphereFunction::set_coefficients(int j, int k, std::span<const double> c) {
  if (c.size() > static_cast<std::size_t>(N_) + 1)
    throw DomainError("SphereFunction: too many coefficients");
  auto& f = profiles_[slot(j, k)];
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    double s = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) s += c[n] * basis(static_cast<int>(n), j, i);
    f[i] = s;
  }
}

double SphereFunction::coefficient_norm() const {
  double s = 0.0;
  for (int j = 0; j <= J_; ++j)
    for (int k = 1; k <= harmonics(j); ++k)
      for (double c : coefficients(j, k)) s += c * c;
  return std::sqrt(s);
}

SphereFunction SphereFunction::eigenfunction(int d, int J, int N, int n, int j, int k,
                                             int nodes) {
  if (n < j || n - j > N || j > J) throw DomainError("eigenfunction: index outside truncation");
  SphereFunction sf(d, J, N, nodes);
  std::vector<double> c(static_cast<std::size_t>(n - j) + 1, 0.0);
  c.back() = 1.0;
  sf.set_coefficients(j, k, c);
  return sf;
}

SphereFunction SphereFunction::random(int d, int J, int N, SplitMix64& rng, int nodes) {
  SphereFunction sf(d, J, N, nodes);
  std::vector<double> c(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= J; ++j)
    for (int k = 1; k <= sf.harmonics(j); ++k) {
      for (double& x : c) x = rng.normal();
      sf.set_coefficients(j, k, c);
    }
  return sf;
}

SphereFunction sphere_frac_laplacian(const SphereFunction& sf, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("sphere_frac_laplacian: sigma in (0, 1)");
  SphereFunction out = sf;
  const double shift = 0.5 * (sf.dimension() - 1);
  for (int j = 0; j <= sf.max_degree(); ++j)
    for (int k = 1; k <= sf.harmonics(j); ++k) {
      auto c = sf.coefficients(j, k);
      for (std::size_t n = 0; n < c.size(); ++n) c[n] *= std::pow(n + j + shift, -sigma);
      out.set_coefficients(j, k, c);
    }
  return out;
}

double mixed_norm(const SphereFunction& sf, double p) {
  std::vector<std::vector<double>> prof;
  for (int j = 0; j <= sf.max_degree(); ++j)
    for (int k = 1; k <= sf.harmonics(j); ++k) {
      auto f = sf.profile(j, k);
      prof.emplace_back(f.begin(), f.end());
    }
  return sum_squares_norm(prof, sf.weights(), p);
}

SphereFunction projective_restrict(const SphereFunction& sf) {
  SphereFunction out = sf;
  for (int j = 0; j <= sf.max_degree(); ++j)
    for (int k = 1; k <= sf.harmonics(j); ++k) {
      auto c = sf.coefficients(j, k);
      for (std::size_t n = 0; n < c.size(); ++n)
        if ((n + j) % 2 != 0) c[n] = 0.0;
      out.set_coefficients(j, k, c);
    }
  return out;
}

bool MixedNormParams::window_ok() const {
  if (space == SpaceTag::ball) {
    const double lo = std::max((2.0 * m + 2.0) / (m + 1.5), 2.0 * d / (d + 0.5));
    const double hi = std::min((2.0 * m + 2.0) / (m + 0.5), 2.0 * d / (d - 0.5));
    return lo < p && p <= q && q < hi;
  }
  return 2.0 * d / (d + 1.0) < p && p <= q && q < 2.0 * d / (d - 1.0);
}

bool MixedNormParams::gap_ok() const {
  const double gap = space == SpaceTag::ball
                         ? std::min(sigma / (2.0 * m + 2.0), sigma / (2.0 * d))
                         : sigma / d;
  return 1.0 / q >= 1.0 / p - gap - 1e-12;
}

namespace {

void require_regime(const MixedNormParams& mnp, const char* who) {
  if (!(mnp.sigma > 0.0 && mnp.sigma < 1.0))
    throw DomainError(std::string(who) + ": sigma must lie in (0, 1)");
  if (!mnp.window_ok())
    throw DomainError(std::string(who) + ": (p, q) outside the admissible window");
  if (!mnp.gap_ok()) throw DomainError(std::string(who) + ": 1/q too small for p and sigma");
}

}  // namespace

double theorem1_ratio(const SphereFunction& sf, const MixedNormParams& mnp) {
  if (mnp.space == SpaceTag::ball) throw DomainError("theorem1_ratio: ball parameters given");
  if (mnp.d != sf.dimension()) throw DomainError("theorem1_ratio: dimension mismatch");
  require_regime(mnp, "theorem1_ratio");
  const SphereFunction f = mnp.space == SpaceTag::real_projective ? projective_restrict(sf) : sf;
  const double den = mixed_norm(f, mnp.p);
  if (!(den > 0.0)) throw ZeroDenominator("theorem1_ratio: input has zero norm");
  return mixed_norm(sphere_frac_laplacian(f, mnp.sigma), mnp.q) / den;
}

double ball_weight_const(int d, int m) {
  if (d < 1 || m < 0) throw DomainError("ball_weight: need d >= 1 and m >= 0");
  return std::exp(log_gamma(m + d + 1.0) - log_gamma(d) - log_gamma(m + 1.0));
}

double ball_weight(double r, int d, int m) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("ball_weight: r must lie in (0, 1)");
  return ball_weight_const(d, m) * std::pow(1.0 - r, m) / r;
}

double psi_ball(int n, int j, double r, int d, int m) {
  if (j < 0 || j > n) throw DomainError("psi_ball: need 0 <= j <= n");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("psi_ball: r must lie in (0, 1)");
  const ParamPair pp(m, 2.0 * j + d - 1.0);
  const double a = norm_const(n - j, pp) / std::sqrt(ball_weight_const(d, m));
  return a * std::pow(r, j) * jacobi_poly(n - j, pp.alpha, pp.beta, 2.0 * r - 1.0);
}

BallFunction::BallFunction(int d, int m, int J, int N, int nodes) : d_(d), m_(m), J_(J), N_(N) {
  if (d < 2) throw DomainError("BallFunction: need d >= 2");
  if (m < 0) throw DomainError("BallFunction: need m >= 0");
  require_degrees(J, N, "BallFunction");
  nodes = default_nodes(J, N, nodes);
  const double cw = ball_weight_const(d, m);
  const QuadratureRule rule = gauss_jacobi_angle_rule(nodes, m, d - 1.0);
  std::vector<double> theta(rule.nodes.rbegin(), rule.nodes.rend());
  weights_.assign(rule.weights.rbegin(), rule.weights.rend());
  for (double& w : weights_) w *= cw;
  for (double t : theta) {
    const double c = std::cos(0.5 * t);
    nodes_.push_back(c * c);
  }
  for (int j = 0; j <= J; ++j) {
    offset_.push_back(profiles_.size());
    for (int k = 0; k < harmonic_dimension(j, d + 1); ++k)
      profiles_.emplace_back(nodes_.size(), 0.0);
  }
  basis_.assign(static_cast<std::size_t>(J + 1) * (N + 1) * nodes_.size(), 0.0);
  std::vector<double> P(static_cast<std::size_t>(N) + 1);
  const double scale = 1.0 / std::sqrt(cw);
  for (int j = 0; j <= J; ++j) {
    const TrigJacobiBasis tb(ParamPair(m, 2.0 * j + d - 1.0), N);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      tb.fill(theta[i], P.data());
      const double f = scale * std::pow(nodes_[i], j);
      for (int n = 0; n <= N; ++n)
        basis_[(static_cast<std::size_t>(j) * (N + 1) + n) * nodes_.size() + i] = f * P[n];
    }
  }
}

int BallFunction::harmonics(int j) const { return harmonic_dimension(j, d_ + 1); }

std::size_t BallFunction::slot(int j, int k) const {
  if (j < 0 || j > J_) throw DomainError("BallFunction: degree out of range");
  if (k < 1 || k > harmonics(j)) throw DomainError("BallFunction: harmonic index out of range");
  return offset_[j] + static_cast<std::size_t>(k - 1);
}

std::span<double> BallFunction::profile(int j, int k) { return profiles_[slot(j, k)]; }
std::span<const double> BallFunction::profile(int j, int k) const {
  return profiles_[slot(j, k)];
}

double BallFunction::basis(int n, int j, std::size_t node) const {
  return basis_[(static_cast<std::size_t>(j) * (N_ + 1) + n) * nodes_.size() + node];
}

std::vector<double> BallFunction::coefficients(int j, int k) const {
  const auto& f = profiles_[slot(j, k)];
  std::vector<double> c(static_cast<std::size_t>(N_) + 1, 0.0);
  for (int n = 0; n <= N_; ++n)
    for (std::size_t i = 0; i < nodes_.size(); ++i) c[n] += weights_[i] * f[i] * basis(n, j, i);
  return c;
}

void BallFunction::set_coefficients(int j, int k, std::span<const double> c) {
  if (c.size() > static_cast<std::size_t>(N_) + 1)
    throw DomainError("BallFunction: too many coefficients");
  auto& f = profiles_[slot(j, k)];
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    double s = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) s += c[n] * basis(static_cast<int>(n), j, i);
    f[i] = s;
  }
}

double BallFunction::coefficient_norm() const {
  double s = 0.0;
  for (int j = 0; j <= J_; ++j)
    for (int k = 1; k <= harmonics(j); ++k)
      for (double c : coefficients(j, k)) s += c * c;
  return std::sqrt(s);
}

BallFunction BallFunction::eigenfunction(int d, int m, int J, int N, int n, int j, int k,
                                         int nodes) {
  if (n < j || n - j > N || j > J) throw DomainError("eigenfunction: index outside truncation");
  BallFunction bf(d, m, J, N, nodes);
  std::vector<double> c(static_cast<std::size_t>(n - j) + 1, 0.0);
  c.back() = 1.0;
  bf.set_coefficients(j, k, c);
  return bf;
}

BallFunction BallFunction::random(int d, int m, int J, int N, SplitMix64& rng, int nodes) {
  BallFunction bf(d, m, J, N, nodes);
  std::vector<double> c(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= J; ++j)
    for (int k = 1; k <= bf.harmonics(j); ++k) {
      for (double& x : c) x = rng.normal();
      bf.set_coefficients(j, k, c);
    }
  return bf;
}

BallFunction ball_frac_laplacian(const BallFunction& bf, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("ball_frac_laplacian: sigma in (0, 1)");
  BallFunction out = bf;
  const double shift = 0.5 * (bf.m() + bf.dimension());
  for (int j = 0; j <= bf.max_degree(); ++j)
    for (int k = 1; k <= bf.harmonics(j); ++k) {
      auto c = bf.coefficients(j, k);
      for (std::size_t n = 0; n < c.size(); ++n) c[n] *= std::pow(n + j + shift, -sigma);
      out.set_coefficients(j, k, c);
    }
  return out;
}

double ball_mixed_norm(const BallFunction& bf, double p) {
  std::vector<std::vector<double>> prof;
  for (int j = 0; j <= bf.max_degree(); ++j)
    for (int k = 1; k <= bf.harmonics(j); ++k) {
      auto f = bf.profile(j, k);
      prof.emplace_back(f.begin(), f.end());
    }
  return sum_squares_norm(prof, bf.weights(), p);
}

double theorem2_ratio(const BallFunction& bf, const MixedNormParams& mnp) {
  if (mnp.space != SpaceTag::ball) throw DomainError("theorem2_ratio: ball parameters required");
  if (mnp.d != bf.dimension() || mnp.m != bf.m())
    throw DomainError("theorem2_ratio: (d, m) mismatch");
  require_regime(mnp, "theorem2_ratio");
  const double den = ball_mixed_norm(bf, mnp.p);
  if (!(den > 0.0)) throw ZeroDenominator("theorem2_ratio: input has zero norm");
  return ball_mixed_norm(ball_frac_laplacian(bf, mnp.sigma), mnp.q) / den;
}

double lambda_operator_check(int n, int j, int d, int m, std::span<const double> r_grid,
                             double h) {
  if (!(h > 0.0)) throw DomainError("lambda_operator_check: step must be positive");
  const double e = n + 0.5 * (m + d);
  const double shift = 0.25 * (m + d) * (m + d);
  double worst = 0.0;
  for (double r : r_grid) {
    if (!(r - h > 0.0 && r + h < 1.0))
      throw DomainError("lambda_operator_check: stencil leaves (0, 1) at r = " + std::to_string(r));
    const double f0 = psi_ball(n, j, r, d, m);
    const double fp = psi_ball(n, j, r + h, d, m);
    const double fm = psi_ball(n, j, r - h, d, m);
    const double d1 = (fp - fm) / (2.0 * h);
    const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
    const double lf = r * (r - 1.0) * d2 + ((m + d + 1.0) * r - d) * d1 + shift * f0 +
                      j * (j + d - 1.0) / r * f0;
    worst = std::max(worst, std::abs(lf - e * e * f0));
  }
  return worst;
}

}  // namespace jfrac
