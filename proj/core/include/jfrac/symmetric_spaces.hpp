#pragma once

#include <span>
#include <vector>

#include "jfrac/random.hpp"

namespace jfrac {

// Number of degree-j spherical harmonics on S^(d-1).
int harmonic_dimension(int j, int d);

// (cos t, x'_1 sin t, ..., x'_d sin t); x' must be a unit vector.
std::vector<double> geodesic_coords(double theta, std::span<const double> xprime);

// Real orthonormal basis on the unit circle, k in {1, 2} (k = 1 only for j = 0):
// 1/sqrt(2 pi), cos(j phi)/sqrt(pi), sin(j phi)/sqrt(pi).
double circular_harmonic(int j, int k, double phi);

// a_{n,j} (sin t)^j C_{n-j}^{j+(d-1)/2}(cos t), orthonormal in (sin t)^(d-1) dt.
double psi_radial(int n, int j, double theta, int d);

// Profiles F_{j,k} of a function on S^d, sampled at Gauss nodes in the polar
// angle. Each profile lives in the span of psi_{n+j,j}, 0 <= n <= N.
class SphereFunction {
 public:
  SphereFunction(int d, int J, int N, int nodes = 0);

  int dimension() const { return d_; }
  int max_degree() const { return J_; }
  int radial_degree() const { return N_; }
  int harmonics(int j) const;

  std::span<const double> nodes() const { return nodes_; }
  // weights for (sin t)^(d-1) dt
  std::span<const double> weights() const { return weights_; }

  // k runs over 1..harmonics(j)
  std::span<double> profile(int j, int k);
  std::span<const double> profile(int j, int k) const;

  // psi_{n+j,j} at every node, n = 0..N
  double basis(int n, int j, std::size_t node) const;

  std::vector<double> coefficients(int j, int k) const;
  void set_coefficients(int j, int k, std::span<const double> c);
  double coefficient_norm() const;

  // n is the total degree, j <= n <= j + N
  static SphereFunction eigenfunction(int d, int J, int N, int n, int j, int k, int nodes = 0);
  // Standard normal coefficients, drawn in (j, k, n) order.
  static SphereFunction random(int d, int J, int N, SplitMix64& rng, int nodes = 0);

 private:
  std::size_t slot(int j, int k) const;

  int d_, J_, N_;
  std::vector<double> nodes_, weights_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<double>> profiles_;
  std::vector<double> basis_;  // [j][n][node]
};

SphereFunction sphere_frac_laplacian(const SphereFunction& sf, double sigma);

double mixed_norm(const SphereFunction& sf, double p);

// Keeps components of even total degree.
SphereFunction projective_restrict(const SphereFunction& sf);

enum class SpaceTag { sphere, real_projective, ball };

struct MixedNormParams {
  double p = 2.0, q = 2.0, sigma = 0.5;
  SpaceTag space = SpaceTag::sphere;
  int d = 2;
  int m = 0;  // ball only

  // open window on p <= q
  bool window_ok() const;
  // 1/q >= 1/p - (gap term)
  bool gap_ok() const;
};

double theorem1_ratio(const SphereFunction& sf, const MixedNormParams& mnp);

// c_omega = Gamma(m+d+1) / (Gamma(d) Gamma(m+1))
double ball_weight_const(int d, int m);
// c_omega r^-1 (1-r)^m
double ball_weight(double r, int d, int m);

// a r^j P_{n-j}^{(m, 2j+d-1)}(2r-1), orthonormal in omega(r) r^d dr.
double psi_ball(int n, int j, double r, int d, int m);

// Profiles F_{j,k}(r) on Gauss nodes in (0, 1); harmonics on S^d.
class BallFunction {
 public:
  BallFunction(int d, int m, int J, int N, int nodes = 0);

  int dimension() const { return d_; }
  int m() const { return m_; }
  int max_degree() const { return J_; }
  int radial_degree() const { return N_; }
  int harmonics(int j) const;

  // increasing in (0, 1)
  std::span<const double> nodes() const { return nodes_; }
  // weights for omega(r) r^d dr
  std::span<const double> weights() const { return weights_; }

  std::span<double> profile(int j, int k);
  std::span<const double> profile(int j, int k) const;

  // psi^M_{n+j,j} at a node
  double basis(int n, int j, std::size_t node) const;

  std::vector<double> coefficients(int j, int k) const;
  void set_coefficients(int j, int k, std::span<const double> c);
  double coefficient_norm() const;

  static BallFunction eigenfunction(int d, int m, int J, int N, int n, int j, int k,
                                    int nodes = 0);
  static BallFunction random(int d, int m, int J, int N, SplitMix64& rng, int nodes = 0);

 private:
  std::size_t slot(int j, int k) const;

  int d_, m_, J_, N_;
  std::vector<double> nodes_, weights_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<double>> profiles_;
  std::vector<double> basis_;
};

BallFunction ball_frac_laplacian(const BallFunction& bf, double sigma);

// (int_0^1 (sum |F_{j,k}|^2)^(p/2) omega r^d dr)^(1/p)
double ball_mixed_norm(const BallFunction& bf, double p);

double theorem2_ratio(const BallFunction& bf, const MixedNormParams& mnp);

// Max over r_grid of |L f - (n + (m+d)/2)^2 f| for the radial factor f of
// psi^M_{n,j}, with L the radial part of the ball operator and derivatives by
// central differences of step h.
double lambda_operator_check(int n, int j, int d, int m, std::span<const double> r_grid,
                             double h);

}  // namespace jfrac
