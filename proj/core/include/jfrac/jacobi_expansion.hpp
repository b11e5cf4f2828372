#pragma once

#include <functional>
#include <span>
#include <vector>

#include "jfrac/params.hpp"
#include "jfrac/special_functions.hpp"

namespace jfrac {

class CoefficientVector {
 public:
  CoefficientVector(ParamPair pp, std::vector<double> coeffs);

  const ParamPair& params() const { return pp_; }
  std::span<const double> coeffs() const { return c_; }
  double operator[](std::size_t n) const { return c_[n]; }
  // highest retained degree
  int truncation() const { return static_cast<int>(c_.size()) - 1; }
  double l2_norm() const;

  static CoefficientVector unit(ParamPair pp, int n, int truncation);

 private:
  ParamPair pp_;
  std::vector<double> c_;
};

double measure_density(double theta, ParamPair pp);

double log_norm_const(int n, ParamPair pp);
double norm_const(int n, ParamPair pp);

double trig_jacobi(int n, ParamPair pp, double theta);

// Normalized trigonometric Jacobi polynomials of all degrees up to N, with the
// recurrence coefficients precomputed.
class TrigJacobiBasis {
 public:
  TrigJacobiBasis(ParamPair pp, int N);
  int degree() const { return N_; }
  const ParamPair& params() const { return pp_; }
  // out[0..N] at theta in (0, pi)
  void fill(double theta, double* out) const;
  // out[0..N] at x = cos(theta) in [-1, 1]
  void fill_cos(double x, double* out) const;

 private:
  ParamPair pp_;
  int N_;
  double d0_;
  std::vector<double> a_, b_, c_;
};

// P_0..P_n (normalized trigonometric) at theta, written into out[0..n].
void trig_jacobi_fill(int n, ParamPair pp, double theta, double* out);
std::vector<double> trig_jacobi_all(int n, ParamPair pp, double theta);

double eigenvalue(int n, ParamPair pp);
// n + (alpha + beta + 1)/2
double eigen_root(int n, ParamPair pp);

// Default angle rule with 128 nodes for pp.
QuadratureRule default_angle_rule(ParamPair pp, int nodes = 128);

CoefficientVector expand(const std::function<double(double)>& f, ParamPair pp, int N,
                         const QuadratureRule& rule);

// samples[i] = f(rule.nodes[i])
CoefficientVector expand_samples(std::span<const double> samples, ParamPair pp, int N,
                                 const QuadratureRule& rule);

double synthesize(const CoefficientVector& cv, double theta);
std::vector<double> synthesize(const CoefficientVector& cv, std::span<const double> thetas);

double apply_operator_stencil(const std::function<double(double)>& f, ParamPair pp, double theta,
                              double h);

}  // namespace jfrac
