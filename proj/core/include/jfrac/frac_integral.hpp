#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "jfrac/jacobi_expansion.hpp"
#include "jfrac/params.hpp"

namespace jfrac {

struct FracParams {
  double sigma;
  ParamPair pp;

  // Requires 0 < sigma < 1, alpha >= -1/2, beta > -1/2.
  FracParams(double sigma, ParamPair pp);
};

// Kernel of the negative fractional power, evaluated through the closed
// Poisson form integrated in time. Construction tabulates the time integral
// once; evaluation is then cheap and thread-safe.
class FracKernel {
 public:
  explicit FracKernel(const FracParams& fp);
  ~FracKernel();
  FracKernel(FracKernel&&) noexcept;
  FracKernel& operator=(FracKernel&&) noexcept;

  double operator()(double theta, double phi) const;
  const FracParams& params() const;

  // log of  int_0^inf sinh(t/2) t^(sigma-1) (2 sinh^2(t/4) + delta)^-(rho+1) dt
  double log_time_integral(double delta) const;
  double log_time_integral_direct(double delta) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double frac_kernel(const FracParams& fp, double theta, double phi);

CoefficientVector frac_integral_spectral(const CoefficientVector& cv, double sigma);

double frac_integral_semigroup(const std::function<double(double)>& f, const FracParams& fp,
                               double theta, int N = 64, int nodes = 128);

// Majorant with the constant set to 1.
double sharp_bound_rhs(const FracParams& fp, double theta, double phi);

struct SharpBoundGrid {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> thetas;
  std::vector<double> diagonal_offsets;
  double exclusion = 1e-3;

  static SharpBoundGrid standard();
};

struct BoundSample {
  double alpha, beta, theta, phi;
  double kernel, rhs, ratio;
};

struct PairSupremum {
  double alpha, beta, sup;
};

struct BoundReport {
  double sigma = 0.0;
  std::vector<BoundSample> samples;
  std::vector<PairSupremum> per_pair;
  double sup = 0.0;
  double spread = 0.0;  // max / min of per-pair suprema
  double min_kernel = 0.0;
};

BoundReport verify_sharp_bound(double sigma, const SharpBoundGrid& grid);

struct LemmaCheck {
  double lhs, rhs;
  double log_lhs, log_rhs;
  bool holds() const { return log_lhs <= log_rhs; }
};

// lambda = -1/2 selects the logarithmic bound.
LemmaCheck lemma_estimate_check(double gamma, double lambda, double A, double B);

// Integral of f(1-u, 1+u) against the normalized Pi measure, robust to
// endpoint singularities of the density.
double pi_integral(double gamma, const std::function<double(double, double)>& f,
                   double tol = 1e-12);

}  // namespace jfrac
