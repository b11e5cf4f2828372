#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "jfrac/params.hpp"

namespace jfrac {

enum class WeightSource { peso_w, peso_v, custom };

// Density on (0, pi). Shaped weights carry their endpoint exponents:
// half_angle is (sin t/2)^e0 (cos t/2)^epi, power is t^e0 (pi - t)^epi.
class Weight {
 public:
  enum class Shape { half_angle, power, callable };

  static Weight peso_w(double q, ParamPair pp);
  static Weight peso_v(double p, ParamPair pp);
  static Weight half_angle(double at_zero, double at_pi);
  static Weight power(double at_zero, double at_pi);
  static Weight density(std::function<double(double)> f);

  double operator()(double theta) const;
  // to_zero and to_pi are theta and pi - theta, supplied separately so that
  // values near the endpoints keep full relative accuracy.
  double eval(double theta, double to_zero, double to_pi) const;
  // pointwise power w^r
  Weight pow(double r) const;

  WeightSource source() const { return source_; }
  Shape shape() const { return shape_; }
  double exponent_at_zero() const { return e0_; }
  double exponent_at_pi() const { return epi_; }

 private:
  Weight() = default;
  WeightSource source_ = WeightSource::custom;
  Shape shape_ = Shape::half_angle;
  double e0_ = 0.0, epi_ = 0.0;
  std::function<double(double)> f_;
};

double weight_eval(const Weight& w, double theta);

struct Interval {
  double a, b;
  // Requires 0 <= a < b <= pi.
  Interval(double a, double b);
  double length() const { return b - a; }
};

// Integral of w over I; +inf when w is not integrable at an endpoint of I
// that touches 0 or pi. Throws IntegrabilityError if quadrature fails.
double weight_mass(const Weight& w, const Interval& I);

// int_0^pi g(phi) |theta - phi|^(sigma - 1) dphi
double i_sigma(const std::function<double(double)>& g, double sigma, double theta);

struct FamilyMember {
  Interval I;
  int end;         // 0: adjacent to 0, 1: adjacent to pi, -1: interior random
  int generation;  // dyadic depth, -1 for random members
};

struct IntervalFamily {
  std::vector<FamilyMember> members;
  int generations = 0;

  // Per end and generation k < generations: (0, pi 2^-k), (pi 2^-k-1, pi 2^-k)
  // and (pi 2^-k-1, pi/2), mirrored at pi; the rest random interior intervals.
  static IntervalFamily standard(int total = 1000, int generations = 40,
                                 std::uint64_t seed = 1);
};

// Largest value per (end, generation) pair, indexed [end][generation].
using GenerationProfile = std::vector<std::vector<double>>;

struct ApEstimate {
  double constant = 0.0;  // max over the family, +inf if unbounded
  bool divergent = false;
  double growth = 0.0;  // deepest over first generation, worst end
  GenerationProfile profile;
};

ApEstimate ap_constant_estimate(const Weight& w, double p, const IntervalFamily& family);
ApEstimate ap_constant_estimate(const Weight& w, double p, int n_intervals = 1000,
                                std::uint64_t seed = 1);

// A_p for some p in {2, 4, 8}.
bool a_infinity_member(const Weight& w, const IntervalFamily& family);

struct TwoWeightEstimate {
  double sup = 0.0;
  double growth = 0.0;
  GenerationProfile profile;
  bool bounded(double growth_limit = 10.0) const;
};

TwoWeightEstimate two_weight_condition(const Weight& w, const Weight& v, double sigma, double p,
                                       double q, const IntervalFamily& family);

struct MomentResult {
  double integral;
  double ratio;  // integral / (|I| |I_0|^lambda |I_pi|^nu)
};

MomentResult interval_moment(double lambda, double nu, const Interval& I);

// (b^(lambda+1) - a^(lambda+1)) / (b^lambda (b - a))
double mario_ratio(double lambda, double a, double b);

struct ExponentBox {
  double p = 2.0, q = 2.0, sigma = 0.5;
  ParamPair pp;
  double a = 0.0, b = 0.0;

  // window on p <= q from the endpoint exponents
  bool chu1() const;
  // 1/q >= 1/p - min(sigma/(2 alpha + 2), sigma/(2 beta + 2))
  bool chu2() const;
  double chu2_margin() const;
  bool chu2_equality(double tol = 1e-12) const;
};

double weighted_lp_lq_ratio(const std::vector<std::function<double(double)>>& g_list, double sigma,
                            double p, double q, const Weight& w, const Weight& v,
                            int nodes = 96);

// f_j = u_j * sum_n coeffs[j][n] P_n in the (alpha + a j, beta + b j) system,
// u_j = (sin t/2)^(a j) (cos t/2)^(b j).
double theorem14_ratio(const std::vector<std::vector<double>>& coeff_lists,
                       const ExponentBox& box, int nodes = 0);

}  // namespace jfrac
