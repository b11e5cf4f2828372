#include "jfrac/weighted_inequalities.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jfrac/errors.hpp"
#include "jfrac/jacobi_expansion.hpp"
#include "jfrac/random.hpp"
#include "jfrac/special_functions.hpp"

namespace jfrac {

namespace bq = boost::math::quadrature;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bq::tanh_sinh<double>& mass_rule() {
  static bq::tanh_sinh<double> ts(15);
  return ts;
}

double half_angle_density(double to_zero, double to_pi, double e0, double epi) {
  double v = 1.0;
  if (e0 != 0.0) v *= std::pow(std::sin(0.5 * to_zero), e0);
  if (epi != 0.0) v *= std::pow(std::sin(0.5 * to_pi), epi);
  return v;
}

struct NormRule {
  std::vector<double> nodes, weights;
};

// Nodes and weights with sum_i W_i F(t_i) ~ int_0^pi F w dt.
NormRule norm_rule(const Weight& w, int nodes) {
  NormRule r;
  if (w.shape() == Weight::Shape::callable) {
    const QuadratureRule g = gauss_legendre_rule(nodes, 0.0, kPi);
    r.nodes = g.nodes;
    r.weights = g.weights;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) r.weights[i] *= w(r.nodes[i]);
    return r;
  }
  const double e0 = w.exponent_at_zero(), epi = w.exponent_at_pi();
  if (!(e0 > -1.0 && epi > -1.0))
    throw IntegrabilityError("weight is not integrable on (0, pi)");
  const QuadratureRule g = gauss_jacobi_angle_rule(nodes, 0.5 * (e0 - 1.0), 0.5 * (epi - 1.0));
  r.nodes = g.nodes;
  r.weights = g.weights;
  if (w.shape() == Weight::Shape::power) {
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      const double t = r.nodes[i];
      r.weights[i] *= w(t) / half_angle_density(t, kPi - t, e0, epi);
    }
  }
  return r;
}

double lp_norm(const std::vector<double>& sq, const NormRule& r, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < sq.size(); ++i) s += r.weights[i] * std::pow(sq[i], 0.5 * p);
  return std::pow(s, 1.0 / p);
}

GenerationProfile empty_profile(int generations) {
  return GenerationProfile(2, std::vector<double>(static_cast<std::size_t>(generations), 0.0));
}

double profile_growth(const GenerationProfile& prof) {
  double g = 0.0;
  for (const auto& row : prof) {
    if (row.empty()) continue;
    if (!std::isfinite(row.back())) return kInf;
    if (row.front() > 0.0) g = std::max(g, row.back() / row.front());
  }
  return g;
}

bool still_growing(const std::vector<double>& row) {
  if (row.size() < 4) return false;
  for (std::size_t i = row.size() - 3; i < row.size(); ++i)
    if (!(row[i] > 1.01 * row[i - 1])) return false;
  return true;
}

template <class F>
GenerationProfile sweep_family(const IntervalFamily& fam, F&& value, double* sup) {
  GenerationProfile prof = empty_profile(fam.generations);
  *sup = 0.0;
  for (const auto& m : fam.members) {
    const double v = value(m.I);
    if (std::isnan(v)) throw IntegrabilityError("interval functional evaluated to NaN");
    *sup = std::max(*sup, v);
    if (m.end >= 0) {
      double& slot = prof[m.end][m.generation];
      slot = std::max(slot, v);
    }
  }
  return prof;
}

}  // namespace

Weight Weight::peso_w(double q, ParamPair pp) {
  pp.require_basic();
  Weight w = half_angle((2.0 * pp.alpha + 1.0) * (1.0 - 0.5 * q),
                        (2.0 * pp.beta + 1.0) * (1.0 - 0.5 * q));
  w.source_ = WeightSource::peso_w;
  return w;
}

Weight Weight::peso_v(double p, ParamPair pp) {
  Weight w = peso_w(p, pp);
  w.source_ = WeightSource::peso_v;
  return w;
}

Weight Weight::half_angle(double at_zero, double at_pi) {
  Weight w;
  w.shape_ = Shape::half_angle;
  w.e0_ = at_zero;
  w.epi_ = at_pi;
  return w;
}

Weight Weight::power(double at_zero, double at_pi) {
  Weight w = half_angle(at_zero, at_pi);
  w.shape_ = Shape::power;
  return w;
}

Weight Weight::density(std::function<double(double)> f) {
  if (!f) throw DomainError("Weight::density: empty callable");
  Weight w;
  w.shape_ = Shape::callable;
  w.f_ = std::move(f);
  return w;
}

double Weight::operator()(double theta) const { return eval(theta, theta, kPi - theta); }

double Weight::eval(double theta, double to_zero, double to_pi) const {
  switch (shape_) {
    case Shape::half_angle:
      return half_angle_density(to_zero, to_pi, e0_, epi_);
    case Shape::power: {
      double v = 1.0;
      if (e0_ != 0.0) v *= std::pow(to_zero, e0_);
      if (epi_ != 0.0) v *= std::pow(to_pi, epi_);
      return v;
    }
    case Shape::callable:
      break;
  }
  return f_(theta);
}

Weight Weight::pow(double r) const {
  Weight w = *this;
  w.source_ = WeightSource::custom;
  if (shape_ == Shape::callable) {
    auto f = f_;
    w.f_ = [f, r](double t) { return std::pow(f(t), r); };
  } else {
    w.e0_ *= r;
    w.epi_ *= r;
  }
  return w;
}

double weight_eval(const Weight& w, double theta) {
  if (!(theta > 0.0 && theta < kPi)) throw DomainError("weight_eval: theta must lie in (0, pi)");
  return w(theta);
}

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= kPi))
    throw DomainError("Interval: need 0 <= a < b <= pi, got (" + std::to_string(lo) + ", " +
                      std::to_string(hi) + ")");
}

double weight_mass(const Weight& w, const Interval& I) {
  if (w.shape() != Weight::Shape::callable) {
    if (I.a == 0.0 && w.exponent_at_zero() <= -1.0) return kInf;
    if (I.b == kPi && w.exponent_at_pi() <= -1.0) return kInf;
  }
  const double a = I.a, b = I.b;
  auto f = [&](double x, double xc) {
    double z, p;
    if (xc < 0.0) {
      z = a - xc;
      p = kPi - x;
    } else if (xc > 0.0) {
      z = x;
      p = (kPi - b) + xc;
    } else {
      z = x;
      p = kPi - x;
    }
    return w.eval(x, z, p);
  };
  double err = 0.0;
  const double v = mass_rule().integrate(f, a, b, 1e-11, &err);
  if (!std::isfinite(v) || v < 0.0)
    throw IntegrabilityError("weight_mass: quadrature failed on (" + std::to_string(a) + ", " +
                             std::to_string(b) + ")");
  return v;
}

double i_sigma(const std::function<double(double)>& g, double sigma, double theta) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("i_sigma: sigma must lie in (0, 1)");
  if (!(theta > 0.0 && theta < kPi)) throw DomainError("i_sigma: theta must lie in (0, pi)");
  using GK = bq::gauss_kronrod<double, 31>;
  const double inv = 1.0 / sigma;
  auto left = [&](double r) { return g(theta - std::pow(r, inv)); };
  auto right = [&](double r) { return g(theta + std::pow(r, inv)); };
  double e1 = 0.0, e2 = 0.0;
  const double v = GK::integrate(left, 0.0, std::pow(theta, sigma), 15, 1e-12, &e1) +
                   GK::integrate(right, 0.0, std::pow(kPi - theta, sigma), 15, 1e-12, &e2);
  if (!std::isfinite(v)) throw ConvergenceError("i_sigma: quadrature failed");
  return v * inv;
}

IntervalFamily IntervalFamily::standard(int total, int generations, std::uint64_t seed) {
  if (generations < 1) throw DomainError("IntervalFamily: need at least one generation");
  IntervalFamily fam;
  fam.generations = generations;
  auto add = [&](double lo, double hi, int end, int k) {
    if (end == 1) {
      const double t = lo;
      lo = kPi - hi;
      hi = kPi - t;
    }
    fam.members.push_back({Interval(lo, hi), end, k});
  };
  for (int k = 0; k < generations; ++k) {
    const double h = std::ldexp(kPi, -k);
    for (int end = 0; end < 2; ++end) {
      add(0.0, h, end, k);
      add(0.5 * h, h, end, k);
      if (k >= 1) add(0.5 * h, 0.5 * kPi, end, k);
    }
  }
  SplitMix64 rng(seed);
  while (static_cast<int>(fam.members.size()) < total) {
    double x = rng.uniform(0.0, kPi), y = rng.uniform(0.0, kPi);
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    fam.members.push_back({Interval(x, y), -1, -1});
  }
  return fam;
}

ApEstimate ap_constant_estimate(const Weight& w, double p, const IntervalFamily& family) {
  if (!(p > 1.0)) throw DomainError("ap_constant_estimate: p must exceed 1");
  const Weight dual = w.pow(-1.0 / (p - 1.0));
  auto value = [&](const Interval& I) {
    const double len = I.length();
    const double mw = weight_mass(w, I), md = weight_mass(dual, I);
    if (!std::isfinite(mw) || !std::isfinite(md)) return kInf;
    return (mw / len) * std::pow(md / len, p - 1.0);
  };
  ApEstimate est;
  est.profile = sweep_family(family, value, &est.constant);
  est.growth = profile_growth(est.profile);
  est.divergent = !std::isfinite(est.constant);
  for (const auto& row : est.profile)
    if (!row.empty() && row.front() > 0.0 && row.back() / row.front() > 10.0 && still_growing(row))
      est.divergent = true;
  if (est.divergent) est.constant = kInf;
  return est;
}

ApEstimate ap_constant_estimate(const Weight& w, double p, int n_intervals, std::uint64_t seed) {
  return ap_constant_estimate(w, p, IntervalFamily::standard(n_intervals, 40, seed));
}

bool a_infinity_member(const Weight& w, const IntervalFamily& family) {
  for (double p : {2.0, 4.0, 8.0})
    if (!ap_constant_estimate(w, p, family).divergent) return true;
  return false;
}

bool TwoWeightEstimate::bounded(double growth_limit) const {
  return std::isfinite(sup) && growth < growth_limit;
}

TwoWeightEstimate two_weight_condition(const Weight& w, const Weight& v, double sigma, double p,
                                       double q, const IntervalFamily& family) {
  if (!(p > 1.0)) throw DomainError("two_weight_condition: p must exceed 1");
  if (!(q >= p)) throw DomainError("two_weight_condition: need q >= p");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw DomainError("two_weight_condition: sigma must lie in (0, 1)");
  const Weight vbar = v.pow(-1.0 / (p - 1.0));
  auto value = [&](const Interval& I) {
    const double mw = weight_mass(w, I), mv = weight_mass(vbar, I);
    if (!std::isfinite(mw) || !std::isfinite(mv)) return kInf;
    return std::pow(mw, 1.0 / q) * std::pow(mv, (p - 1.0) / p) /
           std::pow(I.length(), 1.0 - sigma);
  };
  TwoWeightEstimate est;
  est.profile = sweep_family(family, value, &est.sup);
  est.growth = profile_growth(est.profile);
  return est;
}

MomentResult interval_moment(double lambda, double nu, const Interval& I) {
  if (!(lambda > -1.0 && nu > -1.0))
    throw DomainError("interval_moment: exponents must exceed -1");
  const double m = weight_mass(Weight::power(lambda, nu), I);
  const double scale = I.length() * std::pow(I.b, lambda) * std::pow(kPi - I.a, nu);
  return {m, m / scale};
}

double mario_ratio(double lambda, double a, double b) {
  if (!(lambda > -1.0)) throw DomainError("mario_ratio: lambda must exceed -1");
  if (!(a >= 0.0 && a < b)) throw DomainError("mario_ratio: need 0 <= a < b");
  const double t = a / b;
  // (1 - t^(lambda+1)) / (1 - t)
  if (t == 0.0) return 1.0;
  return -std::expm1((lambda + 1.0) * std::log(t)) / (1.0 - t);
}

namespace {

double window_low(double g) { return (2.0 * g + 2.0) / (g + 1.5); }
double window_high(double g) { return g + 0.5 > 0.0 ? (2.0 * g + 2.0) / (g + 0.5) : kInf; }

}  // namespace

bool ExponentBox::chu1() const {
  const double lo = std::max(window_low(pp.alpha), window_low(pp.beta));
  const double hi = std::min(window_high(pp.alpha), window_high(pp.beta));
  return lo < p && p <= q && q < hi;
}

double ExponentBox::chu2_margin() const {
  const double m = std::min(sigma / (2.0 * pp.alpha + 2.0), sigma / (2.0 * pp.beta + 2.0));
  return 1.0 / q - (1.0 / p - m);
}

bool ExponentBox::chu2() const { return chu2_margin() >= -1e-12; }

bool ExponentBox::chu2_equality(double tol) const { return std::abs(chu2_margin()) <= tol; }

double weighted_lp_lq_ratio(const std::vector<std::function<double(double)>>& g_list, double sigma,
                            double p, double q, const Weight& w, const Weight& v, int nodes) {
  if (!(p >= 1.0 && q >= 1.0)) throw DomainError("weighted_lp_lq_ratio: exponents must be >= 1");
  if (g_list.empty()) throw DomainError("weighted_lp_lq_ratio: empty function list");
  const NormRule rw = norm_rule(w, nodes), rv = norm_rule(v, nodes);
  std::vector<double> num(rw.nodes.size(), 0.0), den(rv.nodes.size(), 0.0);
  for (const auto& g : g_list) {
    for (std::size_t i = 0; i < rw.nodes.size(); ++i) {
      const double x = i_sigma(g, sigma, rw.nodes[i]);
      num[i] += x * x;
    }
    for (std::size_t i = 0; i < rv.nodes.size(); ++i) {
      const double x = g(rv.nodes[i]);
      den[i] += x * x;
    }
  }
  const double d = lp_norm(den, rv, p);
  if (!(d > 0.0)) throw ZeroDenominator("weighted_lp_lq_ratio: input has zero norm");
  return lp_norm(num, rw, q) / d;
}

double theorem14_ratio(const std::vector<std::vector<double>>& coeff_lists,
                       const ExponentBox& box, int nodes) {
  box.pp.require_basic();
  if (!(box.sigma > 0.0 && box.sigma < 1.0))
    throw DomainError("theorem14_ratio: sigma must lie in (0, 1)");
  if (!(box.a >= 0.0 && box.b >= 0.0))
    throw DomainError("theorem14_ratio: exponent steps must be nonnegative");
  if (!box.chu1()) throw DomainError("theorem14_ratio: (p, q) outside the admissible window");
  if (!box.chu2()) throw DomainError("theorem14_ratio: 1/q too small for the given p and sigma");
  if (coeff_lists.empty()) throw DomainError("theorem14_ratio: empty function list");
  std::size_t top = 1;
  for (const auto& c : coeff_lists) top = std::max(top, c.size());
  if (nodes <= 0) nodes = std::max<int>(192, 2 * static_cast<int>(top) + 64);
  const QuadratureRule rule = gauss_jacobi_angle_rule(nodes, box.pp.alpha, box.pp.beta);
  std::vector<double> num(rule.size(), 0.0), den(rule.size(), 0.0), P(top);
  for (std::size_t j = 0; j < coeff_lists.size(); ++j) {
    const auto& c = coeff_lists[j];
    if (c.empty()) continue;
    const double aj = box.a * static_cast<double>(j), bj = box.b * static_cast<double>(j);
    const ParamPair pj(box.pp.alpha + aj, box.pp.beta + bj);
    const TrigJacobiBasis basis(pj, static_cast<int>(c.size()) - 1);
    std::vector<double> mult(c.size());
    for (std::size_t n = 0; n < c.size(); ++n)
      mult[n] = std::pow(eigen_root(static_cast<int>(n), pj), -box.sigma);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double t = rule.nodes[i];
      basis.fill(t, P.data());
      double f = 0.0, h = 0.0;
      for (std::size_t n = 0; n < c.size(); ++n) {
        f += c[n] * P[n];
        h += c[n] * mult[n] * P[n];
      }
      const double u = half_angle_density(t, kPi - t, aj, bj);
      num[i] += u * u * h * h;
      den[i] += u * u * f * f;
    }
  }
  const NormRule r{rule.nodes, rule.weights};
  const double d = lp_norm(den, r, box.p);
  if (!(d > 0.0)) throw ZeroDenominator("theorem14_ratio: input has zero norm");
  return lp_norm(num, r, box.q) / d;
}

}  // namespace jfrac
