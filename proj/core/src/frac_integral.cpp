#include "jfrac/frac_integral.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jfrac/errors.hpp"
#include "jfrac/special_functions.hpp"

namespace jfrac {

namespace bq = boost::math::quadrature;

namespace {

using GK = bq::gauss_kronrod<double, 31>;

double gk(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  double err = 0.0;
  return GK::integrate(f, a, b, 12, tol, &err);
}

// Fixed-order Gauss-Legendre summed over consecutive breakpoints.
double gl_panels(const std::function<double(double)>& f, const std::vector<double>& br) {
  static const QuadratureRule ref = gauss_legendre_rule(24, -1.0, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double h = 0.5 * (br[i + 1] - br[i]), m = 0.5 * (br[i + 1] + br[i]);
    double s = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) s += ref.weights[k] * f(m + h * ref.nodes[k]);
    total += h * s;
  }
  return total;
}

bq::tanh_sinh<double>& tanh_sinh_rule() {
  static bq::tanh_sinh<double> ts(15);
  return ts;
}

double log_pi_const(double gamma) {
  return log_gamma(gamma + 1.0) - 0.5 * std::log(std::numbers::pi) - log_gamma(gamma + 0.5);
}

// Integral of f(1-u, 1+u) dPi_gamma(u).
template <class F>
double pi_integrate(double gamma, double log_c, F&& f, double tol) {
  if (gamma == -0.5) return 0.5 * (f(2.0, 0.0) + f(0.0, 2.0));
  auto& ts = tanh_sinh_rule();
  const double kappa = gamma + 0.5;
  if (kappa >= 1.0) {
    auto g = [&](double u, double uc) {
      double om, op;
      if (uc > 0.0) {
        om = uc;
        op = 2.0 - uc;
      } else if (uc < 0.0) {
        op = -uc;
        om = 2.0 - op;
      } else {
        om = 1.0 - u;
        op = 1.0 + u;
      }
      return std::pow(om * op, kappa - 1.0) * f(om, op);
    };
    return std::exp(log_c) * ts.integrate(g, -1.0, 1.0, tol);
  }
  // density (w(2-w))^{kappa-1}; substitute w = y^{1/kappa} on each half
  const double inv = 1.0 / kappa;
  auto right = [&](double y) {
    const double w = std::pow(y, inv);
    return std::pow(2.0 - w, kappa - 1.0) * f(w, 2.0 - w);
  };
  auto left = [&](double y) {
    const double w = std::pow(y, inv);
    return std::pow(2.0 - w, kappa - 1.0) * f(2.0 - w, w);
  };
  const double s = ts.integrate(right, 0.0, 1.0, tol) + ts.integrate(left, 0.0, 1.0, tol);
  return std::exp(log_c - std::log(kappa)) * s;
}

// Piecewise Chebyshev interpolant on [lo, lo + panels * width].
class ChebTable {
 public:
  ChebTable() = default;
  template <class F>
  ChebTable(double lo, double hi, double width, int order, F&& f)
      : lo_(lo), width_(width), order_(order) {
    panels_ = static_cast<int>(std::ceil((hi - lo) / width));
    coef_.assign(static_cast<std::size_t>(panels_) * order, 0.0);
    std::vector<double> vals(order);
    for (int p = 0; p < panels_; ++p) {
      const double mid = lo + (p + 0.5) * width;
      for (int k = 0; k < order; ++k) {
        const double xk = std::cos(std::numbers::pi * (k + 0.5) / order);
        vals[k] = f(mid + 0.5 * width * xk);
      }
      for (int j = 0; j < order; ++j) {
        double s = 0.0;
        for (int k = 0; k < order; ++k)
          s += vals[k] * std::cos(std::numbers::pi * j * (k + 0.5) / order);
        coef_[static_cast<std::size_t>(p) * order + j] = (j == 0 ? 1.0 : 2.0) * s / order;
      }
    }
  }

  bool contains(double x) const { return x >= lo_ && x <= lo_ + panels_ * width_; }
  double lower() const { return lo_; }

  double operator()(double x) const {
    int p = static_cast<int>((x - lo_) / width_);
    p = std::clamp(p, 0, panels_ - 1);
    const double y = 2.0 * (x - lo_ - p * width_) / width_ - 1.0;
    const double* c = coef_.data() + static_cast<std::size_t>(p) * order_;
    double b1 = 0.0, b2 = 0.0;
    for (int j = order_ - 1; j >= 1; --j) {
      const double b0 = 2.0 * y * b1 - b2 + c[j];
      b2 = b1;
      b1 = b0;
    }
    return y * b1 - b2 + c[0];
  }

 private:
  double lo_ = 0.0, width_ = 1.0;
  int order_ = 0, panels_ = 0;
  std::vector<double> coef_;
};

}  // namespace

FracParams::FracParams(double s, ParamPair p) : sigma(s), pp(p) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("FracParams: sigma must lie in (0, 1)");
  pp.require_theorem13();
}

double pi_integral(double gamma, const std::function<double(double, double)>& f, double tol) {
  if (!(gamma >= -0.5)) throw DomainError("pi_integral: gamma must be at least -1/2");
  const double log_c = gamma == -0.5 ? 0.0 : log_pi_const(gamma);
  return pi_integrate(gamma, log_c, f, tol);
}

struct FracKernel::Impl {
  FracParams fp;
  double expo;      // rho + 1
  double tail_end;  // truncation of the time integral
  double log_pref;
  double log_ca, log_cb;
  // d log g / d log delta as delta -> 0
  double small_delta_slope;
  ChebTable table;

  explicit Impl(const FracParams& p) : fp(p) {
    const double rho = fp.pp.rho();
    expo = rho + 1.0;
    tail_end = std::max(60.0, 70.0 / rho);
    log_pref = log_gamma(rho + 1.0) - log_gamma(fp.sigma) - rho * std::log(2.0) -
               log_gamma(fp.pp.alpha + 1.0) - log_gamma(fp.pp.beta + 1.0);
    log_ca = fp.pp.alpha == -0.5 ? 0.0 : log_pi_const(fp.pp.alpha);
    log_cb = log_pi_const(fp.pp.beta);
    small_delta_slope = 0.5 * fp.sigma - rho - 0.5;
    table = ChebTable(std::log(1e-24), std::log(4.0), 2.0, 22,
                      [this](double x) { return log_direct(std::exp(x)); });
  }

  double log_direct(double delta) const {
    const double sigma = fp.sigma;
    auto q = [&](double t) {
      const double sh = std::sinh(0.25 * t);
      return std::sinh(0.5 * t) * std::exp(-expo * std::log1p(2.0 * sh * sh / delta));
    };
    const double sp = std::min(0.5, std::pow(8.0 * delta, 0.5 * sigma));
    std::vector<double> br{0.0};
    for (double b = sp * std::ldexp(1.0, -60); b < 1.0; b *= 2.0) br.push_back(b);
    br.push_back(1.0);
    const double inv = 1.0 / sigma;
    std::function<double(double)> head = [&](double s) { return q(std::pow(s, inv)) * inv; };
    std::function<double(double)> tail = [&](double t) { return q(t) * std::pow(t, sigma - 1.0); };
    const double a = gl_panels(head, br);
    std::vector<double> tb{1.0};
    while (tb.back() < tail_end) tb.push_back(std::min(tb.back() + 1.0, tail_end));
    const double b = gl_panels(tail, tb);
    const double total = a + b;
    if (!(total > 0.0) || !std::isfinite(total))
      throw ConvergenceError("frac_kernel: time integral failed for delta = " + std::to_string(delta));
    return -expo * std::log(delta) + std::log(total);
  }

  double log_g(double delta) const {
    const double x = std::log(delta);
    if (table.contains(x)) return table(x);
    if (x < table.lower())
      return table(table.lower()) + small_delta_slope * (x - table.lower());
    return log_direct(delta);
  }

  double eval(double theta, double phi) const {
    constexpr double pi = std::numbers::pi;
    if (!(theta > 0.0 && theta < pi && phi > 0.0 && phi < pi))
      throw DomainError("frac_kernel: angles must lie in (0, pi)");
    if (theta == phi) throw DomainError("frac_kernel: kernel is singular on the diagonal");
    const double s = std::sin(0.5 * theta) * std::sin(0.5 * phi);
    const double c = std::cos(0.5 * theta) * std::cos(0.5 * phi);
    const double sd = std::sin(0.25 * (theta - phi));
    const double d0 = 2.0 * sd * sd;
    const double l0 = log_g(d0);
    const double alpha = fp.pp.alpha, beta = fp.pp.beta;
    auto outer = [&](double vm, double) {
      const double base = d0 + vm * c;
      auto inner = [&](double um, double) { return std::exp(log_g(base + um * s) - l0); };
      return pi_integrate(alpha, log_ca, inner, 1e-9);
    };
    const double I = pi_integrate(beta, log_cb, outer, 1e-8);
    return std::exp(log_pref + l0) * I;
  }
};

FracKernel::FracKernel(const FracParams& fp) : impl_(std::make_unique<Impl>(fp)) {}
FracKernel::~FracKernel() = default;
FracKernel::FracKernel(FracKernel&&) noexcept = default;
FracKernel& FracKernel::operator=(FracKernel&&) noexcept = default;

double FracKernel::operator()(double theta, double phi) const { return impl_->eval(theta, phi); }
const FracParams& FracKernel::params() const { return impl_->fp; }
double FracKernel::log_time_integral(double delta) const { return impl_->log_g(delta); }
double FracKernel::log_time_integral_direct(double delta) const {
  return impl_->log_direct(delta);
}

double frac_kernel(const FracParams& fp, double theta, double phi) {
  return FracKernel(fp)(theta, phi);
}

CoefficientVector frac_integral_spectral(const CoefficientVector& cv, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("frac_integral_spectral: sigma must be positive");
  std::vector<double> c(cv.coeffs().begin(), cv.coeffs().end());
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double root = eigen_root(static_cast<int>(n), cv.params());
    if (!(root > 0.0)) {
      if (c[n] == 0.0) continue;
      throw DomainError("frac_integral_spectral: zero eigenvalue with nonzero coefficient");
    }
    c[n] *= std::pow(root, -sigma);
  }
  return CoefficientVector(cv.params(), std::move(c));
}

double frac_integral_semigroup(const std::function<double(double)>& f, const FracParams& fp,
                               double theta, int N, int nodes) {
  const QuadratureRule rule = gauss_jacobi_angle_rule(nodes, fp.pp.alpha, fp.pp.beta);
  const CoefficientVector cv = expand(f, fp.pp, N, rule);
  std::vector<double> P(static_cast<std::size_t>(N) + 1);
  TrigJacobiBasis(fp.pp, N).fill(theta, P.data());
  std::vector<double> amp(P.size()), rate(P.size());
  for (int n = 0; n <= N; ++n) {
    amp[n] = cv[n] * P[n];
    rate[n] = eigen_root(n, fp.pp);
  }
  auto h = [&](double t) {
    double s = 0.0;
    for (int n = N; n >= 0; --n) s += amp[n] * std::exp(-rate[n] * t);
    return s;
  };
  const double sigma = fp.sigma, inv = 1.0 / sigma;
  std::function<double(double)> head = [&](double s) { return h(std::pow(s, inv)) * inv; };
  const double a = gk(head, 0.0, 1.0, 1e-14);
  bq::exp_sinh<double> es;
  const double b =
      es.integrate([&](double t) { return h(t) * std::pow(t, sigma - 1.0); }, 1.0,
                   std::numeric_limits<double>::infinity(), 1e-13);
  return (a + b) / std::tgamma(sigma);
}

double sharp_bound_rhs(const FracParams& fp, double theta, double phi) {
  constexpr double pi = std::numbers::pi;
  if (!(theta > 0.0 && theta < pi && phi > 0.0 && phi < pi))
    throw DomainError("sharp_bound_rhs: angles must lie in (0, pi)");
  if (theta == phi) throw DomainError("sharp_bound_rhs: undefined on the diagonal");
  const double a = fp.pp.alpha + 0.5, b = fp.pp.beta + 0.5;
  const double s = std::sin(0.5 * theta) * std::sin(0.5 * phi);
  const double c = std::cos(0.5 * theta) * std::cos(0.5 * phi);
  const double weight = std::exp(-a * std::log(s) - b * std::log(c));
  const double sing = std::pow(std::abs(std::sin(0.25 * (theta - phi))), fp.sigma - 1.0);
  return weight * (1.0 / b + sing);
}

SharpBoundGrid SharpBoundGrid::standard() {
  SharpBoundGrid g;
  g.alphas = {-0.5, 0.0, 2.0};
  g.betas = {0.0, 1.0, 5.0, 10.0, 20.0};
  g.thetas = {0.1, 0.4, 0.8, 1.2, 1.6, 2.0, 2.4, 2.8, 3.04};
  g.diagonal_offsets = {0.1, 0.01, 0.001};
  return g;
}

BoundReport verify_sharp_bound(double sigma, const SharpBoundGrid& grid) {
  constexpr double pi = std::numbers::pi;
  BoundReport rep;
  rep.sigma = sigma;
  rep.min_kernel = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> points;
  const auto& th = grid.thetas;
  for (std::size_t i = 0; i < th.size(); ++i) {
    for (std::size_t j = i + 1; j < th.size(); ++j)
      if (std::abs(th[i] - th[j]) >= grid.exclusion) points.emplace_back(th[i], th[j]);
    for (double off : grid.diagonal_offsets) {
      if (off < grid.exclusion) continue;
      for (double sgn : {-1.0, 1.0}) {
        const double phi = th[i] + sgn * off;
        if (phi > 1e-6 && phi < pi - 1e-6) points.emplace_back(th[i], phi);
      }
    }
  }
  for (double a : grid.alphas) {
    for (double b : grid.betas) {
      const FracParams fp(sigma, ParamPair(a, b));
      const FracKernel K(fp);
      double sup = 0.0;
      for (const auto& [t, p] : points) {
        const double k = K(t, p);
        const double r = sharp_bound_rhs(fp, t, p);
        const double ratio = k / r;
        rep.samples.push_back({a, b, t, p, k, r, ratio});
        sup = std::max(sup, ratio);
        rep.min_kernel = std::min(rep.min_kernel, k);
      }
      rep.per_pair.push_back({a, b, sup});
      rep.sup = std::max(rep.sup, sup);
    }
  }
  if (!rep.per_pair.empty()) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& ps : rep.per_pair) {
      lo = std::min(lo, ps.sup);
      hi = std::max(hi, ps.sup);
    }
    rep.spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  }
  if (rep.samples.empty()) rep.min_kernel = 0.0;
  return rep;
}

LemmaCheck lemma_estimate_check(double gamma, double lambda, double A, double B) {
  if (!(A > B && B > 0.0)) throw DomainError("lemma_estimate_check: need A > B > 0");
  if (!(gamma >= -0.5)) throw DomainError("lemma_estimate_check: gamma must be at least -1/2");
  if (!(lambda >= -0.5)) throw DomainError("lemma_estimate_check: lambda must be at least -1/2");
  LemmaCheck out{};
  if (gamma == -0.5 && lambda == -0.5) {
    out = {1.0, 1.0, 0.0, 0.0};
    return out;
  }
  const double e = gamma + lambda + 1.0;
  const double gap = A - B;
  const double ratio = B / gap;
  auto f = [&](double om, double) { return std::exp(-e * std::log1p(ratio * om)); };
  const double log_c = gamma == -0.5 ? 0.0 : log_pi_const(gamma);
  const double I = pi_integrate(gamma, log_c, f, 1e-13);
  out.log_lhs = -e * std::log(gap) + std::log(I);
  const double g = gamma + 0.5;
  const double log_two = std::log(2.0), log_sqrt_pi = 0.5 * std::log(std::numbers::pi);
  if (lambda > -0.5) {
    out.log_rhs = g * log_two + log_gamma(gamma + 1.0) + log_gamma(lambda + 0.5) - log_sqrt_pi -
                  log_gamma(gamma + lambda + 1.0) - g * std::log(B) - (lambda + 0.5) * std::log(gap);
  } else {
    if (gamma == -0.5) throw DomainError("lemma_estimate_check: unreachable");
    out.log_rhs = g * log_two + log_gamma(gamma + 1.0) - log_sqrt_pi - log_gamma(gamma + 0.5) -
                  g * std::log(B) + std::log(1.0 / g + std::log(A / gap));
  }
  out.lhs = std::exp(out.log_lhs);
  out.rhs = std::exp(out.log_rhs);
  return out;
}

}  // namespace jfrac
