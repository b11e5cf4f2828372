#include "jfrac/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "jfrac/errors.hpp"
#include "jfrac/frac_integral.hpp"
#include "jfrac/jacobi_expansion.hpp"
#include "jfrac/poisson_kernel.hpp"
#include "jfrac/random.hpp"
#include "jfrac/symmetric_spaces.hpp"
#include "jfrac/weighted_inequalities.hpp"

namespace jfrac {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Values = std::map<std::string, std::vector<double>>;

const std::map<std::string, Values>& suite_defaults() {
  static const std::map<std::string, Values> d = {
      {"poisson-agree",
       {{"alpha", {-0.5, 0.0, 0.5, 1.5, 3.0}},
        {"beta", {-0.5, 0.0, 0.5, 1.5, 3.0}},
        {"t", {0.1, 0.5, 1.0, 2.0}},
        {"theta", {0.3, 1.0, 1.8, 2.8}},
        {"phi", {0.3, 1.0, 1.8, 2.8}},
        {"nodes", {128}},
        {"tol", {1e-8}}}},
      {"sharp-bound",
       {{"sigma", {0.25, 0.5, 0.75}},
        {"alpha", {-0.5, 0.0, 2.0}},
        {"beta", {0.0, 1.0, 5.0, 10.0, 20.0}},
        {"theta", {0.1, 0.4, 0.8, 1.2, 1.6, 2.0, 2.4, 2.8, 3.04}},
        {"offsets", {0.1, 0.01, 0.001}},
        {"tol", {4.0}}}},
      {"lemma22", {{"samples", {10000}}}},
      {"two-weight", {{"intervals", {1000}}, {"generations", {40}}, {"tol", {10.0}}}},
      {"theorem14",
       {{"alpha", {0.0}},
        {"beta", {0.0}},
        {"a", {1.0}},
        {"b", {1.0}},
        {"sigma", {0.5}},
        {"p", {2.0}},
        {"q", {3.0}},
        {"J", {3}},
        {"N", {16}},
        {"samples", {100}},
        {"tol", {3.0}}}},
      {"sphere-thm1",
       {{"d", {2}},
        {"sigma", {0.5}},
        {"p", {2.0}},
        {"q", {2.0}},
        {"J", {16}},
        {"N", {16}},
        {"samples", {100}},
        {"tol", {1e-9}}}},
      {"ball-thm2",
       {{"d", {2}},
        {"m", {0}},
        {"sigma", {0.5}},
        {"p", {2.0, 1.8}},
        {"q", {2.0, 2.2}},
        {"J", {16}},
        {"N", {16}},
        {"samples", {100}},
        {"tol", {1e-8}}}},
      {"identities",
       {{"alpha", {-0.5, 0.0, 0.5, 1.5, 3.0}},
        {"beta", {-0.5, 0.0, 0.5, 1.5, 3.0}},
        {"N", {10}},
        {"tol", {1e-10}},
        {"stencil_tol", {1e-5}}}},
  };
  return d;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> k = {
      "alpha", "beta",  "t", "theta", "phi",     "sigma",   "p",         "q",
      "d",     "m",     "a", "b",     "offsets", "nodes",   "tol",       "stencil_tol",
      "N",     "J",     "samples",    "intervals", "generations"};
  return k;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(v))
    throw ConfigError("invalid number '" + t + "' for key '" + key + "'");
  return v;
}

class RowSink {
 public:
  RowSink(SweepReport& rep, std::string suite) : rep_(rep), suite_(std::move(suite)) {}

  void add(std::vector<std::pair<std::string, std::string>> params, double measured,
           double reference, double ratio, bool pass) {
    rep_.rows.push_back({suite_, std::move(params), measured, reference, ratio, pass});
  }

  // Evaluates fn; a NumericalError becomes a failed row with NaN fields.
  template <class F>
  void guarded(std::vector<std::pair<std::string, std::string>> params, F&& fn) {
    try {
      fn(params);
    } catch (const NumericalError& e) {
      params.emplace_back("error", sanitize(e.what()));
      add(std::move(params), kNaN, kNaN, kNaN, false);
    }
  }

 private:
  static std::string sanitize(std::string s) {
    for (char& c : s)
      if (c == ',' || c == ';' || c == '=' || c == '\n' || c == '"') c = ' ';
    return s;
  }
  SweepReport& rep_;
  std::string suite_;
};

std::pair<std::string, std::string> kv(const std::string& k, double v) {
  return {k, format_real(v)};
}
std::pair<std::string, std::string> kv(const std::string& k, const std::string& v) {
  return {k, v};
}

double rel_err(double x, double ref) {
  return std::abs(x - ref) / std::max(std::abs(ref), std::numeric_limits<double>::min());
}

int uniform_int(SplitMix64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.next() % static_cast<std::uint64_t>(hi - lo + 1));
}

// ---------------------------------------------------------------------------

void run_poisson(const SweepConfig& c, RowSink& out) {
  const double tol = c.real("tol");
  const int nodes = c.integer("nodes");
  for (double a : c.list("alpha"))
    for (double b : c.list("beta")) {
      const ParamPair pp(a, b);
      const PoissonClosedForm closed(pp);
      for (double t : c.list("t"))
        for (double th : c.list("theta"))
          for (double ph : c.list("phi"))
            out.guarded({kv("check", "agree"), kv("alpha", a), kv("beta", b), kv("t", t),
                         kv("theta", th), kv("phi", ph)},
                        [&](auto& params) {
                          const double s = poisson_series(t, th, ph, pp);
                          const double k = closed(t, th, ph);
                          const double e = rel_err(k, s);
                          out.add(params, k, s, e, e <= tol);
                        });
      if (c.list("t").empty() || c.list("theta").empty()) continue;
      const QuadratureRule rule = gauss_jacobi_angle_rule(nodes, a, b);
      for (double t : c.list("t"))
        for (double th : c.list("theta"))
          out.guarded({kv("check", "mass"), kv("alpha", a), kv("beta", b), kv("t", t),
                       kv("theta", th)},
                      [&](auto& params) {
                        double m = 0.0;
                        for (std::size_t i = 0; i < rule.size(); ++i)
                          m += rule.weights[i] * closed(t, th, rule.nodes[i]);
                        const double ref = std::exp(-0.5 * t * pp.rho());
                        const double e = rel_err(m, ref);
                        out.add(params, m, ref, e, e <= tol);
                      });
    }
}

void run_sharp_bound(const SweepConfig& c, RowSink& out) {
  SharpBoundGrid grid;
  grid.alphas = c.list("alpha");
  grid.betas = c.list("beta");
  grid.thetas = c.list("theta");
  grid.diagonal_offsets = c.list("offsets");
  const double limit = c.real("tol");
  for (double s : c.list("sigma")) {
    out.guarded({kv("sigma", s)}, [&](auto&) {
      const BoundReport rep = verify_sharp_bound(s, grid);
      double lowest = std::numeric_limits<double>::infinity();
      for (const auto& ps : rep.per_pair) lowest = std::min(lowest, ps.sup);
      for (const auto& ps : rep.per_pair) {
        double min_k = std::numeric_limits<double>::infinity();
        for (const auto& smp : rep.samples)
          if (smp.alpha == ps.alpha && smp.beta == ps.beta) min_k = std::min(min_k, smp.kernel);
        const double r = ps.sup / lowest;
        const bool ok = std::isfinite(ps.sup) && r <= limit && min_k >= 0.0;
        out.add({kv("sigma", s), kv("alpha", ps.alpha), kv("beta", ps.beta),
                 kv("min_kernel", min_k)},
                ps.sup, lowest, r, ok);
      }
    });
  }
}

void run_lemma(const SweepConfig& c, RowSink& out) {
  {
    const LemmaCheck d = lemma_estimate_check(-0.5, -0.5, 2.0, 1.0);
    const bool ok = d.lhs == 1.0 && d.rhs == 1.0;
    out.add({kv("gamma", -0.5), kv("lambda", -0.5), kv("A", 2.0), kv("B", 1.0),
             kv("bound", "degenerate")},
            d.lhs, d.rhs, d.lhs / d.rhs, ok);
  }
  SplitMix64 rng(c.seed());
  const int n = c.integer("samples");
  for (int i = 0; i < n; ++i) {
    const double gamma = rng.uniform(-0.5, 20.0);
    const bool log_form = i % 2 == 1;
    // 1 - uniform() lies in (0, 1]
    const double lambda = log_form ? -0.5 : -0.5 + 20.5 * (1.0 - rng.uniform());
    const double B = 10.0 * (1.0 - rng.uniform());
    const double A = B + 10.0 * (1.0 - rng.uniform());
    out.guarded({kv("gamma", gamma), kv("lambda", lambda), kv("A", A), kv("B", B),
                 kv("bound", log_form ? "log" : "power")},
                [&](auto& params) {
                  const LemmaCheck r = lemma_estimate_check(gamma, lambda, A, B);
                  const double ratio = std::exp(r.log_lhs - r.log_rhs);
                  out.add(params, r.log_lhs, r.log_rhs, ratio, r.holds());
                });
  }
}

struct Tuple {
  double alpha, beta, p, q, sigma;
};

const std::vector<Tuple>& admissible_tuples() {
  static const std::vector<Tuple> t = {
      {0.5, 0.5, 2.0, 2.0, 0.5},   {0.0, 0.0, 2.0, 3.0, 0.5},    {0.0, 1.0, 1.8, 2.2, 0.5},
      {1.0, 0.5, 1.7, 2.0, 0.75},  {-0.5, 0.5, 1.6, 2.0, 0.5},   {2.0, 2.0, 1.8, 1.9, 0.25},
      {0.25, 0.75, 1.7, 2.1, 0.5}, {0.0, 0.0, 1.5, 3.5, 0.9},    {3.0, 1.0, 1.8, 2.0, 0.6},
      {0.5, 0.0, 2.0, 2.4, 0.3},
  };
  return t;
}

// q chosen so that 1/q falls 0.1 below the admissible threshold.
const std::vector<Tuple>& violating_tuples() {
  static const std::vector<Tuple> t = [] {
    const double raw[5][4] = {
        {0.5, 0.5, 1.6, 0.5}, {0.0, 0.0, 1.5, 0.5}, {1.0, 0.0, 1.7, 0.25},
        {0.25, 0.25, 1.5, 0.25}, {0.5, 0.0, 1.6, 0.5}};
    std::vector<Tuple> v;
    for (const auto& r : raw) {
      const double m = std::min(r[3] / (2.0 * r[0] + 2.0), r[3] / (2.0 * r[1] + 2.0));
      v.push_back({r[0], r[1], r[2], 1.0 / (1.0 / r[2] - m - 0.1), r[3]});
    }
    return v;
  }();
  return t;
}

void run_two_weight(const SweepConfig& c, RowSink& out) {
  const IntervalFamily fam =
      IntervalFamily::standard(c.integer("intervals"), c.integer("generations"), c.seed());
  const double limit = c.real("tol");
  auto one = [&](const Tuple& t, const std::string& kind) {
    ExponentBox box;
    box.pp = ParamPair(t.alpha, t.beta);
    box.p = t.p;
    box.q = t.q;
    box.sigma = t.sigma;
    out.guarded({kv("kind", kind), kv("alpha", t.alpha), kv("beta", t.beta), kv("p", t.p),
                 kv("q", t.q), kv("sigma", t.sigma), kv("window", box.chu1() ? 1.0 : 0.0),
                 kv("gap", box.chu2() ? 1.0 : 0.0),
                 kv("gap_equality", box.chu2_equality() ? 1.0 : 0.0)},
                [&](auto& params) {
                  const TwoWeightEstimate e =
                      two_weight_condition(Weight::peso_w(t.q, box.pp),
                                           Weight::peso_v(t.p, box.pp), t.sigma, t.p, t.q, fam);
                  bool ok;
                  if (kind == "admissible")
                    ok = box.chu1() && box.chu2() && e.bounded(limit);
                  else if (kind == "violating")
                    ok = !box.chu2() && e.growth >= limit;
                  else
                    ok = std::isfinite(e.sup);
                  out.add(params, e.sup, limit, e.growth, ok);
                });
  };
  for (const auto& t : admissible_tuples()) one(t, "admissible");
  for (const auto& t : violating_tuples()) one(t, "violating");
  // gap condition met with equality
  one({1.0, 1.0, 2.0, 1.0 / (0.5 - 0.0625), 0.25}, "equality");
}

std::function<double(double)> random_trig(SplitMix64& rng, int degree) {
  std::vector<double> cc(static_cast<std::size_t>(degree) + 1), ss(cc.size());
  for (std::size_t k = 0; k < cc.size(); ++k) {
    cc[k] = rng.normal() / (1.0 + k);
    ss[k] = rng.normal() / (1.0 + k);
  }
  return [cc, ss](double t) {
    double v = 0.0;
    for (std::size_t k = 0; k < cc.size(); ++k)
      v += cc[k] * std::cos(k * t) + ss[k] * std::sin(k * t);
    return v;
  };
}

void run_theorem14(const SweepConfig& c, RowSink& out) {
  ExponentBox box;
  box.pp = ParamPair(c.real("alpha"), c.real("beta"));
  box.a = c.real("a");
  box.b = c.real("b");
  box.sigma = c.real("sigma");
  box.p = c.real("p");
  box.q = c.real("q");
  const int lists = c.integer("J"), N = c.integer("N"), n = c.integer("samples");
  SplitMix64 rng(c.seed());
  std::vector<double> ratios;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<double>> coeffs(static_cast<std::size_t>(lists));
    for (auto& v : coeffs) {
      v.resize(static_cast<std::size_t>(N) + 1);
      for (double& x : v) x = rng.normal();
    }
    double r = kNaN;
    try {
      r = theorem14_ratio(coeffs, box);
    } catch (const NumericalError&) {
    }
    ratios.push_back(r);
  }
  const std::size_t head = std::min<std::size_t>(20, ratios.size());
  double first = 0.0;
  for (std::size_t i = 0; i < head; ++i) first = std::max(first, ratios[i]);
  const double ref = c.real("tol") * first;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double r = ratios[i];
    out.add({kv("check", "ratio"), kv("sample", static_cast<double>(i)), kv("p", box.p),
             kv("q", box.q), kv("sigma", box.sigma), kv("gap_equality", box.chu2_equality() ? 1.0 : 0.0)},
            r, ref, r / ref, std::isfinite(r) && r <= ref);
  }
  const Weight w = Weight::peso_w(box.q, box.pp), v = Weight::peso_v(box.p, box.pp);
  for (int i = 0; i < 5; ++i) {
    const auto g = random_trig(rng, 6);
    out.guarded({kv("check", "duplicate"), kv("sample", static_cast<double>(i))},
                [&](auto& params) {
                  const double single = weighted_lp_lq_ratio({g}, box.sigma, box.p, box.q, w, v);
                  const double dup = weighted_lp_lq_ratio({g, g}, box.sigma, box.p, box.q, w, v);
                  const double e = rel_err(dup, single);
                  out.add(params, dup, single, e, e <= 1e-12);
                });
  }
}

void run_sphere(const SweepConfig& c, RowSink& out) {
  const double tol = c.real("tol");
  const int J = c.integer("J"), N = c.integer("N"), n = c.integer("samples");
  const double sigma = c.real("sigma");
  for (double dd : c.list("d")) {
    const int d = static_cast<int>(dd);
    {
      const double alpha = 0.5 * (d - 2);
      double worst = 0.0;
      for (int k = 0; k <= 10; ++k)
        for (int j = 0; j <= 6; ++j)
          for (int i = 1; i < 32; ++i) {
            const double t = kPi * i / 32.0;
            const double a = psi_radial(k + j, j, t, d);
            const double b = std::pow(2.0, -(j + 0.5 * (d - 1))) * std::pow(std::sin(t), j) *
                             trig_jacobi(k, ParamPair(alpha + j, alpha + j), t);
            worst = std::max(worst, std::abs(a - b));
          }
      out.add({kv("check", "basis"), kv("d", dd)}, worst, 0.0, worst, worst <= tol);
    }
    const double bound = std::pow(0.5 * (d - 1), -sigma);
    const auto& ps = c.list("p");
    const auto& qs = c.list("q");
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      MixedNormParams mnp;
      mnp.d = d;
      mnp.p = ps[pi];
      mnp.q = qs[pi];
      mnp.sigma = sigma;
      const bool hilbert = mnp.p == 2.0 && mnp.q == 2.0;
      SplitMix64 rng(c.seed());
      for (int i = 0; i < n; ++i) {
        const int Ji = uniform_int(rng, 0, J), Ni = uniform_int(rng, 0, N);
        const SphereFunction sf = SphereFunction::random(d, Ji, Ni, rng);
        const double pn = mixed_norm(sf, 2.0), cn = sf.coefficient_norm();
        const double e = rel_err(pn, cn);
        out.add({kv("check", "parseval"), kv("d", dd), kv("p", mnp.p), kv("q", mnp.q),
                 kv("sample", static_cast<double>(i))},
                pn, cn, e, e <= 1e-8);
        out.guarded({kv("check", "ratio"), kv("d", dd), kv("p", mnp.p), kv("q", mnp.q),
                     kv("sigma", sigma), kv("sample", static_cast<double>(i))},
                    [&](auto& params) {
                      const double r = theorem1_ratio(sf, mnp);
                      const bool ok = std::isfinite(r) && (!hilbert || r <= bound + tol);
                      out.add(params, r, bound, r / bound, ok);
                    });
      }
    }
  }
}

void run_ball(const SweepConfig& c, RowSink& out) {
  const double tol = c.real("tol");
  const int J = c.integer("J"), N = c.integer("N"), n = c.integer("samples");
  const double sigma = c.real("sigma");
  for (double dd : c.list("d"))
    for (double mm : c.list("m")) {
      const int d = static_cast<int>(dd), m = static_cast<int>(mm);
      {
        const QuadratureRule gl = gauss_legendre_rule(64, 0.0, 1.0);
        double worst = 0.0;
        for (int j = 0; j <= 8; ++j)
          for (int a = j; a <= 8; ++a)
            for (int b = j; b <= 8; ++b) {
              double s = 0.0;
              for (std::size_t i = 0; i < gl.size(); ++i) {
                const double r = gl.nodes[i];
                s += gl.weights[i] * ball_weight(r, d, m) * std::pow(r, d) *
                     psi_ball(a, j, r, d, m) * psi_ball(b, j, r, d, m);
              }
              worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
            }
        out.add({kv("check", "orthonormal"), kv("d", dd), kv("m", mm)}, worst, 0.0, worst,
                worst <= tol);
      }
      std::vector<double> grid;
      for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);
      for (const auto& [nn, jj] : std::vector<std::pair<int, int>>{{3, 1}, {5, 0}, {4, 2}, {6, 1}}) {
        const double r1 = lambda_operator_check(nn, jj, d, m, grid, 2e-3);
        const double r2 = lambda_operator_check(nn, jj, d, m, grid, 1e-3);
        const double ratio = r1 / r2;
        out.add({kv("check", "operator"), kv("d", dd), kv("m", mm), kv("n", double(nn)),
                 kv("j", double(jj))},
                r2, r1, ratio, std::abs(ratio - 4.0) <= 0.4);
      }
      const double bound = std::pow(0.5 * (m + d), -sigma);
      const auto& ps = c.list("p");
      const auto& qs = c.list("q");
      for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        MixedNormParams mnp;
        mnp.space = SpaceTag::ball;
        mnp.d = d;
        mnp.m = m;
        mnp.p = ps[pi];
        mnp.q = qs[pi];
        mnp.sigma = sigma;
        const bool hilbert = mnp.p == 2.0 && mnp.q == 2.0;
        SplitMix64 rng(c.seed());
        for (int i = 0; i < n; ++i) {
          const int Ji = uniform_int(rng, 0, J), Ni = uniform_int(rng, 0, N);
          const BallFunction bf = BallFunction::random(d, m, Ji, Ni, rng);
          out.guarded({kv("check", "ratio"), kv("d", dd), kv("m", mm), kv("p", mnp.p),
                       kv("q", mnp.q), kv("sigma", sigma), kv("sample", static_cast<double>(i))},
                      [&](auto& params) {
                        const double r = theorem2_ratio(bf, mnp);
                        const bool ok = std::isfinite(r) && (!hilbert || r <= bound + 1e-9);
                        out.add(params, r, bound, r / bound, ok);
                      });
        }
      }
    }
}

void run_identities(const SweepConfig& c, RowSink& out) {
  const double tol = c.real("tol"), stencil_tol = c.real("stencil_tol");
  const int N = c.integer("N");
  for (double a : c.list("alpha"))
    for (double b : c.list("beta")) {
      const ParamPair pp(a, b);
      const QuadratureRule rule = gauss_jacobi_angle_rule(N + 8, a, b);
      const TrigJacobiBasis basis(pp, N);
      std::vector<double> gram(static_cast<std::size_t>((N + 1) * (N + 1)), 0.0);
      std::vector<double> P(static_cast<std::size_t>(N) + 1);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        basis.fill(rule.nodes[i], P.data());
        for (int r = 0; r <= N; ++r)
          for (int s = 0; s <= N; ++s) gram[r * (N + 1) + s] += rule.weights[i] * P[r] * P[s];
      }
      double worst = 0.0;
      for (int r = 0; r <= N; ++r)
        for (int s = 0; s <= N; ++s)
          worst = std::max(worst, std::abs(gram[r * (N + 1) + s] - (r == s ? 1.0 : 0.0)));
      out.add({kv("check", "orthonormal"), kv("alpha", a), kv("beta", b)}, worst, 0.0, worst,
              worst <= tol);
      for (int n = 0; n <= std::min(N, 6); ++n) {
        auto f = [&](double t) { return trig_jacobi(n, pp, t); };
        const double lhs = apply_operator_stencil(f, pp, 1.1, 1e-4);
        const double rhs = eigenvalue(n, pp) * f(1.1);
        const double e = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        out.add({kv("check", "eigenvalue"), kv("alpha", a), kv("beta", b), kv("n", double(n))},
                lhs, rhs, e, e <= stencil_tol);
      }
    }
  for (double lambda : {0.5, 1.0, 2.5})
    for (double z : {-0.6, 0.2, 0.9}) {
      const double e = gegenbauer_generating_check(lambda, 0.3, z, 80);
      out.add({kv("check", "generating"), kv("lambda", lambda), kv("z", z)}, e, 0.0, e, e <= tol);
    }
  for (int d = 2; d <= 5; ++d)
    for (int j = 0; j <= 10; ++j) {
      double expected = 1.0;
      if (j > 0) {
        expected = (2.0 * j + d - 2.0);
        for (int i = j + 1; i <= j + d - 3; ++i) expected *= i;
        for (int i = 2; i <= d - 2; ++i) expected /= i;
        if (d == 2) expected /= j;
      }
      const double got = harmonic_dimension(j, d);
      out.add({kv("check", "harmonic_dimension"), kv("d", double(d)), kv("j", double(j))}, got,
              expected, got - expected, got == expected);
    }
  {
    const int M = 64;
    double worst = 0.0;
    for (int j1 = 0; j1 <= 6; ++j1)
      for (int k1 = 1; k1 <= (j1 == 0 ? 1 : 2); ++k1)
        for (int j2 = 0; j2 <= 6; ++j2)
          for (int k2 = 1; k2 <= (j2 == 0 ? 1 : 2); ++k2) {
            double s = 0.0;
            for (int i = 0; i < M; ++i) {
              const double ph = 2.0 * kPi * i / M;
              s += circular_harmonic(j1, k1, ph) * circular_harmonic(j2, k2, ph);
            }
            s *= 2.0 * kPi / M;
            worst = std::max(worst, std::abs(s - ((j1 == j2 && k1 == k2) ? 1.0 : 0.0)));
          }
    out.add({kv("check", "circular_harmonics")}, worst, 0.0, worst, worst <= 1e-12);
  }
  for (int d : {2, 3}) {
    const QuadratureRule gl = gauss_legendre_rule(64, 0.0, kPi);
    double worst = 0.0;
    for (int j = 0; j <= 6; ++j)
      for (int a = j; a <= 10; ++a)
        for (int b = j; b <= 10; ++b) {
          double s = 0.0;
          for (std::size_t i = 0; i < gl.size(); ++i) {
            const double t = gl.nodes[i];
            s += gl.weights[i] * std::pow(std::sin(t), d - 1) * psi_radial(a, j, t, d) *
                 psi_radial(b, j, t, d);
          }
          worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    out.add({kv("check", "sphere_radial"), kv("d", double(d))}, worst, 0.0, worst, worst <= 1e-8);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

SweepConfig::SweepConfig(const std::string& suite) : suite_(suite) {
  const auto& defs = suite_defaults();
  const auto it = defs.find(suite);
  if (it == defs.end()) throw ConfigError("unknown suite '" + suite + "'");
  values_ = it->second;
}

const std::vector<std::string>& SweepConfig::suites() {
  static const std::vector<std::string> s = {"poisson-agree", "sharp-bound", "lemma22",
                                             "two-weight",    "theorem14",   "sphere-thm1",
                                             "ball-thm2",     "identities"};
  return s;
}

void SweepConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  if (key == "seed") {
    const std::string t = trim(value);
    std::size_t used = 0;
    unsigned long long s = 0;
    try {
      s = std::stoull(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size() || t[0] == '-')
      throw ConfigError("invalid seed '" + t + "'");
    seed_ = s;
    return;
  }
  if (key == "out") {
    output_ = trim(value);
    return;
  }
  if (key == "suite") {
    if (trim(value) != suite_) throw ConfigError("config names suite '" + trim(value) + "'");
    return;
  }
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end())
    throw ConfigError("unknown key '" + key + "'");
  std::vector<double> v;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) v.push_back(parse_real(key, item));
  values_[key] = std::move(v);
}

void SweepConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

bool SweepConfig::has(const std::string& key) const { return values_.count(key) != 0; }

const std::vector<double>& SweepConfig::list(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("suite '" + suite_ + "' has no key '" + key + "'");
  return it->second;
}

double SweepConfig::real(const std::string& key) const {
  const auto& v = list(key);
  if (v.size() != 1) throw ConfigError("key '" + key + "' needs exactly one value");
  return v.front();
}

int SweepConfig::integer(const std::string& key) const {
  const double v = real(key);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw ConfigError("key '" + key + "' needs an integer");
  return static_cast<int>(v);
}

namespace {

[[noreturn]] void regime(const std::string& key, double v, const std::string& why) {
  throw ConfigError("regime violation: " + key + "=" + format_real(v) + " " + why);
}

void each(const SweepConfig& c, const std::string& key, bool (*ok)(double), const char* why) {
  if (!c.has(key)) return;
  for (double v : c.list(key))
    if (!ok(v)) regime(key, v, why);
}

}  // namespace

void SweepConfig::validate() const {
  auto angle = [](double v) { return v > 0.0 && v < kPi; };
  auto unit = [](double v) { return v > 0.0 && v < 1.0; };
  auto positive = [](double v) { return v > 0.0; };
  auto nonneg_int = [](double v) { return v >= 0.0 && v == std::floor(v); };
  each(*this, "sigma", unit, "must lie in (0, 1)");
  each(*this, "theta", angle, "must lie in (0, pi)");
  each(*this, "phi", angle, "must lie in (0, pi)");
  each(*this, "tol", positive, "must be positive");
  each(*this, "stencil_tol", positive, "must be positive");
  for (const char* k : {"N", "J", "samples", "intervals", "generations", "nodes"}) {
    if (!has(k)) continue;
    if (list(k).size() != 1) throw ConfigError(std::string("key '") + k + "' needs one value");
    each(*this, k, nonneg_int, "must be a nonnegative integer");
  }
  if (suite_ == "poisson-agree") {
    each(*this, "alpha", [](double v) { return v >= -0.5; }, "must be at least -1/2");
    each(*this, "beta", [](double v) { return v >= -0.5; }, "must be at least -1/2");
    each(*this, "t", [](double v) { return v >= 0.05; }, "must be at least 0.05");
    if (integer("nodes") < 1) regime("nodes", 0, "must be positive");
  } else if (suite_ == "sharp-bound") {
    each(*this, "alpha", [](double v) { return v >= -0.5; }, "must be at least -1/2");
    each(*this, "beta", [](double v) { return v > -0.5; }, "must exceed -1/2");
    each(*this, "offsets", positive, "must be positive");
  } else if (suite_ == "two-weight") {
    if (integer("generations") < 1) regime("generations", 0, "must be positive");
  } else if (suite_ == "theorem14") {
    ExponentBox box;
    box.pp = ParamPair(real("alpha"), real("beta"));
    box.a = real("a");
    box.b = real("b");
    box.sigma = real("sigma");
    box.p = real("p");
    box.q = real("q");
    if (!box.pp.basic()) regime("alpha", box.pp.alpha, "and beta must exceed -1");
    if (box.a < 0.0) regime("a", box.a, "must be nonnegative");
    if (box.b < 0.0) regime("b", box.b, "must be nonnegative");
    if (!box.chu1()) regime("p", box.p, "with q=" + format_real(box.q) + " is outside the window");
    if (!box.chu2()) regime("q", box.q, "is too large for p and sigma");
    if (integer("J") < 1) regime("J", 0, "must be positive");
  } else if (suite_ == "sphere-thm1" || suite_ == "ball-thm2") {
    each(*this, "d", [](double v) { return v >= 2.0 && v == std::floor(v); },
         "must be an integer >= 2");
    each(*this, "m", [](double v) { return v >= 0.0 && v == std::floor(v); },
         "must be a nonnegative integer");
    if (list("p").size() != list("q").size())
      throw ConfigError("keys 'p' and 'q' must have the same length");
    const bool ball = suite_ == "ball-thm2";
    for (double d : list("d"))
      for (double m : ball ? list("m") : std::vector<double>{0.0})
        for (std::size_t i = 0; i < list("p").size(); ++i) {
          MixedNormParams mnp;
          mnp.space = ball ? SpaceTag::ball : SpaceTag::sphere;
          mnp.d = static_cast<int>(d);
          mnp.m = static_cast<int>(m);
          mnp.p = list("p")[i];
          mnp.q = list("q")[i];
          mnp.sigma = real("sigma");
          if (!mnp.window_ok())
            regime("p", mnp.p, "with q=" + format_real(mnp.q) + " is outside the window");
          if (!mnp.gap_ok()) regime("q", mnp.q, "is too large for p and sigma");
        }
  } else if (suite_ == "identities") {
    each(*this, "alpha", [](double v) { return v > -1.0; }, "must exceed -1");
    each(*this, "beta", [](double v) { return v > -1.0; }, "must exceed -1");
  }
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SweepReport run_suite(const SweepConfig& config) {
  SweepReport rep;
  for (const char* k : {"alpha", "beta", "t", "theta", "phi", "sigma", "p", "q", "d", "m"})
    if (config.has(k) && config.list(k).empty()) return rep;
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  RowSink sink(rep, config.suite());
  const std::string& s = config.suite();
  if (s == "poisson-agree")
    run_poisson(config, sink);
  else if (s == "sharp-bound")
    run_sharp_bound(config, sink);
  else if (s == "lemma22")
    run_lemma(config, sink);
  else if (s == "two-weight")
    run_two_weight(config, sink);
  else if (s == "theorem14")
    run_theorem14(config, sink);
  else if (s == "sphere-thm1")
    run_sphere(config, sink);
  else if (s == "ball-thm2")
    run_ball(config, sink);
  else
    run_identities(config, sink);
  for (const auto& r : rep.rows) {
    if (!r.pass) ++rep.failures;
    if (std::isfinite(r.ratio)) rep.max_ratio = std::max(rep.max_ratio, r.ratio);
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void write_csv(const SweepReport& report, std::ostream& os) {
  os << "suite,params,measured,reference,ratio,pass\n";
  for (const auto& r : report.rows) {
    os << r.suite << ',';
    for (std::size_t i = 0; i < r.params.size(); ++i) {
      if (i) os << ';';
      os << r.params[i].first << '=' << r.params[i].second;
    }
    os << ',' << format_real(r.measured) << ',' << format_real(r.reference) << ','
       << format_real(r.ratio) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

void emit_csv(const SweepReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(report, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace jfrac
