#pragma once

#include <deque>
#include <mutex>
#include <vector>

#include "jfrac/params.hpp"
#include "jfrac/special_functions.hpp"

namespace jfrac {

double z_coord(double u, double v, double theta, double phi);

// Smallest truncation used by poisson_series when none is given.
int poisson_series_truncation(double t, ParamPair pp);

// Spectral series; N = 0 picks the truncation automatically. Throws
// TruncationError for t < 0.05 or an explicit N with exp(-tN) >= 1e-14.
double poisson_series(double t, double theta, double phi, ParamPair pp, int N = 0);

// Closed double-integral form over the product of the two Pi measures.
// Nodes per axis start at n_uv and double until successive values agree to
// rel_tol or max_nodes is reached.
class PoissonClosedForm {
 public:
  explicit PoissonClosedForm(ParamPair pp, int n_uv = 64, int max_nodes = 1024,
                             double rel_tol = 1e-12);

  double operator()(double t, double theta, double phi) const;
  const ParamPair& params() const { return pp_; }

 private:
  struct Level {
    QuadratureRule u, v;
    std::vector<double> u_comp, v_comp;  // 1 - node
  };
  double eval_level(const Level& lv, double t, double theta, double phi) const;
  const Level& level(std::size_t i) const;

  ParamPair pp_;
  int n_uv_;
  int max_nodes_;
  double rel_tol_;
  double log_prefactor_;
  mutable std::deque<Level> levels_;
  mutable std::mutex mu_;
};

double poisson_closed_form(double t, double theta, double phi, ParamPair pp, int n_uv = 64);

// |P_n(theta) P_n(phi) - product-formula integral|, alpha, beta > -1/2.
double product_formula_check(int n, ParamPair pp, double theta, double phi);

double gegenbauer_generating_check(double lambda, double r, double z, int N);

}  // namespace jfrac
