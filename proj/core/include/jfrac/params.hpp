#pragma once

namespace jfrac {

// Jacobi type parameters.
struct ParamPair {
  double alpha = 0.0;
  double beta = 0.0;

  ParamPair() = default;
  ParamPair(double a, double b) : alpha(a), beta(b) {}

  bool basic() const { return alpha > -1.0 && beta > -1.0; }
  bool theorem13() const { return alpha >= -0.5 && beta > -0.5; }
  // alpha + beta + 1
  double rho() const { return alpha + beta + 1.0; }

  // Throws DomainError unless alpha, beta > -1.
  void require_basic() const;
  void require_theorem13() const;
};

inline bool operator==(const ParamPair& a, const ParamPair& b) {
  return a.alpha == b.alpha && a.beta == b.beta;
}

}  // namespace jfrac
