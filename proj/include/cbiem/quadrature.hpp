#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cbiem {

enum class RuleFamily { GaussLobatto, NewtonCotesClosed };

/// A basic closed quadrature rule on [a, b].
struct QuadratureRule {
  RuleFamily family = RuleFamily::GaussLobatto;
  int n = 0;
  double a = 0.0;
  double b = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  int degree = 0;

  /// The same rule carried affinely onto [lo, hi]; end nodes are set to the
  /// new endpoints exactly.
  QuadratureRule mapped(double lo, double hi) const;

  double integrate(const std::function<double(double)>& f) const;
};

/// Polynomial degree of an n-point closed rule of the given family.
int rule_degree(RuleFamily family, int n);

/// n-point Gauss-Lobatto rule on [a, b]. Rules on [0, 1] are computed once
/// per n (bordered Jacobi matrix eigenproblem) and mapped on demand.
QuadratureRule gauss_lobatto(int n, double a = 0.0, double b = 1.0);

/// Uncached Golub-Welsch style construction: eigen-decomposition of the
/// Legendre Jacobi matrix bordered so that +-1 become eigenvalues.
QuadratureRule gauss_lobatto_eigen(int n, double a = 0.0, double b = 1.0);

/// Independent construction: Newton iteration on the roots of P'_{n-1},
/// weights 2 / (n (n-1) P_{n-1}(x)^2).
QuadratureRule gauss_lobatto_newton(int n, double a = 0.0, double b = 1.0);

/// Closed Newton-Cotes rule on [0, 1] for 2 <= n <= 11, built from the
/// classical integer weight table.
QuadratureRule newton_cotes_closed(int n);

/// Error constant C(p) of the per-interval model e = C(p) h^(p+2) f^(p+1),
/// for an odd rule degree p:
///   C(p) = -(p+3)(p+5) [((p-1)/2)!]^4 / (4 (p+2) [(p+1)!]^3).
double error_constant(int p);

struct SelfTestLine {
  std::string label;
  bool passed = false;
  std::string detail;
};

/// Exactness, degree sharpness and cross-validation checks over n = 2..12.
std::vector<SelfTestLine> quadrature_selftest();

}  // namespace cbiem
