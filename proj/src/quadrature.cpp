#include "cbiem/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

#include <Eigen/Dense>

#include "cbiem/error.hpp"

namespace cbiem {
namespace {

constexpr int kNewtonIterations = 100;
constexpr double kNewtonTolerance = 1e-14;

// Rule on [-1, 1] -> rule on [a, b], with the end nodes pinned.
QuadratureRule from_reference(RuleFamily family, std::vector<double> x,
                              std::vector<double> w, double a, double b) {
  const int n = static_cast<int>(x.size());
  // Average mirror pairs so the rule is exactly symmetric.
  for (int i = 0; i < n / 2; ++i) {
    const int k = n - 1 - i;
    const double xs = 0.5 * (x[k] - x[i]);
    const double ws = 0.5 * (w[i] + w[k]);
    x[i] = -xs;
    x[k] = xs;
    w[i] = w[k] = ws;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  QuadratureRule rule;
  rule.family = family;
  rule.n = n;
  rule.a = a;
  rule.b = b;
  rule.degree = rule_degree(family, n);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = a + half * (x[i] + 1.0);
    rule.weights[i] = half * w[i];
  }
  rule.nodes.front() = a;
  rule.nodes.back() = b;
  return rule;
}

void check_interval(int n, double a, double b) {
  require(n >= 2, "Gauss-Lobatto rule needs n >= 2, got " + std::to_string(n));
  require(a < b, "quadrature interval must satisfy a < b");
}

QuadratureRule low_order(int n, double a, double b) {
  std::vector<double> x, w;
  if (n == 2) {
    x = {-1.0, 1.0};
    w = {1.0, 1.0};
  } else {
    x = {-1.0, 0.0, 1.0};
    w = {1.0 / 3, 4.0 / 3, 1.0 / 3};
  }
  return from_reference(RuleFamily::GaussLobatto, x, w, a, b);
}

struct LegendrePair {
  double p;       // P_m(x)
  double p_prev;  // P_{m-1}(x)
};

LegendrePair legendre(int m, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= m; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

}  // namespace

int rule_degree(RuleFamily family, int n) {
  if (family == RuleFamily::GaussLobatto) return 2 * n - 3;
  return (n % 2 == 1) ? n : n - 1;
}

QuadratureRule QuadratureRule::mapped(double lo, double hi) const {
  require(lo < hi, "quadrature interval must satisfy a < b");
  QuadratureRule out = *this;
  out.a = lo;
  out.b = hi;
  const double scale = (hi - lo) / (b - a);
  for (int i = 0; i < n; ++i) {
    out.nodes[i] = lo + (nodes[i] - a) * scale;
    out.weights[i] = weights[i] * scale;
  }
  out.nodes.front() = lo;
  out.nodes.back() = hi;
  return out;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

QuadratureRule gauss_lobatto_eigen(int n, double a, double b) {
  check_interval(n, a, b);
  if (n <= 3) return low_order(n, a, b);

  // Jacobi matrix of the Legendre recurrence (order n-1), then border it
  // with (alpha, beta) chosen so that -1 and +1 are eigenvalues.
  const int nn = n - 1;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nn, nn);
  for (int k = 1; k < nn; ++k) {
    const double off = k / std::sqrt((2.0 * k - 1.0) * (2.0 * k + 1.0));
    jac(k - 1, k) = off;
    jac(k, k - 1) = off;
  }
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(nn, nn);
  Eigen::VectorXd en = Eigen::VectorXd::Zero(nn);
  en(nn - 1) = 1.0;
  const Eigen::VectorXd gam = (jac + eye).partialPivLu().solve(en);
  const Eigen::VectorXd mu = (jac - eye).partialPivLu().solve(en);
  Eigen::Matrix2d border;
  border << 1.0, -gam(nn - 1), 1.0, -mu(nn - 1);
  const Eigen::Vector2d sol = border.partialPivLu().solve(Eigen::Vector2d(-1.0, 1.0));
  const double alpha = sol(0);
  if (!(sol(1) > 0.0)) {
    fail(ErrorKind::NumericalFailure, "Lobatto bordering produced beta^2 <= 0");
  }
  const double beta = std::sqrt(sol(1));

  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, n);
  full.topLeftCorner(nn, nn) = jac;
  full(nn - 1, nn) = beta;
  full(nn, nn - 1) = beta;
  full(nn, nn) = alpha;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(full);
  if (eig.info() != Eigen::Success) {
    fail(ErrorKind::NumericalFailure, "Lobatto eigensolve did not converge");
  }
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    w[i] = 2.0 * v0 * v0;
  }
  x.front() = -1.0;
  x.back() = 1.0;
  return from_reference(RuleFamily::GaussLobatto, std::move(x), std::move(w), a, b);
}

QuadratureRule gauss_lobatto_newton(int n, double a, double b) {
  check_interval(n, a, b);
  if (n <= 3) return low_order(n, a, b);

  const int m = n - 1;
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-Gauss-Lobatto points, ascending.
    double xi = -std::cos(M_PI * i / m);
    if (i > 0 && i < m) {
      bool converged = false;
      for (int it = 0; it < kNewtonIterations; ++it) {
        // Newton on (1 - x^2) P'_m(x), written through P_m and P_{m-1}.
        const auto [p, p_prev] = legendre(m, xi);
        const double dx = (xi * p - p_prev) / (n * p);
        xi -= dx;
        if (std::abs(dx) < kNewtonTolerance) {
          converged = true;
          break;
        }
      }
      if (!converged) {
        fail(ErrorKind::NumericalFailure,
             "Newton iteration for Lobatto node did not converge (n = " +
                 std::to_string(n) + ")");
      }
    }
    x[i] = xi;
    const double p = legendre(m, xi).p;
    w[i] = 2.0 / (m * n * p * p);
  }
  x.front() = -1.0;
  x.back() = 1.0;
  return from_reference(RuleFamily::GaussLobatto, std::move(x), std::move(w), a, b);
}

QuadratureRule gauss_lobatto(int n, double a, double b) {
  check_interval(n, a, b);
  static std::shared_mutex mutex;
  static std::map<int, QuadratureRule> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) {
      return (a == 0.0 && b == 1.0) ? it->second : it->second.mapped(a, b);
    }
  }
  QuadratureRule unit = gauss_lobatto_eigen(n, 0.0, 1.0);
  {
    std::unique_lock lock(mutex);
    cache.try_emplace(n, unit);
  }
  return (a == 0.0 && b == 1.0) ? unit : unit.mapped(a, b);
}

QuadratureRule newton_cotes_closed(int n) {
  require(n >= 2 && n <= 11,
          "closed Newton-Cotes rules are tabulated for 2 <= n <= 11, got " +
              std::to_string(n));
  // Integer weights per point count; symmetric, so only listed in full.
  static const std::array<std::vector<long>, 10> table = {{
      {1, 1},
      {1, 4, 1},
      {1, 3, 3, 1},
      {7, 32, 12, 32, 7},
      {19, 75, 50, 50, 75, 19},
      {41, 216, 27, 272, 27, 216, 41},
      {751, 3577, 1323, 2989, 2989, 1323, 3577, 751},
      {989, 5888, -928, 10496, -4540, 10496, -928, 5888, 989},
      {2857, 15741, 1080, 19344, 5778, 5778, 19344, 1080, 15741, 2857},
      {16067, 106300, -48525, 272400, -260550, 427368, -260550, 272400,
       -48525, 106300, 16067},
  }};
  static const std::array<std::vector<double>, 10> weights = [] {
    std::array<std::vector<double>, 10> out;
    for (std::size_t k = 0; k < table.size(); ++k) {
      const long total = std::accumulate(table[k].begin(), table[k].end(), 0L);
      for (long v : table[k]) out[k].push_back(static_cast<double>(v) / total);
    }
    return out;
  }();

  QuadratureRule rule;
  rule.family = RuleFamily::NewtonCotesClosed;
  rule.n = n;
  rule.a = 0.0;
  rule.b = 1.0;
  rule.degree = rule_degree(rule.family, n);
  rule.weights = weights[n - 2];
  rule.nodes.resize(n);
  for (int j = 0; j < n; ++j) rule.nodes[j] = static_cast<double>(j) / (n - 1);
  return rule;
}

double error_constant(int p) {
  require(p >= 1 && p % 2 == 1,
          "error constant needs an odd positive degree, got " + std::to_string(p));
  const double log_ratio =
      4.0 * std::lgamma(0.5 * (p - 1) + 1.0) - 3.0 * std::lgamma(p + 2.0);
  return -(p + 3.0) * (p + 5.0) / (4.0 * (p + 2.0)) * std::exp(log_ratio);
}

std::vector<SelfTestLine> quadrature_selftest() {
  std::vector<SelfTestLine> lines;
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
  };

  for (int n = 2; n <= 12; ++n) {
    const QuadratureRule rule = gauss_lobatto(n, 0.0, 1.0);
    double worst = 0.0;
    for (int j = 0; j <= 2 * n - 3; ++j) {
      const double approx = rule.integrate([j](double x) { return std::pow(x, j); });
      worst = std::max(worst, std::abs(approx * (j + 1) - 1.0));
    }
    const int j = 2 * n - 2;
    const QuadratureRule sym = gauss_lobatto(n, -1.0, 1.0);
    const double miss =
        std::abs(sym.integrate([j](double x) { return std::pow(x, j); }) * (j + 1) / 2.0 - 1.0);
    const bool positive = std::all_of(rule.weights.begin(), rule.weights.end(),
                                      [](double w) { return w > 0.0; });
    const QuadratureRule alt = gauss_lobatto_newton(n, 0.0, 1.0);
    double agree = 0.0;
    for (int i = 0; i < n; ++i) {
      agree = std::max({agree, std::abs(rule.nodes[i] - alt.nodes[i]),
                        std::abs(rule.weights[i] - alt.weights[i])});
    }
    lines.push_back({"lobatto n=" + std::to_string(n) + " exact to degree " +
                         std::to_string(2 * n - 3),
                     worst <= 1e-12, "max rel err " + fmt(worst)});
    lines.push_back({"lobatto n=" + std::to_string(n) + " misses x^" +
                         std::to_string(j) + " on [-1,1]",
                     miss > 1e-6, "rel miss " + fmt(miss)});
    lines.push_back({"lobatto n=" + std::to_string(n) + " positive weights", positive, ""});
    lines.push_back({"lobatto n=" + std::to_string(n) + " eigen vs newton",
                     agree <= 1e-12, "max diff " + fmt(agree)});
  }
  for (int n = 2; n <= 11; ++n) {
    const QuadratureRule rule = newton_cotes_closed(n);
    double worst = 0.0;
    for (int j = 0; j <= rule.degree; ++j) {
      const double approx = rule.integrate([j](double x) { return std::pow(x, j); });
      worst = std::max(worst, std::abs(approx * (j + 1) - 1.0));
    }
    lines.push_back({"newton-cotes n=" + std::to_string(n) + " exact to degree " +
                         std::to_string(rule.degree),
                     worst <= 1e-12, "max rel err " + fmt(worst)});
  }
  return lines;
}

}  // namespace cbiem
