#include "cbiem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbiem/error.hpp"

namespace cbiem {
namespace {

void check_order(int segment_size, int order) {
  require(order >= 2 && order % 2 == 0,
          "interpolation order must be even and >= 2, got " + std::to_string(order));
  require(order <= segment_size - 1,
          "interpolation order " + std::to_string(order) +
              " exceeds the segment's " + std::to_string(segment_size - 1) +
              " nodes");
}

// Lagrange weights for row `row` of `tables`, written into `out`.
void lagrange_row(const InterpolationTables& tables, const Discretization& disc,
                  int row, std::vector<double>& out) {
  const int o = tables.order;
  const int n = tables.n;
  const int half = o / 2;
  // Node N stands in for the corner at t = 0 in the first rows.
  auto param = [&](int c) {
    const int idx = tables.index(row, c);
    return (row < half && idx == n) ? 0.0 : disc.t_nodes[idx - 1];
  };
  const double t_row = disc.t_nodes[row];
  const double shift = disc.half_gap[row];
  out.assign(o, 1.0);
  for (int c = 0; c < o; ++c) {
    const double tc = param(c);
    for (int v = 0; v < o; ++v) {
      if (v == c) continue;
      const double tv = param(v);
      out[c] *= ((t_row - tv) - shift) / (tc - tv);
    }
  }
}

}  // namespace

InterpolationTables build_stencils(int n, int segments, int segment_size, int order) {
  require(segments >= 1, "need at least one segment");
  require(segment_size >= 3, "segment needs at least three nodes");
  require(n == segments * (segment_size - 1),
          "node count " + std::to_string(n) + " does not equal segments * (S - 1)");
  check_order(segment_size, order);
  const int ns = segment_size - 1;
  const int half = order / 2;

  InterpolationTables t;
  t.order = order;
  t.n = n;
  t.segments = segments;
  t.segment_size = segment_size;
  t.f.resize(static_cast<std::size_t>(n) * order);
  for (int s = 0; s < segments; ++s) {
    for (int r = 0; r < ns; ++r) {
      int first;
      if (r < half) {
        first = 0;
      } else if (r >= ns - half) {
        first = ns - order + 1;
      } else {
        first = r - half + 1;
      }
      for (int c = 0; c < order; ++c) {
        t.f[(s * ns + r) * order + c] = first + c + s * ns;
      }
    }
  }
  for (int r = 0; r < half; ++r) t.f[r * order] = n;
  return t;
}

InterpolationTables build_interp_tables(const Discretization& disc, int segment_size,
                                        int order) {
  InterpolationTables t = build_stencils(disc.size(), disc.segments, segment_size, order);
  t.l.resize(t.f.size());
  std::vector<double> row;
  for (int r = 0; r < t.n; ++r) {
    lagrange_row(t, disc, r, row);
    std::copy(row.begin(), row.end(), t.l.begin() + static_cast<long>(r) * order);
  }
  return t;
}

InterpolationTables build_graded_interp_tables(const Discretization& disc,
                                               int segment_size,
                                               std::span<const int> orders) {
  require(!orders.empty(), "graded interpolation needs at least one order");
  const int widest = *std::max_element(orders.begin(), orders.end());
  std::vector<InterpolationTables> per_order;
  for (int o : orders) per_order.push_back(build_interp_tables(disc, segment_size, o));

  InterpolationTables t;
  t.order = widest;
  t.n = disc.size();
  t.segments = disc.segments;
  t.segment_size = segment_size;
  t.f.resize(static_cast<std::size_t>(t.n) * widest);
  t.l.resize(t.f.size(), 0.0);
  const int last = static_cast<int>(orders.size()) - 1;
  for (int r = 0; r < t.n; ++r) {
    const int pick = std::min(disc.origin[r].from_corner, last);
    const InterpolationTables& src = per_order[pick];
    for (int c = 0; c < widest; ++c) {
      // Narrower stencils are padded with zero weights on their first node.
      const int sc = c < src.order ? c : 0;
      t.f[r * widest + c] = src.index(r, sc);
      t.l[r * widest + c] = c < src.order ? src.weight(r, sc) : 0.0;
    }
  }
  return t;
}

CauchyMatrix assemble_a(const Discretization& disc) {
  const int n = disc.size();
  CauchyMatrix m;
  m.a.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      m.a(k, j) = disc.weights[j] / (disc.nodes[j] - disc.coll[k]);
    }
  }
  m.h = m.a.rowwise().sum();
  if (!m.a.allFinite()) {
    fail(ErrorKind::GeometryDegenerate, "collocation point coincides with a node");
  }
  return m;
}

Eigen::MatrixXcd assemble_b(const InterpolationTables& tables, const Eigen::VectorXcd& h) {
  require(h.size() == tables.n, "row-sum vector has the wrong length");
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(tables.n, tables.n);
  for (int r = 0; r < tables.n; ++r) {
    for (int c = 0; c < tables.order; ++c) {
      b(r, tables.index(r, c) - 1) += h(r) * tables.weight(r, c);
    }
  }
  return b;
}

ReducedSystem assemble_and_reduce(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                  std::span<const double> u_nodes,
                                  std::span<const double> u_coll, RealSplit split) {
  const int n = static_cast<int>(a.rows());
  require(n >= 2 && a.cols() == n && b.rows() == n && b.cols() == n,
          "system matrices must be square and of equal size");
  require(static_cast<int>(u_nodes.size()) == n && static_cast<int>(u_coll.size()) == n,
          "boundary data length does not match the system");

  const Eigen::MatrixXcd c = b - a;
  // d_k = sum_j a_kj (U'_k - U_j), so constant data gives exactly zero.
  Eigen::VectorXcd d(n);
  for (int k = 0; k < n; ++k) {
    cplx sum = 0.0;
    for (int j = 0; j < n; ++j) sum += a(k, j) * (u_coll[k] - u_nodes[j]);
    d(k) = sum;
  }

  ReducedSystem sys;
  if (split == RealSplit::RealPart) {
    sys.c_full = c.real();
    sys.d_full = -d.imag();
  } else {
    sys.c_full = c.imag();
    sys.d_full = d.real();
  }
  const int m = n - 1;
  sys.c = sys.c_full.bottomLeftCorner(m, m) - sys.c_full.topLeftCorner(m, m);
  sys.d = sys.d_full.tail(m) - sys.d_full.head(m);
  sys.last_col = sys.c_full.col(m).tail(m) - sys.c_full.col(m).head(m);
  return sys;
}

LinearSolve solve_reduced(const ReducedSystem& sys, double normalization) {
  const long m = sys.c.rows();
  if (!sys.c.allFinite() || !sys.d.allFinite()) {
    fail(ErrorKind::NumericalFailure, "system contains non-finite entries");
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.c);
  const Eigen::MatrixXd& packed = lu.matrixLU();
  for (long i = 0; i < m; ++i) {
    if (packed(i, i) == 0.0) {
      fail(ErrorKind::NumericalFailure, "reduced system is singular");
    }
  }
  LinearSolve out;
  const double rcond = lu.rcond();
  out.condition = rcond > 0.0 ? 1.0 / rcond : INFINITY;
  const Eigen::VectorXd rhs = sys.d - sys.last_col * normalization;
  const Eigen::VectorXd v = lu.solve(rhs);
  if (!v.allFinite()) {
    fail(ErrorKind::NumericalFailure, "solution contains non-finite entries");
  }
  out.v.resize(m + 1);
  out.v.head(m) = v;
  out.v(m) = normalization;
  return out;
}

double error_norm(std::span<const double> v_true, std::span<const double> v_hat,
                  std::span<const double> weights, NormKind kind) {
  require(v_true.size() == v_hat.size(), "error vectors differ in length");
  double acc = 0.0;
  for (std::size_t j = 0; j < v_true.size(); ++j) {
    const double e = v_true[j] - v_hat[j];
    switch (kind) {
      case NormKind::Weighted2:
        require(weights.size() == v_true.size(), "weights differ in length");
        acc += weights[j] * e * e;
        break;
      case NormKind::Unweighted2:
        acc += e * e;
        break;
      case NormKind::Inf:
        acc = std::max(acc, std::abs(e));
        break;
    }
  }
  return kind == NormKind::Inf ? acc : std::sqrt(acc);
}

cplx PowerProblem::w(cplx z) const {
  if (z == cplx(0.0, 0.0)) return alpha > 0.0 ? cplx(0.0, 0.0) : cplx(NAN, NAN);
  return std::pow(z, alpha);
}

BoundaryData BoundaryData::power(double alpha) {
  const PowerProblem p{alpha};
  BoundaryData d;
  d.u = [p](double, cplx z) { return p.w(z).real(); };
  d.v_exact = [p](double, cplx z) { return p.w(z).imag(); };
  return d;
}

BoundaryData BoundaryData::constant(double c) {
  BoundaryData d;
  d.u = [c](double, cplx) { return c; };
  d.v_exact = [](double, cplx) { return 0.0; };
  return d;
}

std::vector<double> BoundarySolution::abs_weights() const {
  std::vector<double> out(disc.weights.size());
  std::transform(disc.weights.begin(), disc.weights.end(), out.begin(),
                 [](cplx w) { return std::abs(w); });
  return out;
}

double BoundarySolution::error(NormKind kind) const {
  require(!v_true.empty(), "exact boundary values are not known for this problem");
  return error_norm(v_true, v_hat, abs_weights(), kind);
}

std::vector<double> BoundarySolution::error_vector() const {
  require(!v_true.empty(), "exact boundary values are not known for this problem");
  std::vector<double> e(v_hat.size());
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = v_true[j] - v_hat[j];
  return e;
}

BoundarySolution solve_boundary(const Contour& contour, const SolveOptions& options,
                                const BoundaryData& data) {
  require(static_cast<bool>(data.u), "boundary data has no U");
  const CompositeRule rule =
      contour_rule(options.depth, options.sigma, contour.corner_count());
  const int segment_size = rule.size() / rule.segments + 1;

  BoundarySolution sol;
  sol.disc = discretize(contour, rule);
  sol.segment_size = segment_size;
  const Discretization& disc = sol.disc;
  const int n = disc.size();

  InterpolationTables tables =
      options.graded_orders.empty()
          ? build_interp_tables(disc, segment_size, options.order)
          : build_graded_interp_tables(disc, segment_size, options.graded_orders);
  sol.order = tables.order;

  std::vector<double> u_coll(n);
  sol.u.resize(n);
  for (int k = 0; k < n; ++k) {
    sol.u[k] = data.u(disc.t_nodes[k], disc.nodes[k]);
    u_coll[k] = data.u(disc.t_coll[k], disc.coll[k]);
  }
  if (data.v_exact) {
    sol.v_true.resize(n);
    for (int k = 0; k < n; ++k) sol.v_true[k] = data.v_exact(disc.t_nodes[k], disc.nodes[k]);
  }

  const CauchyMatrix cm = assemble_a(disc);
  const Eigen::MatrixXcd b = assemble_b(tables, cm.h);
  const ReducedSystem sys = assemble_and_reduce(cm.a, b, sol.u, u_coll, options.split);
  const double norm_value = options.normalization.value_or(
      sol.v_true.empty() ? 0.0 : sol.v_true.back());
  const LinearSolve ls = solve_reduced(sys, norm_value);

  sol.condition = ls.condition;
  sol.ill_conditioned = !(ls.condition <= options.condition_warning);
  sol.v_hat.assign(ls.v.data(), ls.v.data() + n);
  sol.w_hat.resize(n);
  for (int k = 0; k < n; ++k) sol.w_hat[k] = cplx(sol.u[k], sol.v_hat[k]);
  return sol;
}

}  // namespace cbiem
