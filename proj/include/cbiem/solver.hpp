#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cbiem/contour.hpp"

namespace cbiem {

/// Interpolation stencils for V at the collocation points: row k lists the
/// O node indices F(k, .) (1-based, node N standing in for the corner at
/// t = 0) and the Lagrange weights L(k, .) evaluated in parameter space.
struct InterpolationTables {
  int order = 2;  // O
  int n = 0;      // N
  int segments = 1;
  int segment_size = 0;  // S
  std::vector<int> f;     // N x O, row-major, 1-based node indices
  std::vector<double> l;  // N x O, row-major

  int index(int row, int col) const { return f[row * order + col]; }
  double weight(int row, int col) const { return l[row * order + col]; }
};

/// Index table F only. Requires O even, 2 <= O <= S - 1 and N = NC (S - 1).
InterpolationTables build_stencils(int n, int segments, int segment_size,
                                   int order);

/// F and L for a discretization with `segments` equal segments of S nodes.
InterpolationTables build_interp_tables(const Discretization& disc,
                                        int segment_size, int order);

/// Rows are taken from the table for the order assigned to each row's mesh
/// interval; `orders[i]` applies at distance i from the nearest corner, the
/// last entry repeating inward.
InterpolationTables build_graded_interp_tables(const Discretization& disc,
                                               int segment_size,
                                               std::span<const int> orders);

struct CauchyMatrix {
  Eigen::MatrixXcd a;  // a(k, j) = w_j / (zeta_j - zeta_{k-1/2})
  Eigen::VectorXcd h;  // row sums of a
};

CauchyMatrix assemble_a(const Discretization& disc);

/// B(k, F(k, c)) = H_k L(k, c).
Eigen::MatrixXcd assemble_b(const InterpolationTables& tables,
                            const Eigen::VectorXcd& h);

enum class RealSplit {
  RealPart,  // Re(C) V = -Im(d)
  ImagPart,  // Im(C) V = Re(d)
};

struct ReducedSystem {
  Eigen::MatrixXd c_full;    // real N x N system before reduction
  Eigen::VectorXd d_full;
  Eigen::MatrixXd c;         // (N-1) x (N-1): consecutive rows differenced
  Eigen::VectorXd d;
  Eigen::VectorXd last_col;  // differenced column N, for the normalisation
};

/// C = B - A, d = diag(A 1) U' - A U, real split, then row differencing
/// with column N dropped.
ReducedSystem assemble_and_reduce(const Eigen::MatrixXcd& a,
                                  const Eigen::MatrixXcd& b,
                                  std::span<const double> u_nodes,
                                  std::span<const double> u_coll,
                                  RealSplit split = RealSplit::RealPart);

struct LinearSolve {
  Eigen::VectorXd v;  // full length N, v(N-1) = normalisation
  double condition = 0.0;
};

/// Dense LU with partial pivoting on the reduced system.
LinearSolve solve_reduced(const ReducedSystem& sys, double normalization);

enum class NormKind { Weighted2, Unweighted2, Inf };

double error_norm(std::span<const double> v_true,
                  std::span<const double> v_hat,
                  std::span<const double> weights, NormKind kind);

/// Boundary data U = Re W for a test problem W(z) = z^alpha (principal
/// branch), with V = Im W known for error reporting.
struct PowerProblem {
  double alpha = 0.5;
  cplx w(cplx z) const;
};

struct BoundaryData {
  /// U at a boundary point; receives the parameter t and the point gamma(t).
  std::function<double(double, cplx)> u;
  /// Exact V when known (test problems).
  std::function<double(double, cplx)> v_exact;

  static BoundaryData power(double alpha);
  static BoundaryData constant(double c);
};

struct SolveOptions {
  int depth = 9;        // D
  double sigma = 0.10;
  int order = 6;        // O
  std::vector<int> graded_orders;  // experimental; overrides `order`
  RealSplit split = RealSplit::RealPart;
  /// Value of V at the last node. Unset: exact V there for test problems,
  /// 0 otherwise.
  std::optional<double> normalization;
  double condition_warning = 1e12;
};

struct BoundarySolution {
  Discretization disc;
  std::vector<double> u;       // boundary data at nodes
  std::vector<double> v_hat;
  std::vector<cplx> w_hat;     // U + i V_hat
  std::vector<double> v_true;  // empty unless exact V is known
  double condition = 0.0;
  bool ill_conditioned = false;
  int order = 0;
  int segment_size = 0;

  int size() const { return static_cast<int>(v_hat.size()); }
  std::vector<double> abs_weights() const;
  /// Requires v_true.
  double error(NormKind kind) const;
  std::vector<double> error_vector() const;
};

BoundarySolution solve_boundary(const Contour& contour,
                                const SolveOptions& options,
                                const BoundaryData& data);

}  // namespace cbiem
