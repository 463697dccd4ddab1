#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "cbiem/error.hpp"
#include "cbiem/solver.hpp"

using namespace cbiem;

namespace {

Contour circle(int corners = 4) {
  ContourOptions o;
  o.circle_corners = corners;
  return make_contour(ContourKind::UnitCircle, o);
}

Discretization disc_for(const Contour& c, int depth, double sigma) {
  return discretize(c, contour_rule(depth, sigma, c.corner_count()));
}

}  // namespace

TEST_CASE("stencil table for three segments of ten nodes") {
  // Rows as printed for N = 27, S = 10, O = 6 (1-based node indices).
  const std::vector<std::vector<int>> expected = {
      {27, 1, 2, 3, 4, 5},       {27, 1, 2, 3, 4, 5},       {27, 1, 2, 3, 4, 5},
      {1, 2, 3, 4, 5, 6},        {2, 3, 4, 5, 6, 7},        {3, 4, 5, 6, 7, 8},
      {4, 5, 6, 7, 8, 9},        {4, 5, 6, 7, 8, 9},        {4, 5, 6, 7, 8, 9},
      {9, 10, 11, 12, 13, 14},   {9, 10, 11, 12, 13, 14},   {9, 10, 11, 12, 13, 14},
      {10, 11, 12, 13, 14, 15},  {11, 12, 13, 14, 15, 16},  {12, 13, 14, 15, 16, 17},
      {13, 14, 15, 16, 17, 18},  {13, 14, 15, 16, 17, 18},  {13, 14, 15, 16, 17, 18},
      {18, 19, 20, 21, 22, 23},  {18, 19, 20, 21, 22, 23},  {18, 19, 20, 21, 22, 23},
      {19, 20, 21, 22, 23, 24},  {20, 21, 22, 23, 24, 25},  {21, 22, 23, 24, 25, 26},
      {22, 23, 24, 25, 26, 27},  {22, 23, 24, 25, 26, 27},  {22, 23, 24, 25, 26, 27},
  };
  const InterpolationTables t = build_stencils(27, 3, 10, 6);
  for (int r = 0; r < 27; ++r) {
    for (int c = 0; c < 6; ++c) {
      CAPTURE(r);
      CAPTURE(c);
      CHECK(t.index(r, c) == expected[r][c]);
    }
  }
}

TEST_CASE("stencil preconditions") {
  CHECK_THROWS_AS(build_stencils(27, 3, 10, 5), Error);
  CHECK_THROWS_AS(build_stencils(27, 3, 10, 10), Error);
  CHECK_THROWS_AS(build_stencils(26, 3, 10, 6), Error);
  CHECK_NOTHROW(build_stencils(27, 3, 10, 8));
}

TEST_CASE("B nonzero pattern for three segments of ten nodes") {
  const std::vector<std::string> pattern = {
      "xxxxx.....................x", "xxxxx.....................x", "xxxxx.....................x",
      "xxxxxx.....................", ".xxxxxx....................", "..xxxxxx...................",
      "...xxxxxx..................", "...xxxxxx..................", "...xxxxxx..................",
      "........xxxxxx.............", "........xxxxxx.............", "........xxxxxx.............",
      ".........xxxxxx............", "..........xxxxxx...........", "...........xxxxxx..........",
      "............xxxxxx.........", "............xxxxxx.........", "............xxxxxx.........",
      ".................xxxxxx....", ".................xxxxxx....", ".................xxxxxx....",
      "..................xxxxxx...", "...................xxxxxx..", "....................xxxxxx.",
      ".....................xxxxxx", ".....................xxxxxx", ".....................xxxxxx",
  };
  const Contour c = circle(3);
  const Discretization d = disc_for(c, 2, 0.15);
  REQUIRE(d.size() == 27);
  const InterpolationTables t = build_interp_tables(d, 10, 6);
  const CauchyMatrix cm = assemble_a(d);
  const Eigen::MatrixXcd b = assemble_b(t, cm.h);
  for (int r = 0; r < 27; ++r) {
    for (int col = 0; col < 27; ++col) {
      CAPTURE(r);
      CAPTURE(col);
      CHECK((b(r, col) != cplx(0.0, 0.0)) == (pattern[r][col] == 'x'));
    }
    CHECK(std::abs(b.row(r).sum() - cm.h(r)) <= 1e-12 * std::abs(cm.h(r)));
  }
}

TEST_CASE("order two reproduces the bidiagonal construction") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  const Discretization d = disc_for(tear, 4, 0.15);
  const int n = d.size();
  const InterpolationTables t = build_interp_tables(d, n + 1, 2);
  for (int r = 0; r < n; ++r) {
    CHECK(t.weight(r, 0) == 0.5);
    CHECK(t.weight(r, 1) == 0.5);
  }
  const CauchyMatrix cm = assemble_a(d);
  const Eigen::MatrixXcd b = assemble_b(t, cm.h);
  Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(n, n);
  direct(0, n - 1) = 0.5 * cm.h(0);
  direct(0, 0) = 0.5 * cm.h(0);
  for (int k = 1; k < n; ++k) {
    direct(k, k - 1) = 0.5 * cm.h(k);
    direct(k, k) = 0.5 * cm.h(k);
  }
  CHECK((b - direct).cwiseAbs().maxCoeff() <= 1e-14 * cm.h.cwiseAbs().maxCoeff());
}

TEST_CASE("Lagrange rows reproduce polynomials in t") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  const Discretization d = disc_for(tear, 5, 0.15);
  for (int o : {2, 4, 6, 8}) {
    const InterpolationTables t = build_interp_tables(d, (5 + 1) * (5 + 1) + 1, o);
    for (int r = 0; r < d.size(); ++r) {
      double sum = 0.0, first = 0.0;
      for (int c = 0; c < o; ++c) {
        const int idx = t.index(r, c);
        const double tp = (r < o / 2 && idx == d.size()) ? 0.0 : d.t_nodes[idx - 1];
        sum += t.weight(r, c);
        first += t.weight(r, c) * tp;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(first == doctest::Approx(d.t_coll[r]).epsilon(1e-10));
    }
  }
}

TEST_CASE("row sums approximate the boundary Cauchy value") {
  // Equally spaced nodes put every collocation point midway between its
  // neighbours, so the row sum is a symmetric principal value.
  const Contour c = circle();
  const CompositeRule seg = compose_hp_rule(uniform_mesh(10), std::vector<int>(10, 2), false);
  const CompositeRule rule =
      replicate_over_segments(std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}, seg, true);
  const CauchyMatrix cm = assemble_a(discretize(c, rule));
  for (int k = 0; k < rule.size(); ++k) CHECK(std::abs(cm.h(k) - cplx(0.0, M_PI)) <= 1e-12);
}

TEST_CASE("Cauchy matrix residual on the circle") {
  const Contour c = circle();
  const Discretization d = disc_for(c, 8, 0.15);
  const CauchyMatrix cm = assemble_a(d);
  for (int k = 0; k < d.size(); ++k) {
    cplx residual = 0.0;
    for (int j = 0; j < d.size(); ++j) residual += (d.nodes[j] - d.coll[k]) * cm.a(k, j);
    CHECK(std::abs(residual) <= 1e-8);
  }
}

TEST_CASE("constant data gives zero conjugate") {
  for (ContourKind kind : {ContourKind::UnitCircle, ContourKind::Teardrop, ContourKind::Cardioid,
                           ContourKind::WideTeardrop}) {
    const Contour c = make_contour(kind);
    SolveOptions o;
    o.depth = 5;
    o.sigma = 0.15;
    o.order = 4;
    const BoundarySolution s = solve_boundary(c, o, BoundaryData::constant(2.5));
    for (double v : s.v_hat) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("reduced system shape") {
  const Contour c = circle(3);
  const Discretization d = disc_for(c, 2, 0.15);
  const CauchyMatrix cm = assemble_a(d);
  const Eigen::MatrixXcd b = assemble_b(build_interp_tables(d, 10, 4), cm.h);
  std::vector<double> u(27, 1.0);
  const ReducedSystem sys = assemble_and_reduce(cm.a, b, u, u);
  CHECK(sys.c.rows() == 26);
  CHECK(sys.c.cols() == 26);
  CHECK(sys.d.size() == 26);
  CHECK(sys.d.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(assemble_and_reduce(cm.a, b, std::vector<double>(26), u), Error);
}

TEST_CASE("imaginary split is degenerate after row differencing") {
  // On the circle Im(A) has identical rows up to the interpolated diagonal,
  // so differencing leaves a two-step difference operator with an
  // alternating null mode. The real split stays well conditioned.
  const Contour c = circle();
  SolveOptions o;
  o.depth = 6;
  o.sigma = 0.2;
  o.order = 6;
  const BoundarySolution re = solve_boundary(c, o, BoundaryData::power(2.0));
  CHECK_FALSE(re.ill_conditioned);
  CHECK(re.error(NormKind::Inf) < 1e-6);
  o.split = RealSplit::ImagPart;
  const BoundarySolution im = solve_boundary(c, o, BoundaryData::power(2.0));
  CHECK(im.ill_conditioned);
  CHECK(im.condition > 1e12);
}

TEST_CASE("normalisation shifts the solution by a constant") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  SolveOptions o;
  o.depth = 6;
  o.normalization = 0.0;
  const BoundarySolution a = solve_boundary(tear, o, BoundaryData::power(0.5));
  o.normalization = 1.75;
  const BoundarySolution b = solve_boundary(tear, o, BoundaryData::power(0.5));
  for (int k = 0; k < a.size(); ++k) CHECK(std::abs(b.v_hat[k] - a.v_hat[k] - 1.75) <= 1e-10);
}

TEST_CASE("smooth problem on the circle converges") {
  const Contour c = circle();
  SolveOptions o;
  o.depth = 8;
  o.sigma = 0.2;
  o.order = 8;
  const BoundarySolution s = solve_boundary(c, o, BoundaryData::power(2.0));
  CHECK(s.error(NormKind::Inf) < 1e-8);
  CHECK_FALSE(s.ill_conditioned);
}

TEST_CASE("teardrop anchors") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  SolveOptions o;
  const BoundarySolution half = solve_boundary(tear, o, BoundaryData::power(0.5));
  CHECK(half.size() == 100);
  CHECK(half.error(NormKind::Unweighted2) == doctest::Approx(2.4158e-5).epsilon(1e-3));

  o.sigma = 0.28;
  o.order = 16;
  const BoundarySolution sq = solve_boundary(tear, o, BoundaryData::power(2.0));
  CHECK(sq.error(NormKind::Weighted2) <= 1e-10);
  CHECK(sq.error(NormKind::Unweighted2) <= 1e-10);
}

TEST_CASE("orientation does not change the error") {
  SolveOptions o;
  o.depth = 6;
  const BoundarySolution a =
      solve_boundary(make_contour(ContourKind::Teardrop), o, BoundaryData::power(0.5));
  ContourOptions ref;
  ref.orientation = Orientation::Reference;
  const BoundarySolution b =
      solve_boundary(make_contour(ContourKind::Teardrop, ref), o, BoundaryData::power(0.5));
  CHECK(a.error(NormKind::Weighted2) == doctest::Approx(b.error(NormKind::Weighted2)).epsilon(1e-8));
}

TEST_CASE("graded orders splice rows") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  SolveOptions o;
  o.graded_orders = {6, 2, 2, 6, 6, 6, 10};
  const BoundarySolution s = solve_boundary(tear, o, BoundaryData::power(0.5));
  CHECK(s.order == 10);
  CHECK(std::isfinite(s.error(NormKind::Weighted2)));
  CHECK(s.error(NormKind::Weighted2) < 1e-3);
}

TEST_CASE("error norms") {
  const std::vector<double> zero(3, 0.0), w = {1.0, 2.0, 3.0};
  for (NormKind k : {NormKind::Weighted2, NormKind::Unweighted2, NormKind::Inf}) {
    CHECK(error_norm(zero, zero, w, k) == 0.0);
    CHECK(error_norm(std::vector<double>{0.5}, std::vector<double>{0.0}, std::vector<double>{1.0}, k) ==
          doctest::Approx(0.5));
  }
  const std::vector<double> v = {1.0, -2.0, 2.0};
  CHECK(error_norm(v, zero, w, NormKind::Weighted2) == doctest::Approx(std::sqrt(1 + 8 + 12)));
  CHECK(error_norm(v, zero, w, NormKind::Unweighted2) == doctest::Approx(3.0));
  CHECK(error_norm(v, zero, w, NormKind::Inf) == doctest::Approx(2.0));
  CHECK_THROWS_AS(error_norm(v, std::vector<double>(2), w, NormKind::Inf), Error);
}

TEST_CASE("invalid solve options") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  SolveOptions o;
  o.depth = 2;
  o.order = 10;
  CHECK_THROWS_AS(solve_boundary(tear, o, BoundaryData::power(0.5)), Error);
  o.order = 3;
  CHECK_THROWS_AS(solve_boundary(tear, o, BoundaryData::power(0.5)), Error);
}
