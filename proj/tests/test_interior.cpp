#include <doctest.h>

#include <cmath>
#include <vector>

#include "cbiem/error.hpp"
#include "cbiem/interior.hpp"
#include "cbiem/solver.hpp"

using namespace cbiem;

namespace {

Discretization circle_disc(int depth, double sigma) {
  const Contour c = make_contour(ContourKind::UnitCircle);
  return discretize(c, contour_rule(depth, sigma, c.corner_count()));
}

std::vector<cplx> sample(const Discretization& d, cplx (*w)(cplx)) {
  std::vector<cplx> out(d.size());
  for (int j = 0; j < d.size(); ++j) out[j] = w(d.nodes[j]);
  return out;
}

}  // namespace

TEST_CASE("naive formula on the circle") {
  const Discretization d = circle_disc(8, 0.15);
  const std::vector<cplx> one(d.size(), 1.0);
  CHECK(std::abs(evaluate_naive(one, d, 0.0) - 1.0) <= 1e-12);
  const auto ident = sample(d, [](cplx z) { return z; });
  CHECK(std::abs(evaluate_naive(ident, d, 0.3) - 0.3) <= 1e-12);
}

TEST_CASE("naive formula respects clockwise traversal") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  const Discretization d = discretize(tear, contour_rule(8, 0.15, 1));
  const std::vector<cplx> one(d.size(), 1.0);
  // Without the winding correction this would come out near -1.
  CHECK(std::abs(evaluate_naive(one, d, 0.5) - 1.0) <= 1e-4);
  CHECK(std::abs(evaluate_naive(one, d, 1.0) - 1.0) <= 1e-3);
}

TEST_CASE("subtracted formula is exact on constants") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  const Discretization d = discretize(tear, contour_rule(4, 0.1, 1));
  const std::vector<cplx> c(d.size(), cplx(3.0, -1.0));
  for (cplx z : {cplx(0.1, 0.0), cplx(1.0, 0.3), cplx(1.9, 0.0)}) {
    const cplx w = evaluate_subtracted(c, d, z);
    CHECK(std::abs(w - cplx(3.0, -1.0)) <= 1e-14);
  }
}

TEST_CASE("subtraction helps near the boundary") {
  const Discretization d = circle_disc(6, 0.15);
  const auto sq = sample(d, [](cplx z) { return z * z; });
  const cplx z = std::polar(1.0 - 1e-3, 0.3);
  const double naive = std::abs(evaluate_naive(sq, d, z) - z * z);
  const double sub = std::abs(evaluate_subtracted(sq, d, z) - z * z);
  CHECK(sub * 10.0 <= naive);
}

TEST_CASE("exterior points are flagged") {
  const Discretization d = circle_disc(8, 0.15);
  const std::vector<cplx> one(d.size(), 1.0);
  CHECK_THROWS_AS(evaluate_subtracted(one, d, cplx(3.0, 0.0)), Error);
  CHECK_THROWS_AS(evaluate_subtracted(one, d, d.nodes[5]), Error);
  CHECK_THROWS_AS(evaluate_subtracted(std::vector<cplx>(3), d, 0.0), Error);
}

TEST_CASE("solved problem is harmonic and accurate inside") {
  const Contour c = make_contour(ContourKind::UnitCircle);
  SolveOptions o;
  o.depth = 8;
  o.sigma = 0.2;
  o.order = 8;
  const BoundarySolution s = solve_boundary(c, o, BoundaryData::power(2.0));
  const double h = 1e-3;
  const cplx z0(0.2, -0.1);
  auto u = [&](cplx z) { return evaluate_subtracted(s.w_hat, s.disc, z).real(); };
  const double lap =
      (u(z0 + h) + u(z0 - h) + u(z0 + cplx(0, h)) + u(z0 - cplx(0, h)) - 4.0 * u(z0)) / (h * h);
  CHECK(std::abs(lap) < 1e-3);
  CHECK(std::abs(u(z0) - (z0 * z0).real()) < 1e-8);
}

TEST_CASE("interior values beat the boundary error inside the teardrop") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  const BoundarySolution s = solve_boundary(tear, SolveOptions{}, BoundaryData::power(0.5));
  const double boundary = s.error(NormKind::Weighted2);
  for (double x : {0.1, 0.2, 0.3}) {
    const cplx w = evaluate_subtracted(s.w_hat, s.disc, x);
    CHECK(std::abs(w.real() - std::sqrt(x)) <= boundary);
  }
}
