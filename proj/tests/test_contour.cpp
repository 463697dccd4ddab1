#include <doctest.h>

#include <cmath>
#include <complex>

#include "cbiem/contour.hpp"
#include "cbiem/error.hpp"

using namespace cbiem;

namespace {

const cplx I(0.0, 1.0);

// Angle of the wedge between the two boundary rays leaving a corner.
double wedge(const CornerTangents& t) { return std::arg(t.above / -t.below); }

}  // namespace

TEST_CASE("tangents at corners") {
  ContourOptions ref;
  ref.orientation = Orientation::Reference;
  const Contour tear = make_contour(ContourKind::Teardrop, ref);
  const cplx mean = tear.tangent_at_node(1.0);
  CHECK(std::abs(mean - (-2.0 * M_PI * I)) <= 1e-12);
  const CornerTangents ct = tear.one_sided_tangents(0);
  CHECK(std::abs(ct.above - cplx(2 * M_PI, -2 * M_PI)) <= 1e-12);
  CHECK(std::abs(ct.below - cplx(-2 * M_PI, -2 * M_PI)) <= 1e-12);

  const Contour circle = make_contour(ContourKind::UnitCircle);
  CHECK(std::abs(circle.tangent_at_node(0.0) - 2.0 * M_PI * I) <= 1e-12);

  const Contour card = make_contour(ContourKind::Cardioid);
  CHECK(std::abs(card.tangent_at_node(0.0)) == 0.0);
  CHECK(std::abs(card.tangent_at_node(1.0)) <= 1e-12);
}

TEST_CASE("tangent matches a central difference of the parameterisation") {
  for (ContourKind kind : {ContourKind::UnitCircle, ContourKind::Teardrop, ContourKind::Cardioid,
                           ContourKind::WideTeardrop}) {
    const Contour c = make_contour(kind);
    for (double t : {0.13, 0.37, 0.5, 0.81}) {
      const double h = 1e-6;
      const cplx fd = (c.point(t + h) - c.point(t - h)) / (2 * h);
      CHECK(std::abs(fd - c.tangent(t)) <= 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("corner angles") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  CHECK(tear.interior_angle(0) == doctest::Approx(M_PI / 2));
  CHECK(std::abs(wedge(tear.one_sided_tangents(0))) == doctest::Approx(M_PI / 2));
  for (double deg : {10.0, 20.0, 45.0}) {
    ContourOptions o;
    o.wide_angle_deg = deg;
    const Contour w = make_contour(ContourKind::WideTeardrop, o);
    CHECK(std::abs(wedge(w.one_sided_tangents(0))) == doctest::Approx(deg * M_PI / 180));
  }
  CHECK_THROWS_AS(make_contour(ContourKind::WideTeardrop, ContourOptions{Orientation::Stated, 4, 180.0}),
                  Error);
}

TEST_CASE("orientation") {
  CHECK(make_contour(ContourKind::UnitCircle).winding() == 1);
  CHECK(make_contour(ContourKind::Teardrop).winding() == -1);
  ContourOptions ref;
  ref.orientation = Orientation::Reference;
  CHECK(make_contour(ContourKind::Teardrop, ref).winding() == 1);
  CHECK(make_contour(ContourKind::Cardioid).winding() == 1);
}

TEST_CASE("teardrop mirror symmetry") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  for (double t : {0.01, 0.2, 0.45}) {
    CHECK(std::abs(tear.point(1.0 - t) - std::conj(tear.point(t))) <= 1e-15);
  }
}

TEST_CASE("closed contour identities on the circle") {
  const Contour circle = make_contour(ContourKind::UnitCircle);
  const Discretization d = discretize(circle, contour_rule(6, 0.15, circle.corner_count()));
  for (int q = 0; q <= 2; ++q) {
    cplx sum = 0.0;
    for (int j = 0; j < d.size(); ++j) sum += d.weights[j] * std::pow(d.nodes[j], q);
    CHECK(std::abs(sum) <= 1e-10);
  }
  cplx cauchy = 0.0;
  for (int j = 0; j < d.size(); ++j) cauchy += d.weights[j] / d.nodes[j];
  CHECK(std::abs(cauchy - 2.0 * M_PI * I) <= 1e-10);
}

TEST_CASE("discretization layout") {
  const Contour tear = make_contour(ContourKind::Teardrop);
  const Discretization d = discretize(tear, contour_rule(3, 0.1, 1));
  CHECK(d.size() == 16);
  CHECK(d.t_nodes.back() == 1.0);
  double prev = 0.0;
  for (int k = 0; k < d.size(); ++k) {
    CHECK(d.t_coll[k] == doctest::Approx(0.5 * (prev + d.t_nodes[k])));
    for (int j = 0; j < d.size(); ++j) CHECK(d.t_coll[k] != d.t_nodes[j]);
    CHECK(d.t_coll[k] != 0.0);
    prev = d.t_nodes[k];
  }
  CHECK_THROWS_AS(discretize(tear, contour_rule(3, 0.1, 2)), Error);
}

TEST_CASE("sin_pi keeps relative accuracy near integers") {
  CHECK(sin_pi(1.0) == 0.0);
  CHECK(sin_pi(2.0) == 0.0);
  const double t = 1.0 - 1e-12;
  CHECK(sin_pi(t) == doctest::Approx(M_PI * 1e-12).epsilon(1e-10));
  CHECK(cos_pi(0.5) == 0.0);
  CHECK(cos_pi(1.0) == -1.0);
  for (double x : {0.1, 0.3, 0.77, -0.4, 3.2}) {
    CHECK(sin_pi(x) == doctest::Approx(std::sin(M_PI * x)).epsilon(1e-14));
    CHECK(cos_pi(x) == doctest::Approx(std::cos(M_PI * x)).epsilon(1e-14));
  }
}
