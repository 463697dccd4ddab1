#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cbiem/error.hpp"
#include "cbiem/study.hpp"

using namespace cbiem;

TEST_CASE("line fit") {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {3, 5, 7, 9};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_line(std::vector<double>{1}, std::vector<double>{1}), Error);
  CHECK_THROWS_AS(fit_line(std::vector<double>{1, 1}, std::vector<double>{1, 2}), Error);
}

TEST_CASE("plateau rows are excluded from fits") {
  CHECK(usable_for_fit({{}, 10, 1e-10, RowStatus::Ok}));
  CHECK_FALSE(usable_for_fit({{}, 10, 1e-15, RowStatus::Ok}));
  CHECK_FALSE(usable_for_fit({{}, 10, 1e-3, RowStatus::Diverged}));
  CHECK_FALSE(usable_for_fit({{}, 10, NAN, RowStatus::Ok}));
}

TEST_CASE("h-p study first row by hand") {
  // Geometric mesh {0, 0.15, 1}: trapezoid on the first interval, Simpson on
  // the second.
  auto f = [](double x) { return 1.0 - 1.5 * std::sqrt(x); };
  const double s = 0.15;
  const double by_hand =
      s / 2 * (f(0) + f(s)) + (1 - s) / 6 * (f(s) + 4 * f(0.5 * (1 + s)) + f(1));
  const StudyResult r = run_hp_study(0.15, 4);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].n == 4);
  CHECK(r.rows[0].error == doctest::Approx(std::abs(by_hand)).epsilon(1e-14));
  CHECK(r.rows[0].error == doctest::Approx(0.01708362850387718).epsilon(1e-12));
  CHECK(r.rows[1].n == 7);
  CHECK(r.rows[2].n == 11);
}

TEST_CASE("h study slopes track the grading") {
  const std::vector<double> g = {1.0, 2.0};
  const StudyResult r = run_h_study(g, 6, 12);
  REQUIRE(r.fits.size() == 2);
  CHECK(r.fits[0].tail.slope == doctest::Approx(-1.5).epsilon(0.05));
  CHECK(r.fits[1].tail.slope == doctest::Approx(-3.0).epsilon(0.05));
  CHECK(r.fits[0].predicted_slope == -1.5);
  CHECK_THROWS_AS(run_h_study(std::vector<double>{0.5}, 6, 12), Error);
}

TEST_CASE("contour integrand has the stated residue") {
  // (1 / 2 pi i) times the integral over a small circle about 0 equals the
  // residue sqrt(-1/i) = e^{i pi/4}.
  const int m = 400;
  const double r = 1e-3;
  std::complex<double> sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const std::complex<double> z = std::polar(r, 2 * M_PI * k / m);
    const std::complex<double> dz = std::complex<double>(0, 2 * M_PI / m) * z;
    sum += std::sqrt((z - 1.0) / std::complex<double>(0, 1)) / z * dz;
  }
  const std::complex<double> value = sum / std::complex<double>(0, 2 * M_PI);
  CHECK(std::abs(value - std::polar(1.0, M_PI / 4)) <= 1e-3);

  const StudyResult cs = run_contour_study(0.15, 8, 10);
  REQUIRE(cs.rows.size() == 3);
  CHECK(cs.rows[0].n == 162);
  CHECK(cs.rows[2].error < cs.rows[0].error);
}

TEST_CASE("table statuses and deterministic CSV") {
  TableSpec spec;
  spec.d_min = 1;
  spec.d_max = 3;
  spec.o_min = 2;
  spec.o_max = 6;
  spec.threads = 3;
  const StudyResult a = run_cbiem_table(spec);
  REQUIRE(a.rows.size() == 9);
  CHECK(a.rows[2].status == RowStatus::Invalid);  // D = 1: S = 5, O = 6
  CHECK(a.rows[0].status == RowStatus::Ok);
  spec.threads = 1;
  const StudyResult b = run_cbiem_table(spec);
  CHECK(to_csv(a) == to_csv(b));
  CHECK(to_csv(a).rfind("param_D,param_O,N,error,status\n", 0) == 0);
  CHECK(to_svg(a).find("<svg") == 0);
  CHECK(!describe_fits(a).empty());
}

TEST_CASE("divergent cells are flagged") {
  TableSpec spec;
  spec.alpha = 0.25;
  spec.sigma = 0.02;
  spec.d_min = 9;
  spec.d_max = 9;
  spec.o_min = 8;
  spec.o_max = 10;
  spec.norm = NormKind::Weighted2;
  const StudyResult r = run_cbiem_table(spec);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].error > 1.0);
  CHECK(r.rows[0].status == RowStatus::Diverged);
  CHECK(r.rows[1].status == RowStatus::Truncated);
}
