#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cbiem/contour.hpp"
#include "cbiem/solver.hpp"

namespace cbiem {

enum class RowStatus {
  Ok,
  Diverged,   // error > 1 or not finite
  Truncated,  // after a divergent row or non-finite cell; the reference sweep stops here
  Invalid,    // parameters rejected (e.g. O too large for D)
};

const char* to_string(RowStatus status);

struct StudyRow {
  std::vector<double> params;  // aligned with StudyResult::param_names
  int n = 0;
  double error = 0.0;
  RowStatus status = RowStatus::Ok;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int rows = 0;
};

/// Ordinary least squares y = slope x + intercept with coefficient of
/// determination.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct SeriesFit {
  std::string label;
  std::string abscissa;  // "log10(N)" or "sqrt(N)"
  LineFit tail;          // last half of the usable rows
  LineFit all;           // every usable row
  double predicted_slope = 0.0;  // 0 when there is no prediction
};

struct StudyResult {
  std::string name;
  std::vector<std::string> param_names;
  std::vector<StudyRow> rows;
  std::vector<SeriesFit> fits;
  std::map<std::string, std::string> metadata;
};

/// Rows whose error is at least 100 machine epsilons.
bool usable_for_fit(const StudyRow& row);

/// h method on algebraic meshes (m = 2D intervals, D = 1..d_max) with a
/// fixed `points`-point Gauss-Lobatto rule per interval, applied to
/// f(x) = 1 - (3/2) sqrt(x), whose integral over [0, 1] is 0. One slope fit
/// of log10|E| against log10 N per gamma.
StudyResult run_h_study(std::span<const double> gammas, int points, int d_max);

/// h-p method on geometric meshes with D + 1 intervals and n_j = j + 1,
/// same integrand; fit of log10|E| against sqrt(N).
StudyResult run_hp_study(double sigma, int d_max);

/// (1 / 2 pi i) \oint sqrt((z - 1)/i) / z dz = e^{i pi/4} around the unit
/// circle with two artificial corners; error |1 - I e^{-i pi/4}|.
StudyResult run_contour_study(double sigma, int d_min, int d_max);

struct TableSpec {
  ContourKind contour = ContourKind::Teardrop;
  ContourOptions contour_options;
  double alpha = 0.5;
  double sigma = 0.10;
  int d_min = 3;
  int d_max = 9;
  int o_min = 2;
  int o_max = 10;
  NormKind norm = NormKind::Unweighted2;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Error of the boundary solve over a (D, O) grid for W = z^alpha.
StudyResult run_cbiem_table(const TableSpec& spec);

/// Deterministic CSV: header `param_...,N,error[,status]`, fixed formats.
std::string to_csv(const StudyResult& result);

/// Log-error series plot, one polyline per series.
std::string to_svg(const StudyResult& result);

/// One line per fit.
std::string describe_fits(const StudyResult& result);

const char* to_string(NormKind kind);
const char* to_string(ContourKind kind);

}  // namespace cbiem
