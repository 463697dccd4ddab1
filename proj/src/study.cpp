#include "cbiem/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "cbiem/error.hpp"
#include "cbiem/quadrature.hpp"

namespace cbiem {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double integrand(double x) { return 1.0 - 1.5 * std::sqrt(x); }

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

double abscissa(const std::string& kind, int n) {
  return kind == "sqrt(N)" ? std::sqrt(static_cast<double>(n))
                           : std::log10(static_cast<double>(n));
}

// Fits log10|E| over the usable rows of one series.
SeriesFit fit_series(const std::string& label, const std::string& axis,
                     const std::vector<StudyRow>& rows, double predicted) {
  std::vector<double> x, y;
  for (const StudyRow& r : rows) {
    if (!usable_for_fit(r)) continue;
    x.push_back(abscissa(axis, r.n));
    y.push_back(std::log10(r.error));
  }
  SeriesFit fit;
  fit.label = label;
  fit.abscissa = axis;
  fit.predicted_slope = predicted;
  if (x.size() >= 2) fit.all = fit_line(x, y);
  const std::size_t start = x.size() / 2;
  if (x.size() - start >= 2) {
    fit.tail = fit_line(std::span(x).subspan(start), std::span(y).subspan(start));
  }
  return fit;
}

}  // namespace

const char* to_string(RowStatus status) {
  switch (status) {
    case RowStatus::Ok: return "ok";
    case RowStatus::Diverged: return "diverged";
    case RowStatus::Truncated: return "truncated";
    case RowStatus::Invalid: return "invalid";
  }
  return "?";
}

const char* to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Weighted2: return "weighted2";
    case NormKind::Unweighted2: return "unweighted2";
    case NormKind::Inf: return "inf";
  }
  return "?";
}

const char* to_string(ContourKind kind) {
  switch (kind) {
    case ContourKind::UnitCircle: return "circle";
    case ContourKind::Teardrop: return "teardrop";
    case ContourKind::Cardioid: return "cardioid";
    case ContourKind::WideTeardrop: return "wide-teardrop";
  }
  return "?";
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, "line fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, "line fit needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  f.rows = static_cast<int>(x.size());
  return f;
}

bool usable_for_fit(const StudyRow& row) {
  return row.status == RowStatus::Ok && std::isfinite(row.error) &&
         row.error > 100.0 * kEps;
}

StudyResult run_h_study(std::span<const double> gammas, int points, int d_max) {
  require(!gammas.empty(), "h study needs at least one gamma");
  require(points >= 2, "h study needs at least two points per interval");
  require(d_max >= 2, "h study needs d_max >= 2");
  const int degree = rule_degree(RuleFamily::GaussLobatto, points);
  StudyResult res;
  res.name = "h-study";
  res.param_names = {"gamma", "p", "D", "m"};
  res.metadata["integrand"] = "1 - 1.5 sqrt(x)";
  res.metadata["abscissa"] = "log10(N)";
  res.metadata["series"] = "gamma";
  res.metadata["rule_degree"] = std::to_string(degree);
  for (double gamma : gammas) {
    require(gamma >= 1.0, "h study needs gamma >= 1");
    std::vector<StudyRow> series;
    for (int d = 1; d <= d_max; ++d) {
      const int m = 2 * d;
      const Mesh mesh = algebraic_mesh(m, gamma);
      const std::vector<int> counts(m, points);
      const CompositeRule rule = compose_hp_rule(mesh, counts, false);
      double sum = 0.0;
      for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i] * integrand(rule.params[i]);
      StudyRow row;
      row.params = {gamma, static_cast<double>(points), static_cast<double>(d),
                    static_cast<double>(m)};
      row.n = rule.size();
      row.error = std::abs(sum);
      series.push_back(row);
    }
    const double predicted = -std::min(1.5 * gamma, degree + 1.0);
    res.fits.push_back(fit_series("gamma=" + format("%g", gamma), "log10(N)", series, predicted));
    res.rows.insert(res.rows.end(), series.begin(), series.end());
  }
  return res;
}

StudyResult run_hp_study(double sigma, int d_max) {
  require(sigma > 0.0 && sigma < 1.0, "hp study needs 0 < sigma < 1");
  require(d_max >= 2, "hp study needs d_max >= 2");
  StudyResult res;
  res.name = "hp-study";
  res.param_names = {"sigma", "D"};
  res.metadata["integrand"] = "1 - 1.5 sqrt(x)";
  res.metadata["abscissa"] = "sqrt(N)";
  for (int d = 1; d <= d_max; ++d) {
    const Mesh mesh = geometric_mesh(d + 1, sigma);
    const std::vector<int> counts = linear_point_counts(d + 1);
    const CompositeRule rule = compose_hp_rule(mesh, counts, false);
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i] * integrand(rule.params[i]);
    res.rows.push_back({{sigma, static_cast<double>(d)}, rule.size(), std::abs(sum),
                        RowStatus::Ok});
  }
  res.fits.push_back(fit_series("sigma=" + format("%g", sigma), "sqrt(N)", res.rows, 0.0));
  return res;
}

StudyResult run_contour_study(double sigma, int d_min, int d_max) {
  require(sigma > 0.0 && sigma < 0.5, "contour study needs 0 < sigma < 1/2");
  require(d_min >= 1 && d_max >= d_min, "contour study needs 1 <= d_min <= d_max");
  ContourOptions opts;
  opts.circle_corners = 2;
  const Contour circle = make_contour(ContourKind::UnitCircle, opts);
  const cplx exact = std::polar(1.0, M_PI / 4);
  const cplx two_pi_i(0.0, 2.0 * M_PI);

  StudyResult res;
  res.name = "contour-study";
  res.param_names = {"sigma", "D"};
  res.metadata["integrand"] = "sqrt((z-1)/i)/z / (2 pi i)";
  res.metadata["abscissa"] = "sqrt(N)";
  for (int d = d_min; d <= d_max; ++d) {
    const Discretization disc = discretize(circle, contour_rule(d, sigma, 2));
    cplx sum = 0.0;
    for (int j = 0; j < disc.size(); ++j) {
      const double t = disc.t_nodes[j];
      // (z - 1)/i = 2 sin(pi t) e^{i pi t}, free of cancellation near t = 0, 1.
      const cplx shifted = 2.0 * sin_pi(t) * cplx(cos_pi(t), sin_pi(t));
      sum += disc.weights[j] * std::sqrt(shifted) / disc.nodes[j];
    }
    const cplx integral = sum / two_pi_i;
    StudyRow row{{sigma, static_cast<double>(d)}, disc.size(),
                 std::abs(1.0 - integral / exact), RowStatus::Ok};
    if (!std::isfinite(row.error)) row.status = RowStatus::Diverged;
    res.rows.push_back(row);
  }
  res.fits.push_back(fit_series("sigma=" + format("%g", sigma), "sqrt(N)", res.rows, 0.0));
  return res;
}

StudyResult run_cbiem_table(const TableSpec& spec) {
  require(spec.d_min >= 1 && spec.d_max >= spec.d_min, "table needs 1 <= dmin <= dmax");
  require(spec.o_min >= 2 && spec.o_max >= spec.o_min && spec.o_min % 2 == 0,
          "table needs even 2 <= omin <= omax");
  const Contour contour = make_contour(spec.contour, spec.contour_options);
  const BoundaryData data = BoundaryData::power(spec.alpha);

  struct Cell {
    int d, o;
    StudyRow row;
  };
  std::vector<Cell> cells;
  for (int d = spec.d_min; d <= spec.d_max; ++d) {
    for (int o = spec.o_min; o <= spec.o_max; o += 2) cells.push_back({d, o, {}});
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      Cell& c = cells[i];
      const int s = (c.d + 1) * (c.d + 1) + 1;
      c.row.params = {static_cast<double>(c.d), static_cast<double>(c.o)};
      c.row.n = contour.corner_count() * (s - 1);
      if (c.o > s - 1) {
        c.row.error = NAN;
        c.row.status = RowStatus::Invalid;
        continue;
      }
      try {
        SolveOptions so;
        so.depth = c.d;
        so.sigma = spec.sigma;
        so.order = c.o;
        const BoundarySolution sol = solve_boundary(contour, so, data);
        c.row.n = sol.size();
        c.row.error = sol.error(spec.norm);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidArgument) throw;
        c.row.error = NAN;
      }
      if (!std::isfinite(c.row.error) || c.row.error > 1.0) c.row.status = RowStatus::Diverged;
    }
  };
  unsigned threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(cells.size()));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned k = 0; k < threads; ++k) {
    pool.emplace_back([&] {
      try {
        worker();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cells.size();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  StudyResult res;
  res.name = "table";
  res.param_names = {"D", "O"};
  res.metadata["contour"] = to_string(spec.contour);
  res.metadata["alpha"] = format("%g", spec.alpha);
  res.metadata["sigma"] = format("%g", spec.sigma);
  res.metadata["norm"] = to_string(spec.norm);
  res.metadata["abscissa"] = "sqrt(N)";
  res.metadata["series"] = "O";
  // Cells past a divergent one in the same D row would have stopped the
  // reference sweep.
  for (int d = spec.d_min; d <= spec.d_max; ++d) {
    bool cut = false;
    for (Cell& c : cells) {
      if (c.d != d) continue;
      if (cut && c.row.status != RowStatus::Invalid) c.row.status = RowStatus::Truncated;
      if (c.row.status == RowStatus::Diverged) cut = true;
      res.rows.push_back(c.row);
    }
  }
  for (int o = spec.o_min; o <= spec.o_max; o += 2) {
    std::vector<StudyRow> series;
    for (const StudyRow& r : res.rows) {
      if (static_cast<int>(r.params[1]) == o) series.push_back(r);
    }
    std::vector<StudyRow> ok;
    std::copy_if(series.begin(), series.end(), std::back_inserter(ok), usable_for_fit);
    if (ok.size() >= 2) res.fits.push_back(fit_series("O=" + std::to_string(o), "sqrt(N)", series, 0.0));
  }
  return res;
}

std::string to_csv(const StudyResult& result) {
  std::ostringstream os;
  for (const std::string& p : result.param_names) os << "param_" << p << ',';
  os << "N,error,status\n";
  for (const StudyRow& r : result.rows) {
    for (double p : r.params) os << format("%.10g", p) << ',';
    os << r.n << ',' << (std::isfinite(r.error) ? format("%.6e", r.error) : "nan") << ','
       << to_string(r.status) << '\n';
  }
  return os.str();
}

std::string describe_fits(const StudyResult& result) {
  std::ostringstream os;
  for (const SeriesFit& f : result.fits) {
    os << result.name << ' ' << f.label << ": log10|E| vs " << f.abscissa
       << "  tail slope " << format("%.4f", f.tail.slope) << " (R^2 "
       << format("%.4f", f.tail.r2) << ", " << f.tail.rows << " rows)"
       << "  all slope " << format("%.4f", f.all.slope) << " (R^2 "
       << format("%.4f", f.all.r2) << ", " << f.all.rows << " rows)";
    if (f.predicted_slope != 0.0) os << "  predicted " << format("%.4f", f.predicted_slope);
    os << '\n';
  }
  return os.str();
}

std::string to_svg(const StudyResult& result) {
  const auto axis_it = result.metadata.find("abscissa");
  const std::string axis = axis_it == result.metadata.end() ? "log10(N)" : axis_it->second;
  const auto series_it = result.metadata.find("series");
  int key = -1;
  if (series_it != result.metadata.end()) {
    for (std::size_t i = 0; i < result.param_names.size(); ++i) {
      if (result.param_names[i] == series_it->second) key = static_cast<int>(i);
    }
  }

  std::map<double, std::vector<std::pair<double, double>>> series;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const StudyRow& r : result.rows) {
    if (r.status == RowStatus::Invalid || !std::isfinite(r.error) || r.error <= 0.0) continue;
    const double x = abscissa(axis, r.n);
    const double y = std::log10(r.error);
    series[key >= 0 ? r.params[key] : 0.0].push_back({x, y});
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  constexpr double kW = 640, kH = 480, kM = 60;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\">" << result.name
     << "</text>\n";
  if (series.empty()) {
    os << "</svg>\n";
    return os.str();
  }
  if (x1 == x0) x1 = x0 + 1;
  y0 = std::floor(y0);
  y1 = std::ceil(y1);
  if (y1 == y0) y1 = y0 + 1;
  auto px = [&](double x) { return kM + (x - x0) / (x1 - x0) * (kW - 2 * kM); };
  auto py = [&](double y) { return kH - kM - (y - y0) / (y1 - y0) * (kH - 2 * kM); };
  os << "<line x1=\"" << kM << "\" y1=\"" << kH - kM << "\" x2=\"" << kW - kM << "\" y2=\""
     << kH - kM << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kM << "\" y1=\"" << kM << "\" x2=\"" << kM << "\" y2=\"" << kH - kM
     << "\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(y0); e <= static_cast<int>(y1); ++e) {
    os << "<text x=\"" << kM - 6 << "\" y=\"" << py(e) + 4
       << "\" text-anchor=\"end\" font-size=\"10\">1e" << e << "</text>\n";
  }
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\">" << axis
     << "</text>\n";
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  int idx = 0;
  for (const auto& [label, pts] : series) {
    const char* col = colors[idx % 8];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
    for (const auto& [x, y] : pts) os << format("%.2f", px(x)) << ',' << format("%.2f", py(y)) << ' ';
    os << "\"/>\n";
    for (const auto& [x, y] : pts) {
      os << "<circle cx=\"" << format("%.2f", px(x)) << "\" cy=\"" << format("%.2f", py(y))
         << "\" r=\"2.5\" fill=\"" << col << "\"/>\n";
    }
    if (key >= 0) {
      os << "<text x=\"" << kW - kM + 4 << "\" y=\"" << kM + 14 * idx << "\" font-size=\"10\" fill=\""
         << col << "\">" << result.param_names[key] << '=' << format("%g", label) << "</text>\n";
    }
    ++idx;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cbiem
