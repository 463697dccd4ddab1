// Command-line driver for the cbiem library; uses only the C interface.
#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cbiem/cbiem.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct CliError {
  int code;
  std::string message;
};

int exit_code(cbiem_status s) {
  return s == CBIEM_INVALID_ARGUMENT ? kExitInvalid : kExitNumerical;
}

void check(cbiem_status s) {
  if (s != CBIEM_OK) throw CliError{exit_code(s), cbiem_last_error()};
}

// RAII owners for the C handles.
template <class T, void (*Destroy)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(p); }
};
using ContourHandle = Handle<cbiem_contour, cbiem_contour_destroy>;
using SolutionHandle = Handle<cbiem_solution, cbiem_solution_destroy>;
using StudyHandle = Handle<cbiem_study, cbiem_study_destroy>;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError{kExitInvalid, "cannot open " + path + " for writing"};
  f << text;
  if (!f) throw CliError{kExitNumerical, "failed writing " + path};
}

struct Output {
  std::string csv_path;
  std::string svg_path;
};

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.csv_path, "CSV output file (default: stdout)");
  cmd->add_option("--svg", out.svg_path, "SVG plot output file");
}

void emit_study(const cbiem_study* study, const Output& out) {
  const char* csv = nullptr;
  const char* fits = nullptr;
  const char* meta = nullptr;
  check(cbiem_study_csv(study, &csv));
  check(cbiem_study_fits_text(study, &fits));
  check(cbiem_study_metadata_text(study, &meta));
  if (out.csv_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out.csv_path, csv);
  }
  if (!out.svg_path.empty()) {
    const char* svg = nullptr;
    check(cbiem_study_svg(study, &svg));
    write_file(out.svg_path, svg);
  }
  std::istringstream md(meta);
  for (std::string line; std::getline(md, line);) std::cerr << "# " << line << '\n';
  std::istringstream ft(fits);
  for (std::string line; std::getline(ft, line);) std::cerr << "# fit " << line << '\n';
}

const std::map<std::string, cbiem_contour_kind> kContours = {
    {"circle", CBIEM_CONTOUR_CIRCLE},
    {"teardrop", CBIEM_CONTOUR_TEARDROP},
    {"cardioid", CBIEM_CONTOUR_CARDIOID},
    {"wide-teardrop", CBIEM_CONTOUR_WIDE_TEARDROP},
};

const std::map<std::string, cbiem_norm> kNorms = {
    {"weighted2", CBIEM_NORM_WEIGHTED2},
    {"unweighted2", CBIEM_NORM_UNWEIGHTED2},
    {"inf", CBIEM_NORM_INF},
};

struct ContourArgs {
  std::string name = "teardrop";
  bool code_orientation = false;
  int corners = 4;
  double angle = 20.0;

  void add(CLI::App* cmd) {
    cmd->add_option("--contour", name, "circle | teardrop | cardioid | wide-teardrop")
        ->check(CLI::IsMember(kContours))
        ->capture_default_str();
    cmd->add_flag("--code-orientation", code_orientation,
                  "teardrop traversed as 2 sin(pi t) - i sin(2 pi t)");
    cmd->add_option("--corners", corners, "artificial corners on the circle")
        ->capture_default_str();
    cmd->add_option("--angle", angle, "wide teardrop corner angle in degrees")
        ->capture_default_str();
  }

  cbiem_contour_options options() const {
    cbiem_contour_options o;
    cbiem_contour_options_init(&o);
    o.reference_orientation = code_orientation ? 1 : 0;
    o.circle_corners = corners;
    o.wide_angle_deg = angle;
    return o;
  }
};

// Applies a flat key=value file to the options of `cmd` that were not given
// on the command line.
void apply_config(CLI::App* cmd, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CliError{kExitInvalid, "cannot read config file " + path};
  int lineno = 0;
  for (std::string line; std::getline(f, line);) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CliError{kExitInvalid, path + ":" + std::to_string(lineno) + ": expected key=value"};
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw CliError{kExitInvalid, path + ":" + std::to_string(lineno) + ": unknown key '" +
                                       key + "' for " + cmd->get_name()};
    }
    if (opt->count() > 0) continue;  // command line wins
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw CliError{kExitInvalid, path + ":" + std::to_string(lineno) + ": " + e.what()};
    }
  }
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) v.push_back(std::stod(part));
  if (v.size() != 2) throw CliError{kExitInvalid, "probe must be re,im: " + text};
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

int cmd_selftest() {
  const char* report = nullptr;
  int failures = 0;
  check(cbiem_quad_selftest(&report, &failures));
  std::cout << report;
  std::cout << (failures == 0 ? "all checks passed\n" : std::to_string(failures) + " checks failed\n");
  return failures == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex boundary integral solver for the 2-D Laplace Dirichlet problem"};
  app.require_subcommand(1);
  std::string config;

  auto* selftest = app.add_subcommand("quad-selftest", "check the quadrature rules");

  std::vector<double> gammas = {1, 2, 3, 4, 5, 6};
  int points = 6;
  int h_dmax = 19;
  Output h_out;
  auto* h = app.add_subcommand("h-study", "h refinement on algebraically graded meshes");
  h->add_option("--gamma", gammas, "grading exponents")->delimiter(',')->capture_default_str();
  h->add_option("--p", points, "Gauss-Lobatto points per interval")->capture_default_str();
  h->add_option("--dmax", h_dmax, "largest D (2D intervals)")->capture_default_str();
  add_output_options(h, h_out);

  double hp_sigma = 0.15;
  int hp_dmax = 19;
  Output hp_out;
  auto* hp = app.add_subcommand("hp-study", "h-p refinement on a geometric mesh");
  hp->add_option("--sigma", hp_sigma, "grading ratio")->capture_default_str();
  hp->add_option("--dmax", hp_dmax, "largest D")->capture_default_str();
  add_output_options(hp, hp_out);

  double cs_sigma = 0.15;
  int cs_dmin = 8, cs_dmax = 15;
  Output cs_out;
  auto* cs = app.add_subcommand("contour-study", "contour integral around the unit circle");
  cs->add_option("--sigma", cs_sigma, "grading ratio")->capture_default_str();
  cs->add_option("--dmin", cs_dmin, "smallest D")->capture_default_str();
  cs->add_option("--dmax", cs_dmax, "largest D")->capture_default_str();
  add_output_options(cs, cs_out);

  ContourArgs solve_contour;
  double alpha = 0.5, sigma = 0.10;
  int depth = 9, order = 6;
  std::string norm = "unweighted2";
  std::string split = "real";
  std::vector<int> graded;
  std::vector<std::string> probes;
  std::string solve_csv;
  auto* solve = app.add_subcommand("solve", "solve one test problem W = z^alpha");
  solve_contour.add(solve);
  solve->add_option("--alpha", alpha, "exponent of the test problem")->capture_default_str();
  solve->add_option("--sigma", sigma, "grading ratio")->capture_default_str();
  solve->add_option("--D", depth, "grading depth")->capture_default_str();
  solve->add_option("--O", order, "interpolation order (even)")->capture_default_str();
  solve->add_option("--norm", norm, "weighted2 | unweighted2 | inf")
      ->check(CLI::IsMember(kNorms))
      ->capture_default_str();
  solve->add_option("--split", split, "real | imag")
      ->check(CLI::IsMember({"real", "imag"}))
      ->capture_default_str();
  solve->add_option("--graded-o", graded,
                    "experimental: orders by interval distance from a corner")
      ->delimiter(',');
  solve->add_option("--probe", probes, "interior point re,im (repeatable)");
  solve->add_option("--out", solve_csv, "CSV of boundary values");

  ContourArgs table_contour;
  cbiem_table_spec spec;
  cbiem_table_spec_init(&spec);
  std::string table_norm = "unweighted2";
  Output table_out;
  auto* table = app.add_subcommand("table", "error table over D and O");
  table_contour.add(table);
  table->add_option("--alpha", spec.alpha, "exponent of the test problem")->capture_default_str();
  table->add_option("--sigma", spec.sigma, "grading ratio")->capture_default_str();
  table->add_option("--dmin", spec.d_min, "smallest D")->capture_default_str();
  table->add_option("--dmax", spec.d_max, "largest D")->capture_default_str();
  table->add_option("--omin", spec.o_min, "smallest O")->capture_default_str();
  table->add_option("--omax", spec.o_max, "largest O")->capture_default_str();
  table->add_option("--norm", table_norm, "weighted2 | unweighted2 | inf")
      ->check(CLI::IsMember(kNorms))
      ->capture_default_str();
  table->add_option("--threads", spec.threads, "worker threads (0: all cores)");
  add_output_options(table, table_out);

  for (auto* sub : {selftest, h, hp, cs, solve, table}) {
    sub->add_option("--config", config, "flat key=value file; command-line flags win");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!config.empty()) apply_config(active, config);

    if (active == selftest) return cmd_selftest();

    if (active == h) {
      StudyHandle s;
      check(cbiem_study_h(gammas.data(), static_cast<int>(gammas.size()), points, h_dmax, &s.p));
      emit_study(s.p, h_out);
      return kExitOk;
    }
    if (active == hp) {
      StudyHandle s;
      check(cbiem_study_hp(hp_sigma, hp_dmax, &s.p));
      emit_study(s.p, hp_out);
      return kExitOk;
    }
    if (active == cs) {
      StudyHandle s;
      check(cbiem_study_contour(cs_sigma, cs_dmin, cs_dmax, &s.p));
      emit_study(s.p, cs_out);
      return kExitOk;
    }
    if (active == table) {
      spec.contour = kContours.at(table_contour.name);
      spec.contour_options = table_contour.options();
      spec.norm = kNorms.at(table_norm);
      StudyHandle s;
      check(cbiem_study_table(&spec, &s.p));
      emit_study(s.p, table_out);
      return kExitOk;
    }

    // solve
    ContourHandle contour;
    const cbiem_contour_options copts = solve_contour.options();
    check(cbiem_contour_create(kContours.at(solve_contour.name), &copts, &contour.p));
    cbiem_solve_options sopts;
    cbiem_solve_options_init(&sopts);
    sopts.depth = depth;
    sopts.sigma = sigma;
    sopts.order = order;
    sopts.split_imag = split == "imag";
    if (!graded.empty()) {
      sopts.graded_orders = graded.data();
      sopts.graded_count = static_cast<int>(graded.size());
    }
    SolutionHandle sol;
    check(cbiem_solve_power(contour.p, &sopts, alpha, &sol.p));
    int n = 0;
    double err = 0.0, cond = 0.0;
    int ill = 0;
    check(cbiem_solution_size(sol.p, &n));
    check(cbiem_solution_error(sol.p, kNorms.at(norm), &err));
    check(cbiem_solution_condition(sol.p, &cond, &ill));
    std::cout << "contour=" << solve_contour.name << " alpha=" << alpha << " sigma=" << sigma
              << " D=" << depth << " O=" << order << '\n';
    std::cout << "N=" << n << '\n';
    std::cout << "error_" << norm << '=' << fmt(err) << '\n';
    std::cout << "condition=" << fmt(cond) << '\n';
    if (ill) std::cerr << "warning: reduced system is ill-conditioned (condition " << fmt(cond) << ")\n";
    for (const std::string& p : probes) {
      const std::vector<double> z = parse_point(p);
      double re = 0.0, im = 0.0;
      check(cbiem_solution_eval(sol.p, z[0], z[1], 1, &re, &im));
      const std::complex<double> exact = std::pow(std::complex<double>(z[0], z[1]), alpha);
      std::cout << "probe " << z[0] << ',' << z[1] << ": W=" << fmt(re) << ',' << fmt(im)
                << " re_error=" << fmt(std::abs(re - exact.real())) << '\n';
    }
    if (!solve_csv.empty()) {
      std::vector<double> t(n), x(n), y(n), u(n), v(n), ve(n);
      check(cbiem_solution_nodes(sol.p, t.data(), x.data(), y.data()));
      check(cbiem_solution_values(sol.p, u.data(), v.data(), ve.data()));
      std::ostringstream os;
      os << "t,re,im,U,V_hat,V_exact\n";
      char buf[160];
      for (int k = 0; k < n; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t[k], x[k], y[k],
                      u[k], v[k], ve[k]);
        os << buf;
      }
      write_file(solve_csv, os.str());
    }
    return kExitOk;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
