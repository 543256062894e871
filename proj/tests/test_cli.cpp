#include "doctest.h"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "biortho/cli.hpp"
#include "biortho/dh_law.hpp"
#include "biortho/ensemble.hpp"
#include "biortho/error.hpp"
#include "biortho/report_io.hpp"
#include "biortho/special.hpp"
#include "biortho/svg.hpp"

using namespace biortho;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  const char* dir = std::getenv("BIORTHO_TEST_TMP");
  return (std::filesystem::path(dir ? dir : std::filesystem::temp_directory_path().string()) / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string as_text(double x) { return fmt::format("{:.17g}", x); }

std::string as_line(Complex z) { return fmt::format("{:.17g},{:.17g}\n", z.real(), z.imag()); }

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("usage and exit codes") {
  const Run none = run({});
  CHECK(none.code == cli::kDomainError);
  CHECK(none.err.find("usage") != std::string::npos);
  const Run bogus = run({"dh", "density", "--x", "1", "--bogus"});
  CHECK(bogus.code == cli::kDomainError);
  CHECK(bogus.err.find("usage") != std::string::npos);
  CHECK(run({"frobnicate"}).code == cli::kDomainError);
  CHECK(run({"dh", "quantile", "--x", "1.5"}).code == cli::kDomainError);
  CHECK(run({"sample-matrix", "--n", "0"}).code == cli::kDomainError);
  CHECK(run({"quantile-check", "--dist", "normal:0,1"}).code == cli::kDomainError);
  CHECK(run({"equilibrium", "--grid", "40", "--max-iter", "3"}).code == cli::kNumericalError);
  CHECK(run({"dh", "--help"}).code == cli::kOk);
}

TEST_CASE("dh subcommand") {
  const Run m = run({"dh", "moment", "--k", "3"});
  CHECK(m.code == cli::kOk);
  CHECK(m.out == "1.125\n");
  CHECK(std::stod(run({"dh", "moment", "--k", "3", "--numeric"}).out) == doctest::Approx(1.125).epsilon(1e-6));
  CHECK(std::stod(run({"dh", "density", "--x", "1"}).out) == doctest::Approx(dh_density(1.0)).epsilon(1e-15));
  CHECK(std::stod(run({"dh", "cdf", "--x", "1"}).out) == doctest::Approx(dh_cdf(1.0)).epsilon(1e-15));
  const Run s = run({"dh", "stieltjes", "--z", "0,1"});
  const Complex g = dh_stieltjes({0.0, 1.0});
  CHECK(s.out == as_line(g));
  const Run table = run({"dh", "density", "--csv", "--from", "0.5", "--to", "1", "--points", "3"});
  CHECK(table.out.rfind("x,value\n0.5,", 0) == 0);
  CHECK(count(table.out, "\n") == 4);
}

TEST_CASE("lambertw subcommand") {
  const Run exact = run({"lambertw", "--z", "2.718281828459045,0"});
  REQUIRE(exact.code == cli::kOk);
  CHECK(std::abs(std::stod(exact.out) - 1.0) <= 1e-12);
  // The eight-decimal input sits about 8e-11 below the true root at e.
  const Run truncated = run({"lambertw", "--z", "2.718281828,0"});
  CHECK(std::abs(std::stod(truncated.out) - 1.0) <= 1e-10);
  const Run cut = run({"lambertw", "--z", "-1,0"});
  const Complex w = lambert_w0_cut_above(-1.0);
  CHECK(cut.out == as_line(w));
  CHECK(run({"lambertw", "--z", "1"}).code == cli::kDomainError);
}

TEST_CASE("sample-matrix: CSV output is deterministic and re-readable") {
  const Run a = run({"sample-matrix", "--n", "16", "--trials", "3", "--seed", "5"});
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == run({"sample-matrix", "--n", "16", "--trials", "3", "--seed", "5"}).out);
  CHECK(a.out != run({"sample-matrix", "--n", "16", "--trials", "3", "--seed", "6"}).out);
  std::istringstream in(a.out);
  const auto rows = read_points_csv(in);
  REQUIRE(rows.size() == 3);
  const auto direct = sample_spectrum({16, 0.0, 1.0, 5}, 1);
  for (std::size_t k = 0; k < 16; ++k) CHECK(rows[1][k] == direct.point(k));
}

TEST_CASE("sample-matrix with files and plot") {
  const std::string csv = tmp("spectra.csv");
  const std::string svg = tmp("spectra.svg");
  const std::vector<std::string> args{"sample-matrix", "--n", "64", "--trials", "4", "--out", csv, "--plot", svg};
  const Run r = run(args);
  REQUIRE(r.code == cli::kOk);
  const Json j = Json::parse(r.out);
  CHECK(j.at("subcommand") == "sample-matrix");
  CHECK(j.at("mean_first_moment").get<double>() > 0.0);
  const std::string first_csv = slurp(csv);
  const std::string first_svg = slurp(svg);
  CHECK(count(first_svg, "<path class=\"histogram\"") == 1);
  CHECK(count(first_svg, "<path class=\"curve\"") == 1);

  // Replaying the serialized configuration reproduces every output byte for byte.
  const RunConfig cfg = run_config_from_json(j);
  CHECK(cfg.out == csv);
  CHECK(cfg.plot == svg);
  const Run again = run(to_argv(cfg));
  CHECK(again.out == r.out);
  CHECK(slurp(csv) == first_csv);
  CHECK(slurp(svg) == first_svg);
}

TEST_CASE("sample-gas") {
  const std::string csv = tmp("gas.csv");
  const Run r = run({"sample-gas", "--n", "6", "--steps", "200", "--burn-in", "200", "--chains", "2", "--out", csv});
  REQUIRE(r.code == cli::kOk);
  const Json j = Json::parse(r.out);
  CHECK(j.at("acceptance").get<double>() > 0.0);
  std::ifstream in(csv);
  const auto rows = read_points_csv(in);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.size() == 6);
    for (double x : row) CHECK(x > 0.0);
  }
  CHECK(run({"sample-gas", "--n", "4", "--g", "exp"}).code == cli::kDomainError);
}

TEST_CASE("equilibrium JSON round trip") {
  const std::string path = tmp("eq.json");
  const std::string svg = tmp("eq.svg");
  const Run r = run({"equilibrium", "--grid", "60", "--domain", "1e-4,4", "--out", path, "--plot", svg});
  REQUIRE(r.code == cli::kOk);
  const Json j = read_json_file(path);
  const SolverReport rep = solver_report_from_json(j);
  CHECK(rep.converged);
  CHECK(rep.minimizer.size() == 60);
  CHECK(rep.b_eq == j.at("b_eq").get<double>());
  CHECK(rep.kkt_residual <= 1e-6);
  GasConfig cfg;
  cfg.g = GFunction::log();
  CHECK(rate_I(rep.minimizer, cfg) == doctest::Approx(rep.objective).epsilon(1e-12));
  CHECK(kkt_residual(rep.minimizer, cfg) == doctest::Approx(rep.kkt_residual).epsilon(1e-6));
  const std::string svg_text = slurp(svg);
  CHECK(count(svg_text, "<path class=\"histogram\"") == 1);

  const std::string first = slurp(path);
  CHECK(run(to_argv(run_config_from_json(j))).code == cli::kOk);
  CHECK(slurp(path) == first);
}

TEST_CASE("rate-largest") {
  const Json below = Json::parse(run({"rate-largest", "--grid", "60", "--domain", "1e-4,4", "--x", "0.5"}).out);
  CHECK(below.at("j").is_null());
  CHECK(below.at("j_infinite") == true);
  const double b_eq = below.at("b_eq").get<double>();
  const Json at = Json::parse(run({"rate-largest", "--grid", "60", "--domain", "1e-4,4", "--x",
                                   as_text(b_eq)}).out);
  CHECK(at.at("j").get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  const Run table = run({"rate-largest", "--grid", "60", "--domain", "1e-4,4", "--from", "3", "--to", "4", "--points", "3"});
  CHECK(table.out.rfind("x,j\n", 0) == 0);
}

TEST_CASE("quantile-check JSON") {
  const Run r = run({"quantile-check", "--dist", "uniform:1,2", "--n", "100", "--eps", "0.1"});
  REQUIRE(r.code == cli::kOk);
  const Json j = Json::parse(r.out);
  CHECK(j.at("A_max").get<double>() == doctest::Approx(1.5));
  CHECK(j.at("fraction").get<double>() > 0.0);
  CHECK(j.at("bl_bound").get<double>() <= 0.01 + 2e-4);
  CHECK(j.at("spacing_ok") == true);
  CHECK(j.at("gap").get<double>() == doctest::Approx(j.at("gap_g").get<double>()));
  CHECK(run_config_from_json(j).subcommand == "quantile-check");
}

TEST_CASE("verify runs a single criterion") {
  const Run r = run({"verify", "--ac", "1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("AC1 PASS", 0) == 0);
  CHECK(r.out.find("1/1 criteria passed") != std::string::npos);
  CHECK(run({"verify", "--ac", "11"}).code == cli::kDomainError);
}

TEST_CASE("SVG emission") {
  const Curve c = sample_curve(dh_density, 0.0, kE, 200);
  CHECK(c.x.size() == 200);
  PlotOptions po;
  po.title = "density";
  const std::string svg = emit_svg(std::nullopt, c, po);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "<path") == 1);
  CHECK(count(svg, "<path class=\"curve\"") == 1);
  CHECK(svg == emit_svg(std::nullopt, c, po));
  CHECK_THROWS_AS(emit_svg(std::nullopt, std::nullopt, po), DomainError);
  CHECK_THROWS_AS(emit_svg(std::nullopt, Curve{}, po), DomainError);

  const auto spectrum = sample_spectrum({512, 0.0, 1.0, 3}, 0);
  const Histogram h = density_histogram(spectrum.points(), 60);
  CHECK(std::abs(histogram_area(h) - 1.0) <= 1e-9);
  const Histogram fixed = density_histogram(spectrum.points(), 40, 0.0, kE);
  CHECK(std::abs(histogram_area(fixed) - 1.0) <= 1e-9);
  const std::string both = emit_svg(h, c, po);
  CHECK(count(both, "<path") == 2);

  const GridMeasure grid({0.5, 1.0, 2.0, 3.0}, {0.1, 0.4, 0.3, 0.2});
  CHECK(std::abs(histogram_area(grid_histogram(grid)) - 1.0) <= 1e-12);
}

TEST_CASE("report I/O") {
  RunConfig cfg;
  cfg.subcommand = "dh";
  cfg.params = {{"action", "moment"}, {"k", "3"}, {"numeric", "true"}, {"csv", "false"}, {"from", ""}};
  Json j;
  put_run_config(j, cfg);
  CHECK(j.at("seed").is_null());
  const RunConfig back = run_config_from_json(j);
  CHECK(back.params == cfg.params);
  CHECK_FALSE(back.seed.has_value());
  CHECK(to_argv(back) == std::vector<std::string>{"dh", "moment", "--k", "3", "--numeric"});
  cfg.seed = 9;
  cfg.out = "a.csv";
  CHECK(to_argv(cfg) == std::vector<std::string>{"dh", "moment", "--k", "3", "--numeric", "--seed", "9", "--out", "a.csv"});
  CHECK_THROWS_AS(run_config_from_json(Json::parse("{\"seed\": 1}")), DomainError);

  std::ostringstream os;
  write_points_csv(os, "trial", {EmpiricalMeasure({0.1, 1.0 / 3.0}), EmpiricalMeasure({2.0, 1e-300})});
  CHECK(os.str().rfind("trial,x1,x2\n0,", 0) == 0);
  std::istringstream is(os.str());
  const auto rows = read_points_csv(is);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][1] == 1.0 / 3.0);
  CHECK(rows[1][0] == 1e-300);
  CHECK(dump_json(Json{{"a", 1}}) == "{\n  \"a\": 1\n}\n");
}
