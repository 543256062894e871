#include "biortho/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "biortho/acceptance.hpp"
#include "biortho/dh_law.hpp"
#include "biortho/ensemble.hpp"
#include "biortho/equilibrium.hpp"
#include "biortho/error.hpp"
#include "biortho/gas_sampler.hpp"
#include "biortho/proof_lab.hpp"
#include "biortho/report_io.hpp"
#include "biortho/special.hpp"
#include "biortho/svg.hpp"

namespace biortho::cli {
namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw DomainError(fmt::format("{} must be 'A,B', got '{}'", what, text));
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const double x = std::stod(a, &used_a);
    const double y = std::stod(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw DomainError(fmt::format("{} must be 'A,B', got '{}'", what, text));
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw DomainError("failed writing '" + path + "'");
}

// Every option of the chosen subcommand, defaults included.
RunConfig capture(const CLI::App& sub) {
  RunConfig cfg;
  cfg.subcommand = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help") continue;
    std::string value;
    if (opt->get_type_size() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    std::string key = name;
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "out") {
      cfg.out = value;
    } else if (key == "plot") {
      cfg.plot = value;
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else {
      cfg.params.emplace_back(key, value);
    }
  }
  return cfg;
}

struct Solve {
  std::string g = "log";
  std::string v = "linear:1";
  int grid = 400;
  std::string domain;
  double tol = 1e-6;
  int max_iter = 200000;

  void add(CLI::App* app) {
    app->add_option("--g", g, "interaction map: power:T|log|asinh2|exp|id");
    app->add_option("--V", v, "potential: linear:A|poly:c0,c1,...");
    app->add_option("--grid", grid, "number of grid nodes")->check(CLI::Range(8, 100000));
    app->add_option("--domain", domain, "grid domain LO,HI (default: 1e-4 and an automatic upper end)");
    app->add_option("--tol", tol, "KKT tolerance")->check(CLI::PositiveNumber);
    app->add_option("--max-iter", max_iter, "iteration cap")->check(CLI::PositiveNumber);
  }

  GasConfig config() const {
    GasConfig cfg;
    cfg.g = GFunction::parse(g);
    cfg.v = Potential::parse(v);
    return cfg;
  }

  SolverReport run(const GasConfig& cfg) const {
    double lo = 1e-4;
    double hi = 0.0;
    if (!domain.empty()) {
      std::tie(lo, hi) = parse_pair(domain, "--domain");
      if (!(lo > 0.0) || !(hi > lo)) throw DomainError("--domain needs 0 < LO < HI");
    } else {
      hi = choose_domain_hi(cfg, lo);
    }
    SolverOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    return minimize_I(cfg, default_grid(grid, lo, hi), options);
  }
};

bool is_dh(const GasConfig& cfg) { return cfg.g.kind() == GFunction::Kind::kLog && cfg.v.name() == "linear:1"; }

// Clip height for plots of measures with a spike at the origin: the tallest
// bar away from the left 5% of the range.
double bulk_height(const Histogram& h) {
  const double lo = h.edges.front();
  const double cut = lo + 0.05 * (h.edges.back() - lo);
  double top = 0.0;
  for (std::size_t k = 0; k < h.heights.size(); ++k) {
    if (h.edges[k] >= cut) top = std::max(top, h.heights[k]);
  }
  return top > 0.0 ? 1.3 * top : 1.0;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"biortho: numerical laboratory for biorthogonal ensembles", "biortho"};
    app.option_defaults()->always_capture_default();
    std::vector<CLI::App*> subs = {add_sample_matrix(app), add_sample_gas(app), add_dh(app), add_equilibrium(app),
                                   add_rate_largest(app), add_quantile_check(app), add_lambertw(app),
                                   add_verify(app)};
    if (args.empty()) {
      err_ << usage();
      return kDomainError;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      app.exit(e, out_, err_);
      return kOk;
    } catch (const CLI::CallForAllHelp& e) {
      app.exit(e, out_, err_);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n\n" << usage();
      return kDomainError;
    }
    CLI::App* chosen = nullptr;
    for (CLI::App* s : subs) {
      if (s->parsed()) chosen = s;
    }
    if (!chosen) {
      err_ << usage();
      return kDomainError;
    }
    try {
      return actions_.at(chosen->get_name())(capture(*chosen));
    } catch (const DomainError& e) {
      err_ << "error: " << e.what() << '\n';
      return kDomainError;
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << '\n';
      return kDomainError;
    } catch (const std::out_of_range& e) {
      err_ << "error: " << e.what() << '\n';
      return kDomainError;
    } catch (const NumericalError& e) {
      err_ << "numerical failure: " << e.what() << '\n';
      return kNumericalError;
    } catch (const std::exception& e) {
      err_ << "numerical failure: " << e.what() << '\n';
      return kNumericalError;
    }
  }

 private:
  using Action = std::function<int(const RunConfig&)>;

  CLI::App* add_sample_matrix(CLI::App& app) {
    auto* s = app.add_subcommand("sample-matrix", "sample spectra of (T T*)/n from the triangular matrix model");
    auto a = std::make_shared<EnsembleParams>();
    auto trials = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    auto plot = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>("graded");
    s->add_option("--n", a->n, "matrix size")->required()->check(CLI::PositiveNumber);
    s->add_option("--theta", a->theta, "theta >= 0");
    s->add_option("--b", a->b, "b > 0");
    s->add_option("--trials", *trials, "number of independent trials")->check(CLI::PositiveNumber);
    s->add_option("--seed", a->seed, "random seed");
    s->add_option("--method", *method, "graded (SVD of T) or product (eigenvalues of T T*)")
        ->check(CLI::IsMember({"graded", "product"}));
    s->add_option("--out", *out, "CSV output (stdout when absent)");
    s->add_option("--plot", *plot, "SVG histogram of the pooled spectrum");
    actions_["sample-matrix"] = [this, a, trials, out, plot, method](const RunConfig& rc) {
      a->validate();
      const auto m = *method == "product" ? SpectrumMethod::kHermitianProduct : SpectrumMethod::kGraded;
      const auto spectra = sample_spectra(*a, *trials, m);
      std::ostringstream csv;
      write_points_csv(csv, "trial", spectra);
      if (out->empty()) {
        out_ << csv.str();
      } else {
        write_text_file(*out, csv.str());
        std::vector<double> m1;
        std::vector<double> m2;
        std::vector<double> top;
        for (const auto& sp : spectra) {
          m1.push_back(sp.moment(1));
          m2.push_back(sp.moment(2));
          top.push_back(largest_particle(sp));
        }
        auto avg = [](const std::vector<double>& v) {
          double t = 0.0;
          for (double x : v) t += x;
          return t / static_cast<double>(v.size());
        };
        std::sort(top.begin(), top.end());
        Json j;
        put_run_config(j, rc);
        j["mean_first_moment"] = avg(m1);
        j["mean_second_moment"] = avg(m2);
        j["median_largest"] = top.size() % 2 ? top[top.size() / 2] : 0.5 * (top[top.size() / 2 - 1] + top[top.size() / 2]);
        out_ << dump_json(j);
      }
      if (!plot->empty()) {
        const auto pooled = merge(spectra);
        const auto hist = density_histogram(pooled.points(), 60, 0.0, pooled.points().back());
        PlotOptions po;
        po.title = fmt::format("spectrum, n = {}, theta = {}, b = {}, {} trials", a->n, num(a->theta), num(a->b),
                               *trials);
        std::optional<Curve> overlay;
        if (a->theta == 0.0) {
          overlay = sample_curve(dh_density, 1e-3, kE, 200);
          po.y_max = 2.0;
        } else {
          po.y_max = bulk_height(hist);
        }
        write_text_file(*plot, emit_svg(hist, overlay, po));
      }
      return kOk;
    };
    return s;
  }

  CLI::App* add_sample_gas(CLI::App& app) {
    auto* s = app.add_subcommand("sample-gas", "Metropolis sampling of the two-interaction gas");
    struct Args {
      int n = 0;
      std::string g = "id";
      std::string v = "linear:1";
      double b = 1.0;
      std::uint64_t steps = 1000;
      std::uint64_t burn_in = 1000;
      int chains = 1;
      std::uint64_t seed = 0;
      std::string out;
      std::string plot;
    };
    auto a = std::make_shared<Args>();
    s->add_option("--n", a->n, "particle count")->required()->check(CLI::PositiveNumber);
    s->add_option("--g", a->g, "interaction map: power:T|log|asinh2|exp|id");
    s->add_option("--V", a->v, "potential: linear:A|poly:c0,c1,...");
    s->add_option("--b", a->b, "weight exponent b > 0")->check(CLI::PositiveNumber);
    s->add_option("--steps", a->steps, "retained sweeps")->check(CLI::PositiveNumber);
    s->add_option("--burn-in", a->burn_in, "adaptive burn-in sweeps")->check(CLI::PositiveNumber);
    s->add_option("--chains", a->chains, "independent chains")->check(CLI::PositiveNumber);
    s->add_option("--seed", a->seed, "random seed");
    s->add_option("--out", a->out, "CSV output (stdout when absent)");
    s->add_option("--plot", a->plot, "SVG histogram of the pooled final states");
    actions_["sample-gas"] = [this, a](const RunConfig& rc) {
      GasConfig cfg;
      cfg.n = a->n;
      cfg.g = GFunction::parse(a->g);
      cfg.v = Potential::parse(a->v);
      cfg.b = a->b;
      const auto results = mcmc_sample_chains(cfg, a->steps, a->burn_in, a->seed, a->chains);
      std::vector<EmpiricalMeasure> states;
      double acceptance = 0.0;
      double burn = 0.0;
      std::vector<double> steps;
      for (const auto& r : results) {
        states.push_back(r.sample);
        acceptance += r.diagnostics.acceptance / results.size();
        burn += r.diagnostics.burn_in_acceptance / results.size();
        steps.insert(steps.end(), r.diagnostics.step_sizes.begin(), r.diagnostics.step_sizes.end());
      }
      std::sort(steps.begin(), steps.end());
      std::ostringstream csv;
      write_points_csv(csv, "chain", states);
      if (a->out.empty()) {
        out_ << csv.str();
      } else {
        write_text_file(a->out, csv.str());
        Json j;
        put_run_config(j, rc);
        j["acceptance"] = acceptance;
        j["burn_in_acceptance"] = burn;
        j["median_step_size"] = steps[steps.size() / 2];
        out_ << dump_json(j);
      }
      if (!a->plot.empty()) {
        const auto pooled = merge(states);
        const auto hist = density_histogram(pooled.points(), 40, 0.0, pooled.points().back());
        PlotOptions po;
        po.title = fmt::format("gas, n = {}, g = {}, V = {}, {} chains", cfg.n, cfg.g.name(), cfg.v.name(), a->chains);
        write_text_file(a->plot, emit_svg(hist, std::nullopt, po));
      }
      return kOk;
    };
    return s;
  }

  CLI::App* add_dh(CLI::App& app) {
    auto* s = app.add_subcommand("dh", "Dykema-Haagerup law: density, cdf, quantile, moments, transforms");
    struct Args {
      std::string action;
      std::optional<double> x;
      int k = -1;
      bool numeric = false;
      std::string z;
      bool csv = false;
      std::optional<double> from;
      std::optional<double> to;
      int points = 101;
      std::string out;
      std::string plot;
    };
    auto a = std::make_shared<Args>();
    s->add_option("action", a->action, "density|cdf|quantile|moment|stieltjes|rtransform")
        ->required()
        ->check(CLI::IsMember({"density", "cdf", "quantile", "moment", "stieltjes", "rtransform"}));
    s->add_option("--x", a->x, "evaluation point (a probability for quantile)");
    s->add_option("--k", a->k, "moment order");
    s->add_flag("--numeric", a->numeric, "moment by quadrature instead of k^k/(k+1)!");
    s->add_option("--z", a->z, "complex argument RE,IM");
    s->add_flag("--csv", a->csv, "table over [--from, --to] with --points rows");
    s->add_option("--from", a->from, "table start");
    s->add_option("--to", a->to, "table end");
    s->add_option("--points", a->points, "table rows")->check(CLI::Range(2, 1000000));
    s->add_option("--out", a->out, "write the table to a file instead of stdout");
    s->add_option("--plot", a->plot, "SVG of the density over (0, e) (density only)");
    actions_["dh"] = [this, a](const RunConfig&) {
      const std::string& act = a->action;
      auto eval = [&](double x) {
        if (act == "density") return dh_density(x);
        if (act == "cdf") return dh_cdf(x);
        return dh_quantile(x);
      };
      if (a->csv) {
        if (act != "density" && act != "cdf" && act != "quantile") {
          throw DomainError("--csv applies to density, cdf and quantile");
        }
        const bool prob = act == "quantile";
        const double lo = a->from.value_or(prob ? 0.001 : 0.0);
        const double hi = a->to.value_or(prob ? 0.999 : kE);
        if (!(hi > lo)) throw DomainError("--csv needs --from < --to");
        std::string table = prob ? "p,value\n" : "x,value\n";
        for (int i = 0; i < a->points; ++i) {
          const double x = lo + (hi - lo) * i / (a->points - 1);
          table += num(x) + "," + num(eval(x)) + "\n";
        }
        if (a->out.empty()) {
          out_ << table;
        } else {
          write_text_file(a->out, table);
        }
      } else if (act == "moment") {
        if (a->k < 0) throw DomainError("dh moment needs --k K >= 0");
        out_ << num(a->numeric ? dh_moment_numeric(a->k) : dh_moment_exact(a->k)) << '\n';
      } else if (act == "stieltjes" || act == "rtransform") {
        if (a->z.empty()) throw DomainError("dh " + act + " needs --z RE,IM");
        const auto [re, im] = parse_pair(a->z, "--z");
        const Complex w = act == "stieltjes" ? dh_stieltjes({re, im}) : dh_r_transform({re, im});
        out_ << num(w.real()) << ',' << num(w.imag()) << '\n';
      } else {
        if (!a->x) throw DomainError("dh " + act + " needs --x VALUE");
        out_ << num(eval(*a->x)) << '\n';
      }
      if (!a->plot.empty()) {
        if (act != "density") throw DomainError("--plot applies to dh density");
        PlotOptions po;
        po.title = "Dykema-Haagerup density";
        po.y_max = 2.0;
        write_text_file(a->plot, emit_svg(std::nullopt, sample_curve(dh_density, 1e-3, kE, 200), po));
      }
      return kOk;
    };
    return s;
  }

  CLI::App* add_equilibrium(CLI::App& app) {
    auto* s = app.add_subcommand("equilibrium", "minimize the rate function I on a grid");
    auto a = std::make_shared<Solve>();
    auto out = std::make_shared<std::string>();
    auto plot = std::make_shared<std::string>();
    a->add(s);
    s->add_option("--out", *out, "JSON report (stdout when absent)");
    s->add_option("--plot", *plot, "SVG of the minimizer as a density histogram");
    actions_["equilibrium"] = [this, a, out, plot](const RunConfig& rc) {
      const GasConfig cfg = a->config();
      const SolverReport report = a->run(cfg);
      Json j;
      put_run_config(j, rc);
      j.update(solver_report_json(report, cfg));
      if (out->empty()) {
        out_ << dump_json(j);
      } else {
        write_json_file(*out, j);
        out_ << fmt::format("objective {} kkt_residual {} b_eq {} iterations {} converged {}\n", num(report.objective),
                            num(report.kkt_residual), num(report.b_eq), report.iterations, report.converged);
      }
      if (!plot->empty()) {
        const auto hist = grid_histogram(report.minimizer);
        PlotOptions po;
        po.title = fmt::format("equilibrium measure, g = {}, V = {}", cfg.g.name(), cfg.v.name());
        std::optional<Curve> overlay;
        if (is_dh(cfg)) {
          overlay = sample_curve(dh_density, 1e-3, kE, 200);
          po.y_max = 2.0;
        } else {
          po.y_max = bulk_height(hist);
        }
        write_text_file(*plot, emit_svg(hist, overlay, po));
      }
      if (!report.converged) {
        err_ << "solver did not reach the tolerance within --max-iter\n";
        return kNumericalError;
      }
      return kOk;
    };
    return s;
  }

  CLI::App* add_rate_largest(CLI::App& app) {
    auto* s = app.add_subcommand("rate-largest", "rate function J of the largest particle");
    auto a = std::make_shared<Solve>();
    struct Args {
      std::optional<double> x;
      std::optional<double> from;
      std::optional<double> to;
      int points = 21;
      std::string out;
    };
    auto r = std::make_shared<Args>();
    a->add(s);
    s->add_option("--x", r->x, "evaluation point");
    s->add_option("--from", r->from, "table start (default b_eq)");
    s->add_option("--to", r->to, "table end (default 3 b_eq)");
    s->add_option("--points", r->points, "table rows")->check(CLI::Range(2, 1000000));
    s->add_option("--out", r->out, "write the table to a file instead of stdout");
    actions_["rate-largest"] = [this, a, r](const RunConfig& rc) {
      const GasConfig cfg = a->config();
      const SolverReport report = a->run(cfg);
      if (!report.converged) throw NumericalError("equilibrium solver did not reach the tolerance");
      const LargestParticleRate j(report.minimizer, cfg);
      auto text = [](double v) { return std::isinf(v) ? std::string("inf") : num(v); };
      if (r->x) {
        const double value = j(*r->x);
        Json out;
        put_run_config(out, rc);
        out["b_eq"] = j.b_eq();
        out["kappa"] = j.kappa();
        out["x"] = *r->x;
        out["j"] = std::isinf(value) ? Json(nullptr) : Json(value);
        out["j_infinite"] = std::isinf(value);
        out_ << dump_json(out);
        return kOk;
      }
      const double lo = r->from.value_or(j.b_eq());
      const double hi = r->to.value_or(3.0 * j.b_eq());
      if (!(hi > lo)) throw DomainError("rate-largest needs --from < --to");
      std::string table = "x,j\n";
      for (int i = 0; i < r->points; ++i) {
        const double x = lo + (hi - lo) * i / (r->points - 1);
        table += num(x) + "," + text(j(x)) + "\n";
      }
      if (r->out.empty()) {
        out_ << table;
      } else {
        write_text_file(r->out, table);
      }
      return kOk;
    };
    return s;
  }

  CLI::App* add_quantile_check(CLI::App& app) {
    auto* s = app.add_subcommand("quantile-check", "quantile-discretization estimates for a nice measure");
    struct Args {
      std::string dist = "uniform:1,2";
      int n = 1000;
      double eps = 0.1;
      std::string g = "id";
      int m = 10000;
    };
    auto a = std::make_shared<Args>();
    s->add_option("--dist", a->dist, "uniform:A,B or dh-trunc:DELTA");
    s->add_option("--n", a->n, "number of quantile cells")->check(CLI::Range(2, 100000));
    s->add_option("--eps", a->eps, "ratio slack")->check(CLI::PositiveNumber);
    s->add_option("--g", a->g, "interaction map: power:T|log|asinh2|exp|id");
    s->add_option("--m", a->m, "reference points for the BL distance")->check(CLI::PositiveNumber);
    actions_["quantile-check"] = [this, a](const RunConfig& rc) {
      const NiceMeasure sigma = NiceMeasure::parse(a->dist);
      const GFunction g = GFunction::parse(a->g);
      const auto grid = build_quantile_grid(sigma, a->n);
      const auto spacing = check_spacing_bounds(grid, sigma.density_bound());
      const auto stats = ratio_statistics(grid, g, a->eps);
      const auto energy = quadrature_energy(sigma, g);
      double e_half = 0.5 * energy.energy;
      if (a->dist.rfind("uniform:", 0) == 0) e_half = 0.5 * (1.5 - std::log(sigma.b() - sigma.a()));
      const auto gap = energy_gap(grid, g, e_half, 0.5 * energy.energy_g);
      const double bl = configuration_bl_check(grid, sigma, a->m);
      Json j;
      put_run_config(j, rc);
      j["A_max"] = stats.a_max;
      j["fraction"] = stats.fraction;
      j["gap"] = gap.gap;
      j["bl_bound"] = bl;
      j["A_max_g"] = stats.a_max_g;
      j["fraction_g"] = stats.fraction_g;
      j["gap_g"] = gap.gap_g;
      j["density_bound"] = sigma.density_bound();
      j["spacing_ok"] = spacing.ok;
      j["spacing_worst_ratio"] = spacing.worst_ratio;
      out_ << dump_json(j);
      return kOk;
    };
    return s;
  }

  CLI::App* add_lambertw(CLI::App& app) {
    auto* s = app.add_subcommand("lambertw", "principal branch W0 at a complex point");
    auto z = std::make_shared<std::string>();
    s->add_option("--z", *z, "argument RE,IM")->required();
    actions_["lambertw"] = [this, z](const RunConfig&) {
      const auto [re, im] = parse_pair(*z, "--z");
      const Complex w = lambert_w0_complex({re, im});
      out_ << num(w.real()) << ',' << num(w.imag()) << '\n';
      return kOk;
    };
    return s;
  }

  CLI::App* add_verify(CLI::App& app) {
    auto* s = app.add_subcommand("verify", "run the acceptance suite");
    auto ids = std::make_shared<std::vector<int>>();
    s->add_option("--ac", *ids, "criteria to run (repeatable; default all)");
    actions_["verify"] = [this, ids](const RunConfig&) {
      const auto all = acceptance_ids();
      std::vector<int> chosen = ids->empty() ? all : *ids;
      for (int id : chosen) {
        if (std::find(all.begin(), all.end(), id) == all.end()) {
          throw DomainError(fmt::format("no acceptance criterion {}", id));
        }
      }
      return run_acceptance(chosen, out_) == 0 ? kOk : kDomainError;
    };
    return s;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::map<std::string, Action> actions_;
};

}  // namespace

std::string usage() {
  return "usage: biortho <subcommand> [options]\n"
         "\n"
         "subcommands:\n"
         "  sample-matrix   --n N [--theta T] [--b B] [--trials K] [--seed S] [--out FILE.csv] [--plot FILE.svg]\n"
         "  sample-gas      --n N [--g G] [--V V] [--b B] [--steps M] [--burn-in Q] [--chains C] [--seed S]\n"
         "                  [--out FILE.csv] [--plot FILE.svg]\n"
         "  dh              density|cdf|quantile --x X | moment --k K [--numeric] | stieltjes|rtransform --z RE,IM\n"
         "                  [--csv --from A --to B --points P] [--plot FILE.svg]\n"
         "  equilibrium     [--g G] [--V V] [--grid N] [--domain LO,HI] [--tol T] [--max-iter M] [--out FILE.json]\n"
         "                  [--plot FILE.svg]\n"
         "  rate-largest    [solver options as for equilibrium] --x X | [--from A --to B --points P]\n"
         "  quantile-check  [--dist uniform:A,B|dh-trunc:D] [--n N] [--eps E] [--g G]\n"
         "  lambertw        --z RE,IM\n"
         "  verify          [--ac ID]...\n"
         "\n"
         "G: power:T | log | asinh2 | exp | id      V: linear:A | poly:c0,c1,...\n"
         "Run 'biortho <subcommand> --help' for details. BIORTHO_THREADS caps the worker count.\n";
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  return runner.run(args);
}

int dispatch(const std::vector<std::string>& args) { return dispatch(args, std::cout, std::cerr); }

}  // namespace biortho::cli
