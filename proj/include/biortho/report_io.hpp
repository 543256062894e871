#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "biortho/equilibrium.hpp"
#include "biortho/measures.hpp"
#include "biortho/model.hpp"

namespace biortho {

using Json = nlohmann::ordered_json;

/// Everything needed to repeat a CLI run: the subcommand and every option
/// value (defaults included) as text, keyed by flag name in snake_case.
/// A positional action such as `dh density` is stored under "action".
/// --out, --plot and --seed live in their own fields, not in params; seed is
/// empty for subcommands without one.
struct RunConfig {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> params;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string plot;

  const std::string* find(const std::string& key) const;
};

/// Flat object: subcommand, seed (null when absent), out, plot, and one "arg_<key>" entry per
/// parameter.
void put_run_config(Json& j, const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);
/// Argument vector that replays the run through cli::dispatch.
std::vector<std::string> to_argv(const RunConfig& cfg);

Json solver_report_json(const SolverReport& report, const GasConfig& cfg);
/// Rebuilds minimizer, objective, KKT residual, b_eq, kappa, iterations and
/// convergence flag.
SolverReport solver_report_from_json(const Json& j);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);
/// Two-space indentation, trailing newline.
std::string dump_json(const Json& j);

/// Header "<label>,x1,...,xn", then one row per measure: index and sorted
/// points at 17 significant digits. All measures must have the same size.
void write_points_csv(std::ostream& os, const std::string& label, const std::vector<EmpiricalMeasure>& rows);
std::vector<std::vector<double>> read_points_csv(std::istream& is);

}  // namespace biortho
