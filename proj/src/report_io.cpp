#include "biortho/report_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "biortho/error.hpp"

namespace biortho {
namespace {

constexpr const char* kArgPrefix = "arg_";

std::string kebab(std::string s) {
  for (char& ch : s) {
    if (ch == '_') ch = '-';
  }
  return s;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

const std::string* RunConfig::find(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return &v;
  }
  return nullptr;
}

void put_run_config(Json& j, const RunConfig& cfg) {
  j["subcommand"] = cfg.subcommand;
  if (cfg.seed) {
    j["seed"] = *cfg.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["out"] = cfg.out;
  j["plot"] = cfg.plot;
  for (const auto& [k, v] : cfg.params) j[kArgPrefix + k] = v;
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig cfg;
  try {
    cfg.subcommand = j.at("subcommand").get<std::string>();
    if (!j.at("seed").is_null()) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.out = j.at("out").get<std::string>();
    cfg.plot = j.at("plot").get<std::string>();
    for (const auto& [key, value] : j.items()) {
      if (key.rfind(kArgPrefix, 0) == 0) cfg.params.emplace_back(key.substr(4), value.get<std::string>());
    }
  } catch (const Json::exception& e) {
    throw DomainError(std::string("run config: ") + e.what());
  }
  return cfg;
}

std::vector<std::string> to_argv(const RunConfig& cfg) {
  std::vector<std::string> argv{cfg.subcommand};
  if (const std::string* action = cfg.find("action")) argv.push_back(*action);
  for (const auto& [k, v] : cfg.params) {
    if (k == "action") continue;
    if (v == "true") {
      argv.push_back("--" + kebab(k));
    } else if (v != "false" && !v.empty()) {
      argv.push_back("--" + kebab(k));
      argv.push_back(v);
    }
  }
  if (cfg.seed) {
    argv.push_back("--seed");
    argv.push_back(std::to_string(*cfg.seed));
  }
  for (const auto& [flag, value] : {std::pair{"--out", &cfg.out}, std::pair{"--plot", &cfg.plot}}) {
    if (!value->empty()) {
      argv.push_back(flag);
      argv.push_back(*value);
    }
  }
  return argv;
}

Json solver_report_json(const SolverReport& report, const GasConfig& cfg) {
  Json j;
  j["g"] = cfg.g.name();
  j["v"] = cfg.v.name();
  j["objective"] = report.objective;
  j["kkt_residual"] = report.kkt_residual;
  j["b_eq"] = report.b_eq;
  j["kappa"] = report.kappa;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  const auto nodes = report.minimizer.nodes();
  const auto weights = report.minimizer.weights();
  j["nodes"] = std::vector<double>(nodes.begin(), nodes.end());
  j["weights"] = std::vector<double>(weights.begin(), weights.end());
  return j;
}

SolverReport solver_report_from_json(const Json& j) {
  SolverReport r;
  try {
    r.minimizer = GridMeasure(j.at("nodes").get<std::vector<double>>(), j.at("weights").get<std::vector<double>>());
    r.objective = j.at("objective").get<double>();
    r.kkt_residual = j.at("kkt_residual").get<double>();
    r.b_eq = j.at("b_eq").get<double>();
    r.kappa = j.at("kappa").get<double>();
    r.iterations = j.at("iterations").get<int>();
    r.converged = j.at("converged").get<bool>();
  } catch (const Json::exception& e) {
    throw DomainError(std::string("solver report: ") + e.what());
  }
  return r;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open '" + path + "' for writing");
  os << dump_json(j);
  if (!os) throw DomainError("failed writing '" + path + "'");
}

Json read_json_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(is);
  } catch (const Json::exception& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_points_csv(std::ostream& os, const std::string& label, const std::vector<EmpiricalMeasure>& rows) {
  if (rows.empty()) throw DomainError("write_points_csv: no rows");
  const std::size_t n = rows.front().size();
  std::string line = label;
  for (std::size_t i = 1; i <= n; ++i) line += fmt::format(",x{}", i);
  os << line << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw DomainError("write_points_csv: rows differ in size");
    line = fmt::format("{}", r);
    for (double x : rows[r].points()) line += fmt::format(",{:.17g}", x);
    os << line << '\n';
  }
}

std::vector<std::vector<double>> read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("points CSV: missing header");
  const std::size_t columns = split_csv_row(line).size();
  std::vector<std::vector<double>> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_row(line);
    if (cells.size() != columns) throw DomainError("points CSV: row has the wrong number of fields");
    std::vector<double> row;
    row.reserve(cells.size() - 1);
    try {
      for (std::size_t k = 1; k < cells.size(); ++k) row.push_back(std::stod(cells[k]));
    } catch (const std::exception&) {
      throw DomainError("points CSV: malformed number in '" + line + "'");
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace biortho
