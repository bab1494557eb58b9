#include "stmg/config.hpp"

#include <stdexcept>

#include <json.hpp>

#include "stmg/io.hpp"
#include "stmg/lfa.hpp"

namespace stmg {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config field '" + field + "': " + why);
}

template <class T>
T require(const json& j, const std::string& field) {
  if (!j.contains(field)) bad_field(field, "missing");
  try {
    return j.at(field).get<T>();
  } catch (const json::exception&) {
    bad_field(field, "wrong type");
  }
}

template <class T>
T optional(const json& j, const std::string& field, T fallback) {
  if (!j.contains(field)) return fallback;
  return require<T>(j, field);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }

  RunConfig c;
  c.p_t = require<int>(j, "p_t");
  c.dim = require<int>(j, "dim");
  c.space_levels = require<int>(j, "space_levels");
  c.time_levels = require<int>(j, "time_levels");
  c.t_final = require<double>(j, "T");
  c.omega_t = optional<double>(j, "omega_t", 0.5);
  c.omega_x = require<double>(j, "omega_x");
  c.nu1 = require<int>(j, "nu1");
  c.nu2 = require<int>(j, "nu2");
  c.nu1_x = require<int>(j, "nu1_x");
  c.nu2_x = require<int>(j, "nu2_x");
  c.gamma = optional<int>(j, "gamma", 1);
  c.eps_mg = require<double>(j, "eps_mg");
  c.max_iter = optional<int>(j, "max_iter", 250);
  c.seed = require<std::uint64_t>(j, "seed");

  const std::string solver = require<std::string>(j, "block_solver");
  if (solver == "exact")
    c.block_solver = BlockSolverKind::exact;
  else if (solver == "vcycle")
    c.block_solver = BlockSolverKind::spatial_vcycle;
  else
    bad_field("block_solver", "must be 'exact' or 'vcycle'");

  const std::string coarsening = require<std::string>(j, "coarsening");
  if (coarsening == "auto")
    c.coarsening = CoarseningPolicy::mu_driven;
  else if (coarsening == "semi")
    c.coarsening = CoarseningPolicy::always_semi;
  else if (coarsening == "full")
    c.coarsening = CoarseningPolicy::prefer_full;
  else
    bad_field("coarsening", "must be 'auto', 'semi' or 'full'");

  if (c.p_t < 0 || c.p_t > kMaxTimeDegree)
    bad_field("p_t", "must be in [0, " + std::to_string(kMaxTimeDegree) + "]");
  if (c.dim != 1 && c.dim != 2) bad_field("dim", "must be 1 or 2");
  if (c.space_levels < 0) bad_field("space_levels", "must be >= 0");
  if (c.time_levels < 0) bad_field("time_levels", "must be >= 0");
  if (!(c.t_final > 0.0)) bad_field("T", "must be > 0");
  if (!(c.omega_t > 0.0 && c.omega_t <= 1.0))
    bad_field("omega_t", "must be in (0, 1]");
  if (!(c.omega_x > 0.0 && c.omega_x <= 1.0))
    bad_field("omega_x", "must be in (0, 1]");
  if (c.nu1 < 0) bad_field("nu1", "must be >= 0");
  if (c.nu2 < 0) bad_field("nu2", "must be >= 0");
  if (c.nu1 + c.nu2 == 0) bad_field("nu1", "nu1 + nu2 must be >= 1");
  if (c.nu1_x < 0) bad_field("nu1_x", "must be >= 0");
  if (c.nu2_x < 0) bad_field("nu2_x", "must be >= 0");
  if (c.gamma < 1) bad_field("gamma", "must be >= 1");
  if (!(c.eps_mg > 0.0)) bad_field("eps_mg", "must be > 0");
  if (c.max_iter < 1) bad_field("max_iter", "must be >= 1");
  return c;
}

std::string dump_config(const RunConfig& c) {
  json j;
  j["p_t"] = c.p_t;
  j["dim"] = c.dim;
  j["space_levels"] = c.space_levels;
  j["time_levels"] = c.time_levels;
  j["T"] = c.t_final;
  j["omega_t"] = c.omega_t;
  j["omega_x"] = c.omega_x;
  j["nu1"] = c.nu1;
  j["nu2"] = c.nu2;
  j["nu1_x"] = c.nu1_x;
  j["nu2_x"] = c.nu2_x;
  j["gamma"] = c.gamma;
  j["eps_mg"] = c.eps_mg;
  j["max_iter"] = c.max_iter;
  j["seed"] = c.seed;
  j["block_solver"] =
      c.block_solver == BlockSolverKind::exact ? "exact" : "vcycle";
  j["coarsening"] = c.coarsening == CoarseningPolicy::mu_driven ? "auto"
                    : c.coarsening == CoarseningPolicy::always_semi
                        ? "semi"
                        : "full";
  return j.dump(2) + "\n";
}

HierarchyParams hierarchy_params(const RunConfig& c) {
  HierarchyParams p;
  p.p_t = c.p_t;
  p.dim = c.dim;
  p.space_level = c.space_levels;
  p.time_level = c.time_levels;
  p.t_final = c.t_final;
  p.mu_star = lfa::critical_mu(c.p_t);
  p.policy = c.coarsening;
  p.block_solver = c.block_solver;
  return p;
}

CycleConfig cycle_config(const RunConfig& c) {
  CycleConfig cc;
  cc.nu1 = c.nu1;
  cc.nu2 = c.nu2;
  cc.gamma = c.gamma;
  cc.smoother.omega_t = c.omega_t;
  cc.smoother.block_solver = c.block_solver;
  cc.smoother.omega_x = c.omega_x;
  cc.smoother.nu1_x = c.nu1_x;
  cc.smoother.nu2_x = c.nu2_x;
  return cc;
}

std::string solve_report_json(const RunConfig& config,
                              const SolveReport& report) {
  json j;
  j["config"] = json::parse(dump_config(config));
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  j["wall_time_seconds"] = report.wall_time_seconds;
  j["seed"] = report.seed;
  j["residual_history"] = report.residual_history;
  return j.dump(2) + "\n";
}

std::string residual_history_csv(const SolveReport& report) {
  CsvWriter csv({"iteration", "residual_l2"});
  for (std::size_t k = 0; k < report.residual_history.size(); ++k) {
    csv.cell(std::int64_t(k)).cell(report.residual_history[k]);
    csv.end_row();
  }
  return csv.str();
}

std::string scaling_csv(const std::vector<bench::ScalingRecord>& records,
                        bool with_forward_substitution_column) {
  std::vector<std::string> header = {"threads", "n_t",        "n_x",
                                     "p_t",     "iterations", "wall_time_seconds"};
  if (with_forward_substitution_column) header.push_back("fwd_sub_seconds");
  CsvWriter csv(header);
  for (const auto& r : records) {
    csv.cell(std::int64_t(r.threads))
        .cell(std::int64_t(r.n_t))
        .cell(std::int64_t(r.n_x))
        .cell(std::int64_t(r.p_t))
        .cell(std::int64_t(r.iterations))
        .cell(r.wall_time_seconds);
    if (with_forward_substitution_column) csv.cell(r.fwd_sub_seconds);
    csv.end_row();
  }
  return csv.str();
}

}  // namespace stmg
