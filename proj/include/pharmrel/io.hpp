#pragma once

// JSON documents: the run-configuration file read by the CLI, request bodies
// accepted by the HTTP service, and the structured form of every result.
// Parsing is strict: unknown keys and wrong types are schema errors.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pharmrel/economics.hpp"
#include "pharmrel/format.hpp"
#include "pharmrel/reliability.hpp"
#include "pharmrel/scenario.hpp"
#include "pharmrel/simulation.hpp"
#include "pharmrel/types.hpp"

namespace pharmrel::io {

using json = nlohmann::json;

/// Everything a single run can be configured with. Omitted blocks take the
/// case-study defaults.
struct RunConfig {
  Configuration config;
  EchelonRates rates = baseline_rates();
  RateMultipliers multipliers;
  EconomicsParams economics;
  SimulationSpec simulation;
};

namespace detail {

inline std::string join_path(std::string_view parent, std::string_view key)
{
  if (parent.empty()) return std::string(key);
  return std::string(parent) + "." + std::string(key);
}

[[noreturn]] inline void schema_error(const std::string& field, const std::string& message)
{
  throw Error(ErrorKind::Schema, field, message);
}

inline void require_object(const json& j, const std::string& path)
{
  if (!j.is_object()) schema_error(path.empty() ? "body" : path, "must be an object");
}

inline void reject_unknown(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed)
{
  require_object(j, path);
  for (const auto& item : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || item.key() == a;
    if (!ok) schema_error(join_path(path, item.key()), "unknown key");
  }
}

inline double get_number(const json& j, const std::string& path)
{
  if (!j.is_number()) schema_error(path, "must be a number");
  return j.get<double>();
}

inline int get_count(const json& j, const std::string& path)
{
  if (!j.is_number_integer()) schema_error(path, "must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 1) schema_error(path, "must be >= 1");
  if (v > 1'000'000) schema_error(path, "must be <= 1000000");
  return static_cast<int>(v);
}

inline void read_number(const json& obj, std::string_view key, const std::string& path, double& out)
{
  if (auto it = obj.find(std::string(key)); it != obj.end()) out = get_number(*it, join_path(path, key));
}

}  // namespace detail

/// [z_api, z_p, z_l]
inline Configuration parse_configuration(const json& j, const std::string& path = "z")
{
  if (!j.is_array() || j.size() != 3) detail::schema_error(path, "must be an array [z_api, z_p, z_l]");
  return {detail::get_count(j[0], "z_api"), detail::get_count(j[1], "z_p"), detail::get_count(j[2], "z_l")};
}

inline EchelonRates parse_rates(const json& j, const std::string& path = "rates")
{
  detail::reject_unknown(j, path, {"supplier", "plant", "line"});
  EchelonRates rates = baseline_rates();
  for (Echelon e : kEchelons) {
    const std::string key(to_string(e));
    auto it = j.find(key);
    if (it == j.end()) continue;
    const std::string sub = detail::join_path(path, key);
    detail::reject_unknown(*it, sub, {"mtf", "mtr"});
    detail::read_number(*it, "mtf", sub, rates[e].mtf);
    detail::read_number(*it, "mtr", sub, rates[e].mtr);
  }
  return rates;
}

inline RateMultipliers parse_multipliers(const json& j, const std::string& path = "multipliers")
{
  detail::reject_unknown(j, path, {"disruption", "recovery"});
  RateMultipliers m;
  detail::read_number(j, "disruption", path, m.disruption);
  detail::read_number(j, "recovery", path, m.recovery);
  return m;
}

inline EconomicsParams parse_economics(const json& j, const std::string& path = "economics")
{
  detail::reject_unknown(j, path,
                         {"f_c_api", "f_g_api", "f_c_plant", "f_g_plant", "f_c_line", "f_g_program", "c_raw",
                          "c_prod", "q", "d"});
  EconomicsParams e;
  detail::read_number(j, "f_c_api", path, e.f_c_api);
  detail::read_number(j, "f_g_api", path, e.f_g_api);
  detail::read_number(j, "f_c_plant", path, e.f_c_plant);
  detail::read_number(j, "f_g_plant", path, e.f_g_plant);
  detail::read_number(j, "f_c_line", path, e.f_c_line);
  detail::read_number(j, "f_g_program", path, e.f_g_program);
  detail::read_number(j, "c_raw", path, e.c_raw);
  detail::read_number(j, "c_prod", path, e.c_prod);
  detail::read_number(j, "q", path, e.q);
  detail::read_number(j, "d", path, e.d);
  return e;
}

inline SimulationSpec parse_simulation(const json& j, const std::string& path = "simulation")
{
  detail::reject_unknown(j, path, {"horizon", "replications", "seed", "warmup"});
  SimulationSpec s;
  detail::read_number(j, "horizon", path, s.horizon);
  detail::read_number(j, "warmup", path, s.warmup);
  if (auto it = j.find("replications"); it != j.end()) {
    s.replications = detail::get_count(*it, detail::join_path(path, "replications"));
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
      detail::schema_error(detail::join_path(path, "seed"), "must be a non-negative integer");
    }
    s.seed = it->get<std::uint64_t>();
  }
  return s;
}

/// Parses a run-configuration document. Structure is checked here; value
/// domains are checked by the engine types' validate().
inline RunConfig parse_run_config(const json& j)
{
  detail::reject_unknown(j, "", {"z", "rates", "multipliers", "economics", "simulation"});
  RunConfig rc;
  if (auto it = j.find("z"); it != j.end()) rc.config = parse_configuration(*it);
  if (auto it = j.find("rates"); it != j.end()) rc.rates = parse_rates(*it);
  if (auto it = j.find("multipliers"); it != j.end()) rc.multipliers = parse_multipliers(*it);
  if (auto it = j.find("economics"); it != j.end()) rc.economics = parse_economics(*it);
  if (auto it = j.find("simulation"); it != j.end()) rc.simulation = parse_simulation(*it);
  return rc;
}

inline json parse_json_text(std::string_view text)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    detail::schema_error("body", std::string("malformed JSON: ") + e.what());
  }
}

// Command-line and request shorthands.

/// "2-2-1" -> {2, 2, 1}
inline Configuration parse_config_label(std::string_view label)
{
  const auto parts = format::detail::split(label, '-');
  if (parts.size() != 3) detail::schema_error("configs", "expected A-P-L, got '" + std::string(label) + "'");
  Configuration c;
  try {
    c = {format::detail::parse_number<int>(parts[0], "z_api"), format::detail::parse_number<int>(parts[1], "z_p"),
         format::detail::parse_number<int>(parts[2], "z_l")};
  } catch (const Error&) {
    detail::schema_error("configs", "expected A-P-L, got '" + std::string(label) + "'");
  }
  if (c.z_api < 1) detail::schema_error("z_api", "must be >= 1");
  if (c.z_p < 1) detail::schema_error("z_p", "must be >= 1");
  if (c.z_l < 1) detail::schema_error("z_l", "must be >= 1");
  return c;
}

inline std::vector<Configuration> parse_config_list(std::string_view text)
{
  std::vector<Configuration> out;
  for (auto part : format::detail::split(text, ',')) out.push_back(parse_config_label(part));
  return out;
}

/// "1..3" -> {1, 3}; a single integer "2" -> {2, 2}.
inline CountRange parse_range(std::string_view text, const std::string& field = "factorial")
{
  const auto dots = text.find("..");
  try {
    if (dots == std::string_view::npos) {
      const int v = format::detail::parse_number<int>(text, field);
      CountRange r{v, v};
      r.validate(field);
      return r;
    }
    CountRange r{format::detail::parse_number<int>(text.substr(0, dots), field),
                 format::detail::parse_number<int>(text.substr(dots + 2), field)};
    r.validate(field);
    return r;
  } catch (const Error& e) {
    detail::schema_error(field, "expected lo..hi, got '" + std::string(text) + "' (" + e.what() + ")");
  }
}

/// "0.5,1,2" -> {0.5, 1, 2}. The word "default" selects `fallback`.
inline std::vector<double> parse_number_list(std::string_view text, const std::string& field,
                                             const std::vector<double>& fallback = {})
{
  if (text == "default") return fallback;
  std::vector<double> out;
  for (auto part : format::detail::split(text, ',')) {
    try {
      out.push_back(format::detail::parse_number<double>(part, field));
    } catch (const Error&) {
      detail::schema_error(field, "expected a comma-separated list of numbers, got '" + std::string(text) + "'");
    }
  }
  return out;
}

// Serialization.

inline json to_json(const Configuration& c) { return json::array({c.z_api, c.z_p, c.z_l}); }

inline json to_json(const EchelonRates& r)
{
  json out = json::object();
  for (Echelon e : kEchelons) out[std::string(to_string(e))] = {{"mtf", r[e].mtf}, {"mtr", r[e].mtr}};
  return out;
}

inline json to_json(const RateMultipliers& m) { return {{"disruption", m.disruption}, {"recovery", m.recovery}}; }

inline json to_json(const EconomicsParams& e)
{
  return {{"f_c_api", e.f_c_api},     {"f_g_api", e.f_g_api}, {"f_c_plant", e.f_c_plant},
          {"f_g_plant", e.f_g_plant}, {"f_c_line", e.f_c_line}, {"f_g_program", e.f_g_program},
          {"c_raw", e.c_raw},         {"c_prod", e.c_prod},   {"q", e.q},
          {"d", e.d}};
}

inline json to_json(const SimulationSpec& s)
{
  return {{"horizon", s.horizon}, {"replications", s.replications}, {"seed", s.seed}, {"warmup", s.warmup}};
}

inline json to_json(const ReliabilityReport& r)
{
  return {{"r", r.r},
          {"s", r.s},
          {"r_api", r.r_api},
          {"r_pl", r.r_pl},
          {"crit_api", r.crit_api},
          {"crit_plant", r.crit_plant},
          {"crit_line", r.crit_line},
          {"mean_uptime", r.mean_uptime},
          {"mean_downtime", r.mean_downtime}};
}

/// Rounded strings as the case study reports them.
inline json presentation(const ReliabilityReport& r)
{
  return {{"shortage_percent", format::percent(r.s, 0)},
          {"shortage_percent_0_1", format::percent(r.s, 1)},
          {"mean_uptime_years", format::years(r.mean_uptime)},
          {"mean_downtime_years", format::years(r.mean_downtime)}};
}

/// Sweep row keyed exactly like the CSV columns.
inline json to_json(const SweepRow& row)
{
  const auto& r = row.report;
  return {{"z_api", row.config.z_api},
          {"z_p", row.config.z_p},
          {"z_l", row.config.z_l},
          {"dis_mult", row.multipliers.disruption},
          {"rec_mult", row.multipliers.recovery},
          {"r", r.r},
          {"s", r.s},
          {"r_api", r.r_api},
          {"r_pl", r.r_pl},
          {"crit_api", r.crit_api},
          {"crit_plant", r.crit_plant},
          {"crit_line", r.crit_line},
          {"mean_uptime", r.mean_uptime},
          {"mean_downtime", r.mean_downtime}};
}

inline json to_json(const Estimate& e) { return {{"mean", e.mean}, {"std_error", e.std_error}}; }

inline json to_json(const SimulationResult& s)
{
  json reps = json::array();
  for (const auto& t : s.replications) {
    reps.push_back({{"observed_time", t.observed_time},
                    {"up_time", t.up_time},
                    {"down_time", t.down_time},
                    {"complete_up_count", t.complete_up_count},
                    {"complete_down_count", t.complete_down_count},
                    {"complete_up_total", t.complete_up_total},
                    {"complete_down_total", t.complete_down_total},
                    {"truncated_up_total", t.truncated_up_total},
                    {"truncated_down_total", t.truncated_down_total},
                    {"up_episodes", t.up_episodes},
                    {"down_episodes", t.down_episodes},
                    {"component_events", t.component_events}});
  }
  return {{"availability", to_json(s.availability)},
          {"mean_uptime", to_json(s.mean_uptime)},
          {"mean_downtime", to_json(s.mean_downtime)},
          {"shortage_episode_count", s.shortage_episode_count},
          {"replications", reps},
          {"warnings", s.warnings}};
}

inline json option_json(const ProfitCurve& c, int option)
{
  if (option == kNoProduce) return "no-produce";
  return c.configs[static_cast<std::size_t>(option)].label();
}

inline json to_json(const ProfitCurve& c)
{
  json configs = json::array();
  for (std::size_t i = 0; i < c.configs.size(); ++i) {
    configs.push_back({{"config", c.configs[i].label()}, {"breakeven", c.breakeven[i]}});
  }
  json points = json::array();
  for (const auto& p : c.points) {
    points.push_back({{"price", p.price}, {"profit", p.profit}, {"best", option_json(c, p.best)}});
  }
  json thresholds = json::array();
  for (const auto& t : c.thresholds) {
    thresholds.push_back({{"a", t.a.label()}, {"b", t.b.label()},
                          {"price", t.price ? json(*t.price) : json(nullptr)}});
  }
  auto switches = [&](const std::vector<SwitchPoint>& v) {
    json out = json::array();
    for (const auto& s : v) {
      out.push_back({{"price", s.price}, {"from", option_json(c, s.from)}, {"to", option_json(c, s.to)}});
    }
    return out;
  };
  return {{"configs", configs},
          {"points", points},
          {"thresholds", thresholds},
          {"scan_switches", switches(c.scan_switches)},
          {"exact_switches", switches(c.exact_switches)}};
}

}  // namespace pharmrel::io
