#pragma once

// Transport-independent request handling for the HTTP facade. Every handler
// is a pure function of its request body; no state survives a request.
//
// Status codes: 200 success, 400 schema violation (malformed body, unknown
// key, wrong type, component count below 1), 422 value outside the model's
// domain, 413 sweep larger than the row cap, 404/405 routing.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pharmrel/economics.hpp"
#include "pharmrel/io.hpp"
#include "pharmrel/reliability.hpp"
#include "pharmrel/scenario.hpp"
#include "pharmrel/simulation.hpp"

namespace pharmrel::service {

using io::json;

inline constexpr const char* kVersion = "1.0.0";

struct Options {
  std::size_t row_cap = 10'000;
  unsigned workers = 0;  // simulation threads per request; 0 = hardware concurrency
};

struct Response {
  int status = 200;
  json body;
};

namespace detail {

inline Response error_response(int status, std::string_view kind, const std::string& field, const std::string& message)
{
  return {status, {{"error", {{"kind", kind}, {"field", field}, {"message", message}}}}};
}

inline std::vector<Configuration> parse_config_array(const json& j, const std::string& path)
{
  if (!j.is_array()) io::detail::schema_error(path, "must be an array");
  std::vector<Configuration> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string sub = path + "[" + std::to_string(i) + "]";
    if (j[i].is_string()) {
      out.push_back(io::parse_config_label(j[i].get<std::string>()));
    } else {
      out.push_back(io::parse_configuration(j[i], sub));
    }
  }
  return out;
}

inline std::vector<double> parse_double_array(const json& j, const std::string& path)
{
  if (!j.is_array()) io::detail::schema_error(path, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(io::detail::get_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline CountRange parse_range_pair(const json& j, const std::string& path)
{
  if (!j.is_array() || j.size() != 2) io::detail::schema_error(path, "must be [lo, hi]");
  CountRange r{io::detail::get_count(j[0], path), io::detail::get_count(j[1], path)};
  if (r.hi < r.lo) io::detail::schema_error(path, "empty range");
  return r;
}

inline EchelonRates rates_or_default(const json& body)
{
  if (auto it = body.find("rates"); it != body.end()) return io::parse_rates(*it);
  return baseline_rates();
}

}  // namespace detail

/// POST /api/v1/evaluate  {z, rates?, multipliers?}
inline Response evaluate(const json& body)
{
  io::detail::reject_unknown(body, "", {"z", "rates", "multipliers"});
  auto z = body.find("z");
  if (z == body.end()) io::detail::schema_error("z", "required");
  const Configuration cfg = io::parse_configuration(*z);
  const EchelonRates rates = detail::rates_or_default(body);
  RateMultipliers mult;
  if (auto it = body.find("multipliers"); it != body.end()) mult = io::parse_multipliers(*it);

  const ReliabilityReport rep = pharmrel::evaluate(cfg, rates, mult);
  return {200,
          {{"request", {{"z", io::to_json(cfg)}, {"rates", io::to_json(rates)}, {"multipliers", io::to_json(mult)}}},
           {"report", io::to_json(rep)},
           {"presentation", io::presentation(rep)}}};
}

/// POST /api/v1/sweep
///   {factorial: [lo, hi] | {z_api: [lo,hi], z_p: [lo,hi], z_l: [lo,hi]}
///    | configs: ["A-P-L" | [a,p,l], ...],
///    disruption_multipliers?, recovery_multipliers?, rates?}
inline Response sweep(const json& body, const Options& opts)
{
  io::detail::reject_unknown(body, "",
                             {"factorial", "configs", "disruption_multipliers", "recovery_multipliers", "rates"});
  const bool has_factorial = body.contains("factorial");
  const bool has_configs = body.contains("configs");
  if (has_factorial == has_configs) io::detail::schema_error("factorial", "exactly one of factorial or configs is required");

  std::vector<Configuration> configs;
  if (has_factorial) {
    const json& f = body["factorial"];
    SweepSpec spec;
    if (f.is_array()) {
      spec.api = spec.plants = spec.lines = detail::parse_range_pair(f, "factorial");
    } else {
      io::detail::reject_unknown(f, "factorial", {"z_api", "z_p", "z_l"});
      for (const char* key : {"z_api", "z_p", "z_l"}) {
        if (!f.contains(key)) io::detail::schema_error(std::string("factorial.") + key, "required");
      }
      spec.api = detail::parse_range_pair(f["z_api"], "factorial.z_api");
      spec.plants = detail::parse_range_pair(f["z_p"], "factorial.z_p");
      spec.lines = detail::parse_range_pair(f["z_l"], "factorial.z_l");
    }
    const auto width = [](const CountRange& r) { return static_cast<double>(r.hi - r.lo + 1); };
    if (width(spec.api) * width(spec.plants) * width(spec.lines) > static_cast<double>(opts.row_cap)) {
      return detail::error_response(413, "row-cap", "factorial", "sweep exceeds the row cap of " + std::to_string(opts.row_cap));
    }
    configs = spec.configurations();
  } else {
    configs = detail::parse_config_array(body["configs"], "configs");
  }

  std::vector<double> dis{1.0};
  std::vector<double> rec{1.0};
  if (body.contains("disruption_multipliers")) {
    dis = detail::parse_double_array(body["disruption_multipliers"], "disruption_multipliers");
  }
  if (body.contains("recovery_multipliers")) {
    rec = detail::parse_double_array(body["recovery_multipliers"], "recovery_multipliers");
  }
  const EchelonRates rates = detail::rates_or_default(body);

  const double rows = static_cast<double>(configs.size()) * static_cast<double>(dis.size()) *
                      static_cast<double>(rec.size());
  if (rows > static_cast<double>(opts.row_cap)) {
    return detail::error_response(413, "row-cap", "rows",
                                  std::to_string(static_cast<long long>(rows)) + " rows exceeds the row cap of " +
                                      std::to_string(opts.row_cap));
  }

  std::vector<RateMultipliers> grid;
  for (double d : dis)
    for (double r : rec) grid.push_back({d, r});
  json out = json::array();
  for (const auto& row : combined_strategies(configs, grid, rates)) out.push_back(io::to_json(row));

  json columns = json::array();
  for (auto c : format::kCsvColumns) columns.push_back(std::string(c));
  return {200, {{"columns", columns}, {"rows", out}}};
}

/// POST /api/v1/economics  {configs?, rates?, economics?, price_min?, price_max?, step?}
inline Response economics(const json& body)
{
  io::detail::reject_unknown(body, "", {"configs", "rates", "economics", "price_min", "price_max", "step"});
  std::vector<Configuration> configs = default_profit_candidates();
  if (body.contains("configs")) configs = detail::parse_config_array(body["configs"], "configs");
  const EchelonRates rates = detail::rates_or_default(body);
  EconomicsParams econ;
  if (body.contains("economics")) econ = io::parse_economics(body["economics"]);
  double lo = 0.0;
  double hi = 50.0;
  double step = 0.25;
  io::detail::read_number(body, "price_min", "", lo);
  io::detail::read_number(body, "price_max", "", hi);
  io::detail::read_number(body, "step", "", step);

  const ProfitCurve curve = profit_scan(configs, rates, econ, lo, hi, step);
  json out = io::to_json(curve);
  out["economics"] = io::to_json(econ);
  json profits = json::array();
  for (const auto& c : configs) {
    const double p = expected_profit(c, rates, econ);
    profits.push_back({{"config", c.label()}, {"price", econ.q}, {"profit", p}, {"produce", would_produce(p)}});
  }
  out["profit_at_price"] = profits;
  return {200, out};
}

/// POST /api/v1/simulate  {z, rates?, multipliers?, simulation?}
inline Response simulate(const json& body, const Options& opts)
{
  io::detail::reject_unknown(body, "", {"z", "rates", "multipliers", "simulation"});
  auto z = body.find("z");
  if (z == body.end()) io::detail::schema_error("z", "required");
  const Configuration cfg = io::parse_configuration(*z);
  const EchelonRates base = detail::rates_or_default(body);
  RateMultipliers mult;
  if (auto it = body.find("multipliers"); it != body.end()) mult = io::parse_multipliers(*it);
  SimulationSpec spec;
  if (auto it = body.find("simulation"); it != body.end()) spec = io::parse_simulation(*it);

  const EchelonRates rates = apply(base, mult);
  const SimulationResult sim = pharmrel::simulate(cfg, rates, spec, opts.workers);
  const ReliabilityReport closed = pharmrel::evaluate(cfg, rates);
  return {200,
          {{"request", {{"z", io::to_json(cfg)}, {"rates", io::to_json(base)}, {"multipliers", io::to_json(mult)},
                        {"simulation", io::to_json(spec)}}},
           {"result", io::to_json(sim)},
           {"closed_form", io::to_json(closed)}}};
}

/// GET /api/v1/defaults
inline Response defaults()
{
  json cfgs = json::array();
  for (const auto& c : case_study_configurations()) cfgs.push_back(c.label());
  json candidates = json::array();
  for (const auto& c : default_profit_candidates()) candidates.push_back(c.label());
  return {200,
          {{"rates", io::to_json(baseline_rates())},
           {"economics", io::to_json(EconomicsParams{})},
           {"simulation", io::to_json(SimulationSpec{})},
           {"disruption_multipliers", default_disruption_multipliers()},
           {"recovery_multipliers", default_recovery_multipliers()},
           {"case_study_configs", cfgs},
           {"profit_candidates", candidates},
           {"price_range", {{"price_min", 0.0}, {"price_max", 50.0}, {"step", 0.25}}}}};
}

inline Response health() { return {200, {{"status", "ok"}, {"version", kVersion}}}; }

/// Routes one request. Never throws.
inline Response handle(std::string_view method, std::string_view path, std::string_view body, const Options& opts = {})
{
  struct Route {
    std::string_view method;
    std::string_view path;
  };
  static constexpr Route kRoutes[] = {
      {"GET", "/healthz"},          {"GET", "/api/v1/defaults"},  {"POST", "/api/v1/evaluate"},
      {"POST", "/api/v1/sweep"},    {"POST", "/api/v1/economics"}, {"POST", "/api/v1/simulate"},
  };
  bool path_known = false;
  bool matched = false;
  for (const auto& r : kRoutes) {
    if (r.path != path) continue;
    path_known = true;
    matched = matched || r.method == method;
  }
  if (!path_known) return detail::error_response(404, "not-found", "path", "no route " + std::string(path));
  if (!matched) return detail::error_response(405, "method-not-allowed", "method", std::string(method));

  try {
    if (path == "/healthz") return health();
    if (path == "/api/v1/defaults") return defaults();
    const json req = io::parse_json_text(body);
    if (path == "/api/v1/evaluate") return evaluate(req);
    if (path == "/api/v1/sweep") return sweep(req, opts);
    if (path == "/api/v1/economics") return economics(req);
    return simulate(req, opts);
  } catch (const Error& e) {
    const int status = e.kind() == ErrorKind::Schema ? 400 : 422;
    return detail::error_response(status, to_string(e.kind()), e.field(), e.what());
  } catch (const std::exception& e) {
    return detail::error_response(500, "internal", "", e.what());
  }
}

}  // namespace pharmrel::service
