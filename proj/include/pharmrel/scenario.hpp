#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pharmrel/reliability.hpp"
#include "pharmrel/types.hpp"

namespace pharmrel {

/// Inclusive integer interval.
struct CountRange {
  int lo = 1;
  int hi = 1;

  void validate(const std::string& field) const
  {
    if (lo < 1) throw Error(ErrorKind::InvalidParameter, field, "range lower bound must be >= 1");
    if (hi < lo) throw Error(ErrorKind::InvalidParameter, field, "empty range");
  }

  friend bool operator==(const CountRange&, const CountRange&) = default;
};

enum class MultiplierKind { Disruption, Recovery };

inline const std::vector<double>& default_disruption_multipliers()
{
  static const std::vector<double> grid{0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0};
  return grid;
}

inline const std::vector<double>& default_recovery_multipliers()
{
  static const std::vector<double> grid{0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0};
  return grid;
}

/// The five configurations compared throughout the case study:
/// lean, backup line, backup plant, backup supplier, backup supplier and plant.
inline const std::vector<Configuration>& case_study_configurations()
{
  static const std::vector<Configuration> cfgs{{1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}, {2, 2, 1}};
  return cfgs;
}

struct SweepSpec {
  CountRange api{1, 3};
  CountRange plants{1, 3};
  CountRange lines{1, 3};
  std::vector<double> disruption_multipliers{1.0};
  std::vector<double> recovery_multipliers{1.0};
  EchelonRates base_rates = baseline_rates();

  void validate() const
  {
    api.validate("z_api");
    plants.validate("z_p");
    lines.validate("z_l");
    if (disruption_multipliers.empty()) {
      throw Error(ErrorKind::InvalidParameter, "disruption_multipliers", "must not be empty");
    }
    if (recovery_multipliers.empty()) {
      throw Error(ErrorKind::InvalidParameter, "recovery_multipliers", "must not be empty");
    }
    for (double m : disruption_multipliers) RateMultipliers{m, 1.0}.validate();
    for (double m : recovery_multipliers) RateMultipliers{1.0, m}.validate();
    base_rates.validate();
  }

  std::vector<Configuration> configurations() const
  {
    std::vector<Configuration> out;
    for (int a = api.lo; a <= api.hi; ++a)
      for (int p = plants.lo; p <= plants.hi; ++p)
        for (int l = lines.lo; l <= lines.hi; ++l) out.push_back({a, p, l});
    return out;
  }

  std::size_t row_count() const
  {
    const auto width = [](const CountRange& r) { return static_cast<std::size_t>(r.hi - r.lo + 1); };
    return width(api) * width(plants) * width(lines) * disruption_multipliers.size() *
           recovery_multipliers.size();
  }
};

struct SweepRow {
  Configuration config;
  RateMultipliers multipliers;
  ReliabilityReport report;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Rows for every configuration in `configs` crossed with every multiplier
/// pair in `grid`, configuration-major.
inline std::vector<SweepRow> combined_strategies(const std::vector<Configuration>& configs,
                                                 const std::vector<RateMultipliers>& grid,
                                                 const EchelonRates& rates)
{
  rates.validate();
  for (const auto& m : grid) m.validate();
  for (const auto& c : configs) c.validate();

  std::vector<SweepRow> rows;
  rows.reserve(configs.size() * grid.size());
  for (const auto& cfg : configs) {
    for (const auto& m : grid) rows.push_back({cfg, m, evaluate(cfg, rates, m)});
  }
  return rows;
}

/// One row per configuration in the cross product of the spec's ranges,
/// ordered lexicographically by (z_api, z_p, z_l), at base rates.
inline std::vector<SweepRow> factorial_configurations(const SweepSpec& spec)
{
  spec.validate();
  return combined_strategies(spec.configurations(), {RateMultipliers{}}, spec.base_rates);
}

inline std::vector<SweepRow> multiplier_sweep(const std::vector<Configuration>& configs,
                                              const std::vector<double>& multipliers, MultiplierKind kind,
                                              const EchelonRates& rates)
{
  std::vector<RateMultipliers> grid;
  grid.reserve(multipliers.size());
  for (double m : multipliers) {
    grid.push_back(kind == MultiplierKind::Disruption ? RateMultipliers{m, 1.0} : RateMultipliers{1.0, m});
  }
  return combined_strategies(configs, grid, rates);
}

/// Full sweep: configurations x disruption multipliers x recovery multipliers.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
  spec.validate();
  std::vector<RateMultipliers> grid;
  for (double d : spec.disruption_multipliers)
    for (double r : spec.recovery_multipliers) grid.push_back({d, r});
  return combined_strategies(spec.configurations(), grid, spec.base_rates);
}

}  // namespace pharmrel
