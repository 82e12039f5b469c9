#pragma once

// Cross-checks of the closed forms against the enumeration and simulation
// oracles. Shared by the `verify` subcommand and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pharmrel/oracle.hpp"
#include "pharmrel/reliability.hpp"
#include "pharmrel/simulation.hpp"

namespace pharmrel::verify {

/// Every configuration whose total component count is at most `max_components`,
/// in lexicographic order.
inline std::vector<Configuration> configurations_up_to(int max_components)
{
  std::vector<Configuration> out;
  for (int a = 1; a + 2 <= max_components; ++a)
    for (int p = 1; a + p + p <= max_components; ++p)
      for (int l = 1; a + p + p * l <= max_components; ++l) out.push_back({a, p, l});
  return out;
}

/// Log-uniform mean times: failures in [0.1, 100] y, recoveries in [0.01, 10] y.
inline EchelonRates random_rates(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
  EchelonRates r;
  for (Echelon e : kEchelons) {
    r[e].mtf = log_uniform(0.1, 100.0);
    r[e].mtr = log_uniform(0.01, 10.0);
  }
  return r;
}

struct EnumerationReport {
  std::size_t configurations = 0;
  std::size_t rate_sets = 0;
  std::size_t comparisons = 0;
  double max_reliability_diff = 0.0;
  double max_criticality_diff = 0.0;
  std::string worst_case;

  bool passed(double tol = 1e-12) const
  {
    return max_reliability_diff <= tol && max_criticality_diff <= tol;
  }
};

/// Compares r and each echelon's criticality (first and last component of the
/// echelon) against state enumeration, over `rate_sets` random rate draws.
/// The baseline rates are always included as the first set.
inline EnumerationReport check_enumeration(int max_components, std::size_t rate_sets, std::uint64_t seed)
{
  EnumerationReport rep;
  const auto cfgs = configurations_up_to(std::min(max_components, kMaxEnumeratedComponents));
  rep.configurations = cfgs.size();
  rep.rate_sets = rate_sets;

  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < rate_sets; ++k) {
    const EchelonRates rates = k == 0 ? baseline_rates() : random_rates(rng);
    for (const auto& cfg : cfgs) {
      const ReliabilityReport closed = evaluate(cfg, rates);
      const double dr = std::abs(enumerate_reliability(cfg, rates) - closed.r);
      ++rep.comparisons;
      if (dr > rep.max_reliability_diff) {
        rep.max_reliability_diff = dr;
        rep.worst_case = cfg.label() + " r";
      }

      const std::size_t last_supplier = static_cast<std::size_t>(cfg.z_api - 1);
      const std::size_t first_plant = ComponentState::plant_index(cfg, 0);
      const std::size_t last_plant = ComponentState::plant_index(cfg, cfg.z_p - 1);
      const std::size_t first_line = ComponentState::line_index(cfg, 0, 0);
      const std::size_t last_line = ComponentState::line_index(cfg, cfg.z_p - 1, cfg.z_l - 1);
      const struct {
        std::size_t index;
        double expected;
        const char* name;
      } checks[] = {
          {0, closed.crit_api, "crit_api"},          {last_supplier, closed.crit_api, "crit_api"},
          {first_plant, closed.crit_plant, "crit_plant"}, {last_plant, closed.crit_plant, "crit_plant"},
          {first_line, closed.crit_line, "crit_line"},    {last_line, closed.crit_line, "crit_line"},
      };
      for (const auto& c : checks) {
        const double d = std::abs(enumerate_criticality(cfg, rates, c.index) - c.expected);
        ++rep.comparisons;
        if (d > rep.max_criticality_diff) {
          rep.max_criticality_diff = d;
          rep.worst_case = cfg.label() + " " + c.name;
        }
      }
    }
  }
  return rep;
}

struct SimulationCheck {
  Configuration config;
  ReliabilityReport closed;
  SimulationResult sim;
  bool r_ok = false;
  bool uptime_ok = false;
  bool downtime_ok = false;
  bool regenerative_ok = false;

  bool passed() const { return r_ok && uptime_ok && downtime_ok && regenerative_ok; }
};

/// Simulates `cfg` and checks the closed forms lie within `k` standard errors.
inline SimulationCheck check_simulation(const Configuration& cfg, const EchelonRates& rates,
                                        const SimulationSpec& spec, double k = 3.0, unsigned workers = 0)
{
  SimulationCheck out;
  out.config = cfg;
  out.closed = evaluate(cfg, rates);
  out.sim = simulate(cfg, rates, spec, workers);
  out.r_ok = out.sim.availability.brackets(out.closed.r, k);
  out.uptime_ok = out.sim.mean_uptime.brackets(out.closed.mean_uptime, k);
  out.downtime_ok = out.sim.mean_downtime.brackets(out.closed.mean_downtime, k);
  out.regenerative_ok = std::all_of(out.sim.replications.begin(), out.sim.replications.end(), [](const auto& t) {
    return std::abs(t.up_episodes - t.down_episodes) <= 1;
  });
  return out;
}

}  // namespace pharmrel::verify
