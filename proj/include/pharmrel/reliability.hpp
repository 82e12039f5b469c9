#pragma once

// Closed-form steady-state reliability of a three-echelon supply chain:
// suppliers in parallel, in series with a parallel bank of plants, each
// plant in series with its own parallel bank of lines. Components alternate
// independently between exponential up and down periods.

#include <cmath>

#include "pharmrel/types.hpp"

namespace pharmrel {

/// Integer power. Repeated multiplication for exponents up to 64, std::pow beyond.
inline double ipow(double base, int exponent)
{
  if (exponent < 0) throw Error(ErrorKind::InvalidParameter, "exponent", "must be non-negative");
  if (exponent > 64) return std::pow(base, exponent);
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

/// Steady-state availability mtf / (mtf + mtr).
inline double component_availability(double mtf, double mtr)
{
  detail::require_positive_finite(mtf, "mtf");
  detail::require_positive_finite(mtr, "mtr");
  const double a = mtf / (mtf + mtr);
  if (!(a > 0.0 && a < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "mtf/mtr",
                "availability must lie strictly inside (0,1)");
  }
  return a;
}

/// Steady-state unavailability mtr / (mtf + mtr), computed without cancellation.
inline double component_unavailability(double mtf, double mtr)
{
  component_availability(mtf, mtr);
  return mtr / (mtf + mtr);
}

namespace detail {

// Per-echelon availability and unavailability, validated once.
struct EchelonProbabilities {
  double a_api, q_api;
  double a_p, q_p;
  double a_l, q_l;

  explicit EchelonProbabilities(const EchelonRates& rates)
  {
    rates.validate();
    auto fill = [](const MeanTimes& m, double& a, double& q, const char* name) {
      try {
        a = component_availability(m.mtf, m.mtr);
      } catch (const Error& e) {
        throw Error(e.kind(), name, e.what());
      }
      q = m.mtr / (m.mtf + m.mtr);
    };
    fill(rates.supplier, a_api, q_api, "supplier");
    fill(rates.plant, a_p, q_p, "plant");
    fill(rates.line, a_l, q_l, "line");
  }
};

// Probability that a single plant-line group cannot produce: plant down, or
// plant up with every line down.
inline double plant_group_failure(const EchelonProbabilities& pr, int z_l)
{
  return pr.q_p + pr.a_p * ipow(pr.q_l, z_l);
}

// Rate at which a component leaves the up state in steady state:
// lambda*mu/(lambda+mu) = 1/(mtf+mtr).
inline double cycle_rate(const MeanTimes& m) { return 1.0 / (m.mtf + m.mtr); }

}  // namespace detail

/// Probability that at least one API supplier is up.
inline double r_api(const Configuration& cfg, const EchelonRates& rates)
{
  cfg.validate();
  const detail::EchelonProbabilities pr(rates);
  return 1.0 - ipow(pr.q_api, cfg.z_api);
}

/// Probability that at least one plant has itself and one of its lines up.
inline double r_pl(const Configuration& cfg, const EchelonRates& rates)
{
  cfg.validate();
  const detail::EchelonProbabilities pr(rates);
  return 1.0 - ipow(detail::plant_group_failure(pr, cfg.z_l), cfg.z_p);
}

inline double system_reliability(const Configuration& cfg, const EchelonRates& rates)
{
  return r_api(cfg, rates) * r_pl(cfg, rates);
}

/// 1 - r, evaluated as P(no supplier) + P(no plant-line pair) - P(both) so
/// that small shortages keep their relative precision.
inline double expected_shortage(const Configuration& cfg, const EchelonRates& rates)
{
  cfg.validate();
  const detail::EchelonProbabilities pr(rates);
  const double none_api = ipow(pr.q_api, cfg.z_api);
  const double none_pl = ipow(detail::plant_group_failure(pr, cfg.z_l), cfg.z_p);
  return none_api + none_pl - none_api * none_pl;
}

// Criticality: probability that the failure of one given component takes the
// whole system down, i.e. r(.|X_n = 1) - r(.|X_n = 0).

inline double crit_api(const Configuration& cfg, const EchelonRates& rates)
{
  cfg.validate();
  const detail::EchelonProbabilities pr(rates);
  const double rpl = 1.0 - ipow(detail::plant_group_failure(pr, cfg.z_l), cfg.z_p);
  return rpl * ipow(pr.q_api, cfg.z_api - 1);
}

inline double crit_plant(const Configuration& cfg, const EchelonRates& rates)
{
  cfg.validate();
  const detail::EchelonProbabilities pr(rates);
  const double rapi = 1.0 - ipow(pr.q_api, cfg.z_api);
  const double others_down = ipow(detail::plant_group_failure(pr, cfg.z_l), cfg.z_p - 1);
  return rapi * (1.0 - ipow(pr.q_l, cfg.z_l)) * others_down;
}

inline double crit_line(const Configuration& cfg, const EchelonRates& rates)
{
  cfg.validate();
  const detail::EchelonProbabilities pr(rates);
  const double rapi = 1.0 - ipow(pr.q_api, cfg.z_api);
  const double others_down = ipow(detail::plant_group_failure(pr, cfg.z_l), cfg.z_p - 1);
  return rapi * pr.a_p * ipow(pr.q_l, cfg.z_l - 1) * others_down;
}

/// Mean length of a system up period (years between shortages).
///
/// r divided by the total rate at which critical component failures occur.
/// Lines are counted individually, so the line term carries z_p * z_l.
inline double mean_uptime(const Configuration& cfg, const EchelonRates& rates)
{
  const double r = system_reliability(cfg, rates);
  const double failure_rate =
      cfg.z_api * detail::cycle_rate(rates.supplier) * crit_api(cfg, rates) +
      cfg.z_p * detail::cycle_rate(rates.plant) * crit_plant(cfg, rates) +
      cfg.total_lines() * detail::cycle_rate(rates.line) * crit_line(cfg, rates);
  return r / failure_rate;
}

/// Mean length of a shortage, U/r - U = U * s / r.
inline double mean_downtime(const Configuration& cfg, const EchelonRates& rates)
{
  return mean_uptime(cfg, rates) * expected_shortage(cfg, rates) / system_reliability(cfg, rates);
}

/// Every closed-form quantity for one configuration.
inline ReliabilityReport evaluate(const Configuration& cfg, const EchelonRates& rates)
{
  cfg.validate();
  const detail::EchelonProbabilities pr(rates);

  const double g = detail::plant_group_failure(pr, cfg.z_l);
  const double g_others = ipow(g, cfg.z_p - 1);

  ReliabilityReport rep;
  const double none_api = ipow(pr.q_api, cfg.z_api);
  const double none_pl = ipow(g, cfg.z_p);
  rep.r_api = 1.0 - none_api;
  rep.r_pl = 1.0 - none_pl;
  rep.r = rep.r_api * rep.r_pl;
  rep.s = none_api + none_pl - none_api * none_pl;
  rep.crit_api = rep.r_pl * ipow(pr.q_api, cfg.z_api - 1);
  rep.crit_plant = rep.r_api * (1.0 - ipow(pr.q_l, cfg.z_l)) * g_others;
  rep.crit_line = rep.r_api * pr.a_p * ipow(pr.q_l, cfg.z_l - 1) * g_others;

  const double failure_rate = cfg.z_api * detail::cycle_rate(rates.supplier) * rep.crit_api +
                              cfg.z_p * detail::cycle_rate(rates.plant) * rep.crit_plant +
                              cfg.total_lines() * detail::cycle_rate(rates.line) * rep.crit_line;
  rep.mean_uptime = rep.r / failure_rate;
  rep.mean_downtime = rep.mean_uptime * rep.s / rep.r;
  return rep;
}

inline ReliabilityReport evaluate(const Configuration& cfg, const EchelonRates& base,
                                  const RateMultipliers& mult)
{
  return evaluate(cfg, apply(base, mult));
}

}  // namespace pharmrel
