#pragma once

// Expected annual profit of a configuration and the prices at which its
// profitability changes. Profit is affine in the unit price q:
//   Q(z) = d * r(z) * (q - c_raw - c_prod) - F(z)
// with F(z) the configuration's fixed cost.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pharmrel/reliability.hpp"
#include "pharmrel/types.hpp"

namespace pharmrel {

/// Cost, price and demand data. Defaults are the vincristine case study
/// (2018 USD; demand in ml/year).
struct EconomicsParams {
  double f_c_api = 33000.0;
  double f_g_api = 1169.0;
  double f_c_plant = 65000.0;
  double f_g_plant = 4401.0;
  double f_c_line = 32500.0;  // no regulatory fee per line
  double f_g_program = 9700.0;
  double c_raw = 0.34;
  double c_prod = 2.22;
  double q = 5.55;
  double d = 90000.0;

  void validate() const
  {
    auto non_negative = [](double v, const char* field) {
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorKind::InvalidParameter, field, "must be finite and >= 0");
      }
    };
    non_negative(f_c_api, "f_c_api");
    non_negative(f_g_api, "f_g_api");
    non_negative(f_c_plant, "f_c_plant");
    non_negative(f_g_plant, "f_g_plant");
    non_negative(f_c_line, "f_c_line");
    non_negative(f_g_program, "f_g_program");
    non_negative(c_raw, "c_raw");
    non_negative(c_prod, "c_prod");
    non_negative(q, "q");
    detail::require_positive_finite(d, "d");
  }

  double unit_variable_cost() const noexcept { return c_raw + c_prod; }

  friend bool operator==(const EconomicsParams&, const EconomicsParams&) = default;
};

inline double fixed_cost(const Configuration& cfg, const EconomicsParams& econ)
{
  cfg.validate();
  return (econ.f_c_api + econ.f_g_api) * cfg.z_api + (econ.f_c_plant + econ.f_g_plant) * cfg.z_p +
         econ.f_c_line * cfg.total_lines() + econ.f_g_program;
}

/// Raw expected profit at price `econ.q`; negative values are returned as-is.
inline double expected_profit(const Configuration& cfg, const EchelonRates& rates, const EconomicsParams& econ)
{
  econ.validate();
  const double r = system_reliability(cfg, rates);
  return econ.d * r * (econ.q - econ.unit_variable_cost()) - fixed_cost(cfg, econ);
}

/// Whether a firm facing this profit would produce at all.
inline bool would_produce(double profit) { return profit > 0.0; }

/// Price at which expected profit is zero.
inline double breakeven_price(const Configuration& cfg, const EchelonRates& rates, const EconomicsParams& econ)
{
  econ.validate();
  const double r = system_reliability(cfg, rates);
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidParameter, "rates", "reliability is zero");
  return econ.unit_variable_cost() + fixed_cost(cfg, econ) / (econ.d * r);
}

/// Price at which `a` and `b` earn the same expected profit. Above it the
/// configuration with fewer expected shortages is the more profitable one.
inline double threshold_price(const Configuration& a, const Configuration& b, const EchelonRates& rates,
                              const EconomicsParams& econ)
{
  econ.validate();
  const double ra = system_reliability(a, rates);
  const double rb = system_reliability(b, rates);
  const double dfixed = fixed_cost(b, econ) - fixed_cost(a, econ);
  const double dr = rb - ra;
  if (dr == 0.0) {
    if (dfixed == 0.0) {
      throw Error(ErrorKind::DegenerateEqual, "configurations",
                  a.label() + " and " + b.label() + " have identical profit at every price");
    }
    throw Error(ErrorKind::NoCrossing, "configurations",
                a.label() + " and " + b.label() + " have equal reliability and never cross");
  }
  return econ.unit_variable_cost() + dfixed / (econ.d * dr);
}

/// The "do not produce" alternative in a profit scan.
inline constexpr int kNoProduce = -1;

struct ThresholdPrice {
  Configuration a;
  Configuration b;
  std::optional<double> price;  // empty when the two never cross

  friend bool operator==(const ThresholdPrice&, const ThresholdPrice&) = default;
};

/// A change of the most profitable option along the price axis.
struct SwitchPoint {
  double price = 0.0;
  int from = kNoProduce;  // index into ProfitCurve::configs, or kNoProduce
  int to = kNoProduce;

  friend bool operator==(const SwitchPoint&, const SwitchPoint&) = default;
};

struct ProfitPoint {
  double price = 0.0;
  std::vector<double> profit;  // one per configuration, raw
  int best = kNoProduce;

  friend bool operator==(const ProfitPoint&, const ProfitPoint&) = default;
};

struct ProfitCurve {
  std::vector<Configuration> configs;
  std::vector<ProfitPoint> points;
  std::vector<double> breakeven;  // per configuration
  std::vector<ThresholdPrice> thresholds;  // every unordered pair
  std::vector<SwitchPoint> scan_switches;  // first scanned price where the argmax changes
  std::vector<SwitchPoint> exact_switches;  // closed-form upper-envelope breakpoints in range

  friend bool operator==(const ProfitCurve&, const ProfitCurve&) = default;
};

inline const std::vector<Configuration>& default_profit_candidates()
{
  static const std::vector<Configuration> cfgs{{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {2, 2, 1}};
  return cfgs;
}

namespace detail {

// Option ordering for ties: no-produce first, then fewer total components,
// then lexicographic.
inline bool tie_preferred(int lhs, int rhs, const std::vector<Configuration>& cfgs)
{
  if (lhs == rhs) return false;
  if (lhs == kNoProduce) return true;
  if (rhs == kNoProduce) return false;
  const auto& a = cfgs[static_cast<std::size_t>(lhs)];
  const auto& b = cfgs[static_cast<std::size_t>(rhs)];
  if (a.total_components() != b.total_components()) return a.total_components() < b.total_components();
  return a < b;
}

}  // namespace detail

/// Profits of `configs` over a price grid plus the most profitable option at
/// each price (not producing earns 0).
inline ProfitCurve profit_scan(const std::vector<Configuration>& configs, const EchelonRates& rates,
                               const EconomicsParams& econ, double price_min, double price_max, double step)
{
  econ.validate();
  rates.validate();
  if (!std::isfinite(price_min) || !std::isfinite(price_max) || price_min > price_max) {
    throw Error(ErrorKind::InvalidParameter, "price_min", "must be finite and <= price_max");
  }
  detail::require_positive_finite(step, "step");

  ProfitCurve curve;
  curve.configs = configs;
  if (configs.empty()) return curve;

  const std::size_t n = configs.size();
  std::vector<double> slope(n);  // d * r
  std::vector<double> fixed(n);
  for (std::size_t i = 0; i < n; ++i) {
    configs[i].validate();
    slope[i] = econ.d * system_reliability(configs[i], rates);
    fixed[i] = fixed_cost(configs[i], econ);
    curve.breakeven.push_back(breakeven_price(configs[i], rates, econ));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ThresholdPrice t{configs[i], configs[j], std::nullopt};
      try {
        t.price = threshold_price(configs[i], configs[j], rates, econ);
      } catch (const Error&) {
      }
      curve.thresholds.push_back(t);
    }
  }

  const double margin0 = econ.unit_variable_cost();
  auto profit_at = [&](int option, double price) {
    if (option == kNoProduce) return 0.0;
    const auto i = static_cast<std::size_t>(option);
    return slope[i] * (price - margin0) - fixed[i];
  };
  auto best_at = [&](double price) {
    int best = kNoProduce;
    double best_profit = 0.0;
    for (int i = 0; i < static_cast<int>(n); ++i) {
      const double p = profit_at(i, price);
      if (p > best_profit || (p == best_profit && detail::tie_preferred(i, best, configs))) {
        best = i;
        best_profit = p;
      }
    }
    return best;
  };

  const auto count = static_cast<std::size_t>(std::floor((price_max - price_min) / step + 1e-9)) + 1;
  curve.points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double price = price_min + static_cast<double>(k) * step;
    ProfitPoint pt;
    pt.price = price;
    for (std::size_t i = 0; i < n; ++i) pt.profit.push_back(profit_at(static_cast<int>(i), price));
    pt.best = best_at(price);
    if (!curve.points.empty() && curve.points.back().best != pt.best) {
      curve.scan_switches.push_back({price, curve.points.back().best, pt.best});
    }
    curve.points.push_back(std::move(pt));
  }

  // Walk the upper envelope of the affine profit lines (and the zero line)
  // from price_min: the next breakpoint is the nearest crossing by a line of
  // larger slope.
  int current = best_at(price_min);
  double at = price_min;
  for (;;) {
    const double cur_slope = current == kNoProduce ? 0.0 : slope[static_cast<std::size_t>(current)];
    double next_price = std::numeric_limits<double>::infinity();
    int next = current;
    double next_slope = cur_slope;
    for (int i = 0; i < static_cast<int>(n); ++i) {
      const double s = slope[static_cast<std::size_t>(i)];
      if (!(s > cur_slope)) continue;
      // profit_at(i, q) == profit_at(current, q)
      const double cur_fixed = current == kNoProduce ? 0.0 : fixed[static_cast<std::size_t>(current)];
      const double cross = margin0 + (fixed[static_cast<std::size_t>(i)] - cur_fixed) / (s - cur_slope);
      if (cross < at) continue;
      if (cross < next_price || (cross == next_price && s > next_slope)) {
        next_price = cross;
        next = i;
        next_slope = s;
      }
    }
    if (next == current || next_price > price_max) break;
    curve.exact_switches.push_back({next_price, current, next});
    current = next;
    at = next_price;
  }
  return curve;
}

}  // namespace pharmrel
