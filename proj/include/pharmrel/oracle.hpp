#pragma once

// Brute-force reference for the closed forms: sums the structure function
// over every joint component state under the stationary product measure.
// Shares nothing with reliability.hpp beyond the input types.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pharmrel/types.hpp"

namespace pharmrel {

inline constexpr int kMaxEnumeratedComponents = 24;

/// Up/down flag for every component. Layout: suppliers, then plants, then
/// lines grouped by plant (plant p owns lines [p*z_l, (p+1)*z_l)).
class ComponentState {
 public:
  ComponentState() = default;
  explicit ComponentState(const Configuration& cfg, bool all_up = true)
      : up_(static_cast<std::size_t>(cfg.total_components()), all_up)
  {
  }

  std::size_t size() const noexcept { return up_.size(); }
  bool operator[](std::size_t i) const { return up_.at(i); }
  void set(std::size_t i, bool up) { up_.at(i) = up; }

  static std::size_t supplier_index(const Configuration&, int s) { return static_cast<std::size_t>(s); }
  static std::size_t plant_index(const Configuration& cfg, int p)
  {
    return static_cast<std::size_t>(cfg.z_api + p);
  }
  static std::size_t line_index(const Configuration& cfg, int p, int l)
  {
    return static_cast<std::size_t>(cfg.z_api + cfg.z_p + p * cfg.z_l + l);
  }

  /// Echelon that owns component `i` under `cfg`'s layout.
  static Echelon echelon_of(const Configuration& cfg, std::size_t i)
  {
    if (i < static_cast<std::size_t>(cfg.z_api)) return Echelon::Supplier;
    if (i < static_cast<std::size_t>(cfg.z_api + cfg.z_p)) return Echelon::Plant;
    return Echelon::Line;
  }

 private:
  std::vector<bool> up_;
};

namespace detail {

template <class IsUp>
bool structure_impl(const Configuration& cfg, IsUp&& is_up)
{
  bool supplier_up = false;
  for (int s = 0; s < cfg.z_api && !supplier_up; ++s) {
    supplier_up = is_up(ComponentState::supplier_index(cfg, s));
  }
  if (!supplier_up) return false;
  for (int p = 0; p < cfg.z_p; ++p) {
    if (!is_up(ComponentState::plant_index(cfg, p))) continue;
    for (int l = 0; l < cfg.z_l; ++l) {
      if (is_up(ComponentState::line_index(cfg, p, l))) return true;
    }
  }
  return false;
}

inline void check_enumerable(const Configuration& cfg)
{
  cfg.validate();
  if (cfg.total_components() > kMaxEnumeratedComponents) {
    throw Error(ErrorKind::Capacity, "configuration",
                std::to_string(cfg.total_components()) + " components exceeds the enumeration limit of " +
                    std::to_string(kMaxEnumeratedComponents));
  }
}

// Sum of P(state) * phi(state) with optionally one component pinned.
inline double enumerate(const Configuration& cfg, const EchelonRates& rates,
                        std::optional<std::pair<std::size_t, bool>> pinned)
{
  check_enumerable(cfg);
  rates.validate();
  const std::size_t n = static_cast<std::size_t>(cfg.total_components());

  std::vector<double> p_up(n);
  for (std::size_t i = 0; i < n; ++i) {
    const MeanTimes& m = rates[ComponentState::echelon_of(cfg, i)];
    p_up[i] = m.mtf / (m.mtf + m.mtr);
  }

  const std::uint32_t states = std::uint32_t{1} << n;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < states; ++mask) {
    auto is_up = [mask](std::size_t i) { return ((mask >> i) & 1u) != 0; };
    double weight = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned && pinned->first == i) {
        if (is_up(i) != pinned->second) {
          weight = 0.0;
          break;
        }
        continue;
      }
      weight *= is_up(i) ? p_up[i] : 1.0 - p_up[i];
    }
    if (weight == 0.0) continue;
    if (structure_impl(cfg, is_up)) total += weight;
  }
  return total;
}

}  // namespace detail

/// True iff some supplier is up and some plant is up together with one of its lines.
inline bool structure(const ComponentState& state, const Configuration& cfg)
{
  cfg.validate();
  if (state.size() != static_cast<std::size_t>(cfg.total_components())) {
    throw Error(ErrorKind::InvalidParameter, "state",
                "dimension " + std::to_string(state.size()) + " does not match configuration " +
                    cfg.label() + " (" + std::to_string(cfg.total_components()) + " components)");
  }
  return detail::structure_impl(cfg, [&state](std::size_t i) { return state[i]; });
}

/// Exact stationary reliability by summing over all 2^N component states.
inline double enumerate_reliability(const Configuration& cfg, const EchelonRates& rates)
{
  return detail::enumerate(cfg, rates, std::nullopt);
}

/// Stationary reliability with component `component` held up or down.
/// The up minus down difference is that component's criticality.
inline double enumerate_conditional(const Configuration& cfg, const EchelonRates& rates,
                                    std::size_t component, bool fixed_up)
{
  detail::check_enumerable(cfg);
  if (component >= static_cast<std::size_t>(cfg.total_components())) {
    throw Error(ErrorKind::InvalidParameter, "component",
                "index " + std::to_string(component) + " out of range for " + cfg.label());
  }
  return detail::enumerate(cfg, rates, std::make_pair(component, fixed_up));
}

inline double enumerate_criticality(const Configuration& cfg, const EchelonRates& rates,
                                    std::size_t component)
{
  return enumerate_conditional(cfg, rates, component, true) -
         enumerate_conditional(cfg, rates, component, false);
}

}  // namespace pharmrel
