#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace pharmrel {

enum class ErrorKind {
  Schema,  // malformed document: wrong type, unknown or missing key, count below 1
  InvalidParameter,
  Capacity,
  NoCrossing,
  DegenerateEqual,
};

inline constexpr std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
    case ErrorKind::Schema: return "schema";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::NoCrossing: return "no-crossing";
    case ErrorKind::DegenerateEqual: return "degenerate-equal";
  }
  return "unknown";
}

/// Thrown for every domain violation. `field()` names the offending input
/// (e.g. "z_api", "supplier.mtf") when one can be identified.
class Error : public std::invalid_argument {
 public:
  Error(ErrorKind kind, std::string field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        kind_(kind),
        field_(std::move(field))
  {
  }

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

namespace detail {

inline void require_positive_finite(double value, std::string_view field)
{
  if (!std::isfinite(value) || value <= 0.0) {
    throw Error(ErrorKind::InvalidParameter, std::string(field),
                "must be positive and finite, got " + std::to_string(value));
  }
}

}  // namespace detail

enum class Echelon : std::uint8_t { Supplier = 0, Plant = 1, Line = 2 };

inline constexpr std::array<Echelon, 3> kEchelons{Echelon::Supplier, Echelon::Plant, Echelon::Line};

inline constexpr std::string_view to_string(Echelon e)
{
  switch (e) {
    case Echelon::Supplier: return "supplier";
    case Echelon::Plant: return "plant";
    case Echelon::Line: return "line";
  }
  return "unknown";
}

/// Component counts per echelon. Every plant carries the same number of lines.
struct Configuration {
  int z_api = 1;
  int z_p = 1;
  int z_l = 1;

  void validate() const
  {
    if (z_api < 1) throw Error(ErrorKind::InvalidParameter, "z_api", "must be >= 1 (z_api >= 1)");
    if (z_p < 1) throw Error(ErrorKind::InvalidParameter, "z_p", "must be >= 1 (z_p >= 1)");
    if (z_l < 1) throw Error(ErrorKind::InvalidParameter, "z_l", "must be >= 1 (z_l >= 1)");
  }

  int total_lines() const noexcept { return z_p * z_l; }
  int total_components() const noexcept { return z_api + z_p + z_p * z_l; }

  /// "A-P-L" shorthand, e.g. "2-2-1".
  std::string label() const
  {
    return std::to_string(z_api) + "-" + std::to_string(z_p) + "-" + std::to_string(z_l);
  }

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Mean time to fail (1/lambda) and to recover (1/mu), in years.
struct MeanTimes {
  double mtf = 1.0;
  double mtr = 1.0;

  friend bool operator==(const MeanTimes&, const MeanTimes&) = default;
};

struct EchelonRates {
  MeanTimes supplier{17.3, 1.2};
  MeanTimes plant{28.2, 0.8};
  MeanTimes line{8.5, 0.08};

  const MeanTimes& operator[](Echelon e) const noexcept
  {
    switch (e) {
      case Echelon::Supplier: return supplier;
      case Echelon::Plant: return plant;
      case Echelon::Line: return line;
    }
    return supplier;
  }

  MeanTimes& operator[](Echelon e) noexcept
  {
    return const_cast<MeanTimes&>(std::as_const(*this)[e]);
  }

  void validate() const
  {
    for (Echelon e : kEchelons) {
      const std::string prefix(to_string(e));
      detail::require_positive_finite((*this)[e].mtf, prefix + ".mtf");
      detail::require_positive_finite((*this)[e].mtr, prefix + ".mtr");
    }
  }

  friend bool operator==(const EchelonRates&, const EchelonRates&) = default;
};

/// Baseline component characteristics of the vincristine case study.
inline constexpr EchelonRates baseline_rates() { return EchelonRates{}; }

/// Scales every disruption rate by `disruption` and every recovery rate by
/// `recovery`. (1, 1) is the identity.
struct RateMultipliers {
  double disruption = 1.0;
  double recovery = 1.0;

  void validate() const
  {
    detail::require_positive_finite(disruption, "disruption_multiplier");
    detail::require_positive_finite(recovery, "recovery_multiplier");
  }

  friend bool operator==(const RateMultipliers&, const RateMultipliers&) = default;
};

/// A scaled rate divides the corresponding mean time.
inline EchelonRates apply(const EchelonRates& base, const RateMultipliers& m)
{
  base.validate();
  m.validate();
  if (m.disruption == 1.0 && m.recovery == 1.0) return base;
  EchelonRates out = base;
  for (Echelon e : kEchelons) {
    out[e].mtf = base[e].mtf / m.disruption;
    out[e].mtr = base[e].mtr / m.recovery;
  }
  return out;
}

struct ReliabilityReport {
  double r = 0.0;
  double s = 0.0;
  double r_api = 0.0;
  double r_pl = 0.0;
  double crit_api = 0.0;
  double crit_plant = 0.0;
  double crit_line = 0.0;
  double mean_uptime = 0.0;
  double mean_downtime = 0.0;

  friend bool operator==(const ReliabilityReport&, const ReliabilityReport&) = default;
};

}  // namespace pharmrel
