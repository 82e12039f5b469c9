#pragma once

// Published case-study values, as printed (rounded), for regression checks.

#include <array>

#include "pharmrel/types.hpp"

namespace case_study {

struct ConfigRow {
  pharmrel::Configuration config;
  int shortage_percent;   // nearest 1%
  const char* uptime;     // nearest 0.1 y
  const char* downtime;   // nearest 0.1 y
};

inline constexpr std::array<ConfigRow, 5> kBaseline{{
    {{1, 1, 1}, 10, "4.7", "0.5"},
    {{1, 1, 2}, 9, "10.5", "1.0"},
    {{1, 2, 1}, 7, "14.6", "1.0"},
    {{2, 1, 1}, 4, "6.2", "0.3"},
    {{2, 2, 1}, 1, "56.0", "0.3"},
}};

// Disruption rate halved.
inline constexpr std::array<ConfigRow, 5> kHalfDisruption{{
    {{1, 1, 1}, 5, "9.5", "0.5"},
    {{1, 1, 2}, 5, "21.2", "1.0"},
    {{1, 2, 1}, 3, "31.5", "1.1"},
    {{2, 1, 1}, 2, "12.8", "0.3"},
    {{2, 2, 1}, 0, "214.1", "0.3"},
}};

// Recovery rate doubled.
inline constexpr std::array<ConfigRow, 5> kDoubleRecovery{{
    {{1, 1, 1}, 5, "4.7", "0.3"},
    {{1, 1, 2}, 5, "10.6", "0.5"},
    {{1, 2, 1}, 3, "15.8", "0.6"},
    {{2, 1, 1}, 2, "6.4", "0.1"},
    {{2, 2, 1}, 0, "107.0", "0.2"},
}};

// Shortage at 0.1%: kFactorial[z_api-1][z_p-1][z_l-1].
inline constexpr const char* kFactorial[5][5][5] = {
    {{"9.9%", "9.1%", "9.1%", "9.1%", "9.1%"},
     {"6.6%", "6.6%", "6.6%", "6.6%", "6.6%"},
     {"6.5%", "6.5%", "6.5%", "6.5%", "6.5%"},
     {"6.5%", "6.5%", "6.5%", "6.5%", "6.5%"},
     {"6.5%", "6.5%", "6.5%", "6.5%", "6.5%"}},
    {{"4.1%", "3.2%", "3.2%", "3.2%", "3.2%"},
     {"0.6%", "0.5%", "0.5%", "0.5%", "0.5%"},
     {"0.4%", "0.4%", "0.4%", "0.4%", "0.4%"},
     {"0.4%", "0.4%", "0.4%", "0.4%", "0.4%"},
     {"0.4%", "0.4%", "0.4%", "0.4%", "0.4%"}},
    {{"3.7%", "2.8%", "2.8%", "2.8%", "2.8%"},
     {"0.2%", "0.1%", "0.1%", "0.1%", "0.1%"},
     {"0.0%", "0.0%", "0.0%", "0.0%", "0.0%"},
     {"0.0%", "0.0%", "0.0%", "0.0%", "0.0%"},
     {"0.0%", "0.0%", "0.0%", "0.0%", "0.0%"}},
    {{"3.7%", "2.8%", "2.8%", "2.8%", "2.8%"},
     {"0.1%", "0.1%", "0.1%", "0.1%", "0.1%"},
     {"0.0%", "0.0%", "0.0%", "0.0%", "0.0%"},
     {"0.0%", "0.0%", "0.0%", "0.0%", "0.0%"},
     {"0.0%", "0.0%", "0.0%", "0.0%", "0.0%"}},
    {{"3.7%", "2.8%", "2.8%", "2.8%", "2.8%"},
     {"0.1%", "0.1%", "0.1%", "0.1%", "0.1%"},
     {"0.0%", "0.0%", "0.0%", "0.0%", "0.0%"},
     {"0.0%", "0.0%", "0.0%", "0.0%", "0.0%"},
     {"0.0%", "0.0%", "0.0%", "0.0%", "0.0%"}},
};

struct CombinedCell {
  pharmrel::Configuration config;
  double disruption;
  double recovery;
  int shortage_percent;
};

inline constexpr std::array<CombinedCell, 20> kCombined{{
    {{1, 1, 1}, 1, 1, 10}, {{1, 1, 1}, 0.5, 1, 5}, {{1, 1, 1}, 1, 2, 5}, {{1, 1, 1}, 0.5, 2, 3},
    {{1, 1, 2}, 1, 1, 9},  {{1, 1, 2}, 0.5, 1, 5}, {{1, 1, 2}, 1, 2, 5}, {{1, 1, 2}, 0.5, 2, 2},
    {{1, 2, 1}, 1, 1, 7},  {{1, 2, 1}, 0.5, 1, 3}, {{1, 2, 1}, 1, 2, 3}, {{1, 2, 1}, 0.5, 2, 2},
    {{2, 1, 1}, 1, 1, 4},  {{2, 1, 1}, 0.5, 1, 2}, {{2, 1, 1}, 1, 2, 2}, {{2, 1, 1}, 0.5, 2, 1},
    {{2, 2, 1}, 1, 1, 1},  {{2, 2, 1}, 0.5, 1, 0}, {{2, 2, 1}, 1, 2, 0}, {{2, 2, 1}, 0.5, 2, 0},
}};

inline constexpr double kBreakevenLean = 4.36;
inline constexpr double kBreakevenBackupSupplier = 4.64;
inline constexpr double kBreakevenBackupSupplierPlant = 5.71;
inline constexpr double kThresholdAddSupplier = 9.06;
inline constexpr double kThresholdAddPlant = 34.76;

}  // namespace case_study
