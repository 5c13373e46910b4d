#pragma once

#include <string>
#include <vector>

namespace freecorr {

enum class Side { hc, schur };

inline const char* side_name(Side s) { return s == Side::hc ? "hc" : "schur"; }

// Moment sequences per correction order: orders[j][k-1] is the k-th moment of order j.
struct ExpansionResult {
  Side side = Side::hc;
  std::vector<std::vector<double>> orders;
  std::vector<std::string> scales;
  // Named extra sequences (e.g. the two parts of a second-order correction).
  std::vector<std::pair<std::string, std::vector<double>>> parts;
};

}  // namespace freecorr
