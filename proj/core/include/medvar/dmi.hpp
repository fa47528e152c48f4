#pragma once

#include <string>
#include <vector>

#include "medvar/decomposition.hpp"

namespace medvar {

/// Dynamic mediation index over decomposition times n = 0..H for one
/// mediator: the inner-product share of the outcome's response window
/// (n+1..H) carried by the mediator's contribution window. Signed and
/// scale-sensitive; not confined to [-1, 1]. values[H] = 0 by
/// definition.
struct DmiSeries {
  std::vector<double> values;  // index n = 0..H
  int horizon = 0;             // H
  std::string mediator;
  std::string outcome;
};

/// <irf window, contribution window> / <irf window, irf window> with
/// both windows running over horizons n+1..H (outcome rows only).
/// Returns 0 when n == H. Throws a degenerate-window error when the
/// squared norm of the IRF window is below 1e-14.
double dmi_at(const DecompositionTable& table, const IrfPath& irf,
              const std::string& mediator, const std::string& outcome,
              int n, int H);

/// dmi_at for every n = 0..H; the table must contain all decomposition
/// fronts n = 0..H-1. Degenerate-window errors are tagged with the
/// offending n.
DmiSeries dmi_series(const DecompositionTable& table, const IrfPath& irf,
                     const std::string& mediator, const std::string& outcome,
                     int H);

void write_dmi_csv(const DmiSeries& series, const std::string& path);
std::string dmi_to_json_text(const DmiSeries& series);

}  // namespace medvar
