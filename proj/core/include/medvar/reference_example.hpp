#pragma once

#include <array>
#include <string>
#include <vector>

#include "medvar/gir.hpp"
#include "medvar/var_model.hpp"

namespace medvar {

/// Bundled three-variable lag-6 worked example with identity innovation
/// covariance. Its (X,Y) projection-coefficient slice for h = 1..10,
/// j = 1..6 is known to three decimals and serves as the golden
/// regression fixture.
VarModel reference_var6();

/// The expected (X,Y) slice: rows h = 1..10, columns j = 1..6, rounded
/// to three decimals.
const std::array<std::array<double, 6>, 10>& reference_gir_table();

struct ReferenceMismatch {
  int h = 0;
  int j = 0;
  double expected = 0.0;
  double actual = 0.0;  // rounded to three decimals
};

/// Compares the computed (X,Y) slice against the embedded table after
/// rounding to three decimals; returns every mismatching cell.
std::vector<ReferenceMismatch> verify_reference_table(const GirSet& gir);

}  // namespace medvar
