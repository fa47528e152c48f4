#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "medvar/var_model.hpp"

namespace medvar {

/// Triangular family of multi-horizon projection coefficient matrices
/// Phi_j^{(h)}: the weight on W_{t+1-j} in the best linear prediction of
/// W_{t+h} from time-t information. Phi_j^{(1)} = Phi_j, and
///   Phi_j^{(h+1)} = Phi_{j+1}^{(h)} + Phi_1^{(h)} Phi_j.
struct GirSet {
  int h_max = 0;
  int j_max = 0;
  std::vector<std::string> names;                     // K labels from the source model
  std::vector<std::vector<Eigen::MatrixXd>> coeffs;   // coeffs[h-1][j-1], K x K

  int dim() const { return static_cast<int>(names.size()); }
  int index_of(const std::string& label) const;

  /// Bounds-checked access to Phi_j^{(h)}.
  const Eigen::MatrixXd& at(int h, int j) const;
};

/// Fills the coefficient table up to (h_max, j_max) by the incremental
/// recursion. j_max = 0 selects the default p + h_max; coefficients with
/// j > p are identically zero for a finite-order model, so any
/// j_max >= p is exact.
GirSet compute_gir(const VarModel& model, int h_max, int j_max = 0);

/// Moving-average coefficients Psi_0 = I, Psi_h of the inverted lag
/// polynomial, via convolution. Psi_h equals Phi_1^{(h)}. Requires a
/// stable model; returns H+1 matrices.
std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int H);

/// The (to_var row, from_var column) entries of Phi_j^{(h)} across
/// j = 1..j_max: the coefficients that carry predictive content from
/// `from_var` to `to_var` at horizon h.
Eigen::VectorXd granger_coefficients(const GirSet& gir,
                                     const std::string& from_var,
                                     const std::string& to_var, int h);

/// True iff every granger coefficient at horizon h is below tol in
/// absolute value. The default tolerance suits exact-coefficient
/// models; estimated models need a caller-supplied tolerance.
bool is_noncausal(const GirSet& gir, const std::string& from_var,
                  const std::string& to_var, int h, double tol = 1e-10);

/// JSON export keyed by "h" then "j", matrices row-major.
std::string gir_to_json_text(const GirSet& gir);

/// CSV export of one (from,to) slice: rows = h, columns = j.
void write_gir_slice_csv(const GirSet& gir, const std::string& from_var,
                         const std::string& to_var, const std::string& path);

}  // namespace medvar
