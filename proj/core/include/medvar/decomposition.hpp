#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "medvar/gir.hpp"

namespace medvar {

enum class Normalization { UnitInnovation, OneStandardDeviation };

/// Impact vector of the identified shock: the contemporaneous response
/// of every variable to the shock-variable innovation.
struct ShockIdentification {
  std::string shock_var;
  Eigen::VectorXd theta0;  // K
  double shock_sd = 1.0;
  Normalization normalization = Normalization::UnitInnovation;
};

/// theta0 from the innovation covariance: the shock column of sigma_u
/// scaled by 1/sigma_u[X,X] (unit innovation) or 1/sd (one standard
/// deviation). Throws when the shock variance is not positive.
ShockIdentification identify_shock(const VarModel& model,
                                   const std::string& shock_var,
                                   Normalization normalization);

/// Wraps an externally identified impact vector (size-checked against
/// the model's variable count).
ShockIdentification user_supplied_shock(const VarModel& model,
                                        const std::string& shock_var,
                                        const Eigen::VectorXd& theta0);

/// Impulse responses theta_h for h = 0..H, one row per horizon.
struct IrfPath {
  Eigen::MatrixXd theta;  // (H+1) x K, row h = theta_h
  ShockIdentification shock;
  std::vector<std::string> names;
  int horizon = 0;  // H

  Eigen::VectorXd theta_at(int h) const;
  double entry(int h, const std::string& var) const;
};

/// theta_0 = shock.theta0 and theta_h = Phi_1^{(h)} theta_0.
IrfPath impulse_response(const GirSet& gir, const ShockIdentification& shock,
                         int H);

/// The horizon-h response rebuilt from the observables at periods
/// 0..n: sum_{k=0..n} Phi_{k+1}^{(h-n)} theta_{n-k}. Equals theta_h.
Eigen::VectorXd represent_at(const GirSet& gir, const IrfPath& irf, int n,
                             int h);

/// Contribution of variable v, decomposed at time n, to the horizon-h
/// response: sum_{k=0..n} (v-column of Phi_{k+1}^{(h-n)}) * theta_{v,n-k}.
Eigen::VectorXd contribution(const GirSet& gir, const IrfPath& irf,
                             const std::string& v, int n, int h);

/// Per-variable contributions for every requested decomposition time n
/// and every horizon h in (n, H]. Construction verifies that the
/// contributions of all variables re-sum to the impulse response.
struct DecompositionTable {
  std::vector<int> n_list;
  int horizon = 0;  // H
  std::vector<std::string> names;
  Eigen::MatrixXd irf_theta;  // (H+1) x K copy of the IRF path
  // cells.at(n)[h-n-1] is K x K with column v = theta_h^{(v_n)}
  std::map<int, std::vector<Eigen::MatrixXd>> cells;

  const Eigen::MatrixXd& at(int n, int h) const;
  Eigen::VectorXd contribution_of(int n, int h, const std::string& v) const;
};

/// Fills the table; throws if additivity is violated beyond 1e-8
/// (which would signal an internal inconsistency).
DecompositionTable build_table(const GirSet& gir, const IrfPath& irf,
                               const std::vector<int>& n_list, int H);

/// CSV columns n,h,variable,contribution (outcome row), with a trailing
/// "total" row per (n,h) carrying the outcome-row IRF value.
void write_decomposition_csv(const DecompositionTable& table,
                             const std::string& outcome,
                             const std::string& path);

/// JSON nested by n -> h -> variable (full K-vectors, plus "total").
std::string decomposition_to_json_text(const DecompositionTable& table);

void write_irf_csv(const IrfPath& irf, const std::string& path);
std::string irf_to_json_text(const IrfPath& irf);

}  // namespace medvar
