#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "medvar/dataset.hpp"

namespace medvar {

/// Estimation request: lag order plus pre-processing flags and the
/// labels of the shock, outcome and mediator columns.
struct VarSpec {
  int p = 1;
  bool demean = true;    // intercept in every equation
  bool detrend = false;  // remove a fitted linear time trend first
  std::string shock_var;
  std::string outcome_var;
  std::string mediator_var;
};

/// A reduced-form lag-p vector autoregression
///   W_t = intercepts + phi[0] W_{t-1} + ... + phi[p-1] W_{t-p} + u_t,
/// with innovation covariance sigma_u.
struct VarModel {
  std::vector<Eigen::MatrixXd> phi;  // p coefficient matrices, K x K
  Eigen::MatrixXd sigma_u;           // K x K, symmetric positive definite
  Eigen::MatrixXd residuals;         // (T-p) x K, rows aligned to t = p+1..T; empty if not estimated
  Eigen::VectorXd intercepts;        // K
  std::vector<std::string> names;    // K column labels
  bool stable = false;               // companion spectral radius < 1 - 1e-8

  int dim() const { return phi.empty() ? 0 : static_cast<int>(phi.front().rows()); }
  int lag_order() const { return static_cast<int>(phi.size()); }
  int index_of(const std::string& label) const;
};

/// Builds a model from raw coefficients, validating sigma_u (symmetric
/// within 1e-10, positive definite) and setting the stability flag.
VarModel make_var_model(std::vector<Eigen::MatrixXd> phi,
                        Eigen::MatrixXd sigma_u,
                        std::vector<std::string> names,
                        Eigen::VectorXd intercepts = Eigen::VectorXd());

/// Kp x Kp companion form of the lag polynomial.
Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& phi);

/// True iff the companion spectral radius is below 1 - 1e-8.
bool is_stable(const VarModel& model);

/// Equation-by-equation least squares of W_t on p lags of all
/// variables (plus intercept when spec.demean). When spec.detrend a
/// linear trend is removed from every column first. The covariance
/// divisor is T - p - K*p - 1 when df_correction, else T - p.
VarModel estimate_var(const Dataset& data, const VarSpec& spec,
                      bool df_correction = true);

/// Draws one scalar innovation; deterministic given the engine state.
using InnovationSampler = std::function<double(std::mt19937_64&)>;

/// Standard normal draws via Box-Muller on 53-bit uniforms. Used as the
/// default sampler; bit-reproducible for a fixed seed.
double standard_normal(std::mt19937_64& rng);

/// Simulates T rows from a stable model: seeded Gaussian innovations
/// with covariance sigma_u, iterated from zero initial conditions,
/// first burn_in rows discarded. Identical inputs give bit-identical
/// output. Roles of the returned dataset are unbound.
Dataset simulate_var(const VarModel& model, long T, std::uint64_t seed,
                     long burn_in = 1000);
Dataset simulate_var(const VarModel& model, long T, std::uint64_t seed,
                     long burn_in, const InnovationSampler& draw);

/// JSON serialization of {p, names, phi, sigma_u, intercepts}; numbers
/// round-trip bit-exactly through parse/serialize.
std::string model_to_json_text(const VarModel& model);
VarModel model_from_json_text(const std::string& text);
void save_model_json(const VarModel& model, const std::string& path);
VarModel load_model_json(const std::string& path);

}  // namespace medvar
