#pragma once

#include <Eigen/Dense>
#include <string>

#include "medvar/dataset.hpp"
#include "medvar/decomposition.hpp"
#include "medvar/gir.hpp"

namespace medvar {

/// The part of the horizon-h treatment effect on the outcome that is
/// transmitted through the mediator path up to decomposition time n.
struct MediationEffect {
  double value = 0.0;
  int h = 0;
  int n = 0;
  std::string mediator;
  std::string outcome;
};

/// Outcome-row of the mediator's contribution at (n, h); identical to
/// decomposition::contribution restricted to the outcome entry.
MediationEffect ame(const GirSet& gir, const IrfPath& irf,
                    const std::string& mediator, const std::string& outcome,
                    int n, int h);

enum class LpKind { TotalEffect, MediatorEquation, OutcomeEquation };

/// A local-projection regression: the coefficient block of interest
/// plus residuals for diagnostics.
struct LpRegression {
  LpKind kind = LpKind::TotalEffect;
  Eigen::VectorXd coefficients;  // see the factory functions
  Eigen::MatrixXd residuals;     // rows x equations
  int h = 0;
  int n = 0;
};

/// Least squares of Y_{t+h} on X_t and p lags of all variables.
/// coefficients = [slope on X_t]: the projection estimate of the
/// horizon-h total effect in unit-innovation scale.
LpRegression lp_total_effect(const Dataset& data, const VarSpec& spec, int h);

/// Stacked least squares of M_{t+j} (j = 0..n) on X_t and p lags.
/// coefficients = (theta_{M,0}, ..., theta_{M,n}).
LpRegression lp_mediator_equation(const Dataset& data, const VarSpec& spec,
                                  int n);

/// Least squares of Y_{t+h} on the blocks (v_{t+n}, ..., v_t) for every
/// variable v (mediator block first) plus p further lags of all
/// variables. coefficients = the mediator block, which estimates
/// (Phi_{YM,1}^{(h-n)}, ..., Phi_{YM,n+1}^{(h-n)}).
LpRegression lp_outcome_equation(const Dataset& data, const VarSpec& spec,
                                 int n, int h);

/// Outcome of checking that multi-horizon non-causality of the
/// mediator for the outcome forces the mediation effect to zero.
struct Prop53Report {
  int n = 0;
  int h = 0;
  std::string mediator;
  std::string outcome;
  Eigen::VectorXd granger_coeffs;  // at horizon h - n
  bool noncausal = false;
  double ame = 0.0;
  double bound = 0.0;  // tol * (n+1) * max |theta_{M,0..n}|
  bool pass = false;
  std::string status;  // "holds" | "violated" | "precondition unmet"
};

/// Evaluates is_noncausal(mediator -> outcome, h - n, tol); when
/// non-causality holds, asserts |ame| <= bound and reports both sides.
/// When it does not hold the check is not applicable and the report
/// says so.
Prop53Report check_prop53(const GirSet& gir, const IrfPath& irf,
                          const std::string& mediator,
                          const std::string& outcome, int n, int h,
                          double tol = 1e-10);

/// JSON with fields {n, h, mediator, outcome, granger_coeffs,
/// noncausal, ame, pass, status}.
std::string prop53_to_json_text(const Prop53Report& report);

}  // namespace medvar
