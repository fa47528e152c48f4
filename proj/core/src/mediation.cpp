#include "medvar/mediation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "io_detail.hpp"
#include "medvar/ols.hpp"

namespace medvar {

namespace {

// Removes the least-squares fit on [1, t] from every column; mirrors the
// pre-processing used by estimate_var so projection scales match.
Eigen::MatrixXd remove_linear_trend(const Eigen::MatrixXd& values) {
  const long T = values.rows();
  Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(T, 0.0, static_cast<double>(T - 1));
  t.array() -= t.mean();
  const double tt = t.squaredNorm();
  Eigen::MatrixXd out = values;
  for (long c = 0; c < values.cols(); ++c) {
    const double mean = values.col(c).mean();
    const double slope = t.dot(values.col(c)) / tt;
    out.col(c).array() -= mean;
    out.col(c) -= slope * t;
  }
  return out;
}

struct LpContext {
  Eigen::MatrixXd w;  // transformed values
  int k = 0;
  int p = 0;
  long rows = 0;  // usable anchor periods t = p .. p+rows-1
};

// Anchors t run over p..T-1-lead so that both the longest lead and the
// p lags stay inside the sample.
LpContext make_context(const Dataset& data, const VarSpec& spec, int lead) {
  data.validate();
  if (spec.p < 1) throw std::invalid_argument("lag order must be >= 1");
  LpContext ctx;
  ctx.w = spec.detrend ? remove_linear_trend(data.values) : data.values;
  ctx.k = static_cast<int>(data.cols());
  ctx.p = spec.p;
  ctx.rows = data.rows() - spec.p - lead;
  if (ctx.rows < 1)
    throw std::runtime_error("insufficient rows for horizon-" + std::to_string(lead) +
                             " leads with " + std::to_string(spec.p) + " lags");
  return ctx;
}

// Column of variable v at offset `shift` relative to the anchor period.
Eigen::VectorXd shifted(const LpContext& ctx, int v, int shift) {
  return ctx.w.col(v).segment(ctx.p + shift, ctx.rows);
}

void append_lag_block(const LpContext& ctx, Eigen::MatrixXd& X, int& col) {
  for (int j = 1; j <= ctx.p; ++j)
    for (int v = 0; v < ctx.k; ++v) X.col(col++) = shifted(ctx, v, -j);
}

}  // namespace

MediationEffect ame(const GirSet& gir, const IrfPath& irf, const std::string& mediator,
                    const std::string& outcome, int n, int h) {
  const int y = gir.index_of(outcome);
  MediationEffect effect;
  effect.value = contribution(gir, irf, mediator, n, h)(y);
  effect.h = h;
  effect.n = n;
  effect.mediator = mediator;
  effect.outcome = outcome;
  return effect;
}

LpRegression lp_total_effect(const Dataset& data, const VarSpec& spec, int h) {
  if (h < 0) throw std::invalid_argument("horizon must be >= 0");
  LpContext ctx = make_context(data, spec, h);
  const int x = data.column_index(spec.shock_var);
  const int y = data.column_index(spec.outcome_var);

  const int ncoef = (spec.demean ? 1 : 0) + 1 + ctx.k * ctx.p;
  Eigen::MatrixXd X(ctx.rows, ncoef);
  int col = 0;
  if (spec.demean) X.col(col++).setOnes();
  const int x_pos = col;
  X.col(col++) = shifted(ctx, x, 0);
  append_lag_block(ctx, X, col);

  OlsFit fit = solve_ols(X, shifted(ctx, y, h));

  LpRegression lp;
  lp.kind = LpKind::TotalEffect;
  lp.coefficients = fit.coef.row(x_pos).transpose();
  lp.residuals = fit.residuals;
  lp.h = h;
  return lp;
}

LpRegression lp_mediator_equation(const Dataset& data, const VarSpec& spec, int n) {
  if (n < 0) throw std::invalid_argument("decomposition time must be >= 0");
  LpContext ctx = make_context(data, spec, n);
  const int x = data.column_index(spec.shock_var);
  const int m = data.column_index(spec.mediator_var);

  const int ncoef = (spec.demean ? 1 : 0) + 1 + ctx.k * ctx.p;
  Eigen::MatrixXd X(ctx.rows, ncoef);
  int col = 0;
  if (spec.demean) X.col(col++).setOnes();
  const int x_pos = col;
  X.col(col++) = shifted(ctx, x, 0);
  append_lag_block(ctx, X, col);

  Eigen::MatrixXd Y(ctx.rows, n + 1);
  for (int j = 0; j <= n; ++j) Y.col(j) = shifted(ctx, m, j);

  OlsFit fit = solve_ols(X, Y);

  LpRegression lp;
  lp.kind = LpKind::MediatorEquation;
  lp.coefficients = fit.coef.row(x_pos).transpose();  // (theta_{M,0}, ..., theta_{M,n})
  lp.residuals = fit.residuals;
  lp.n = n;
  return lp;
}

LpRegression lp_outcome_equation(const Dataset& data, const VarSpec& spec, int n, int h) {
  if (n < 0) throw std::invalid_argument("decomposition time must be >= 0");
  if (n >= h)
    throw std::invalid_argument("decomposition time n = " + std::to_string(n) +
                                " must precede horizon h = " + std::to_string(h));
  LpContext ctx = make_context(data, spec, h);
  const int m = data.column_index(spec.mediator_var);
  const int y = data.column_index(spec.outcome_var);

  // Mediator block first, then the remaining variables in column order,
  // each as (v_{t+n}, ..., v_t), then p further lags of everything.
  const int ncoef = (spec.demean ? 1 : 0) + ctx.k * (n + 1) + ctx.k * ctx.p;
  Eigen::MatrixXd X(ctx.rows, ncoef);
  int col = 0;
  if (spec.demean) X.col(col++).setOnes();
  const int m_pos = col;
  for (int j = 0; j <= n; ++j) X.col(col++) = shifted(ctx, m, n - j);
  for (int v = 0; v < ctx.k; ++v) {
    if (v == m) continue;
    for (int j = 0; j <= n; ++j) X.col(col++) = shifted(ctx, v, n - j);
  }
  append_lag_block(ctx, X, col);

  OlsFit fit = solve_ols(X, shifted(ctx, y, h));

  LpRegression lp;
  lp.kind = LpKind::OutcomeEquation;
  lp.coefficients = fit.coef.block(m_pos, 0, n + 1, 1);  // Phi_{YM,1..n+1}^{(h-n)}
  lp.residuals = fit.residuals;
  lp.h = h;
  lp.n = n;
  return lp;
}

Prop53Report check_prop53(const GirSet& gir, const IrfPath& irf,
                          const std::string& mediator, const std::string& outcome,
                          int n, int h, double tol) {
  if (n < 0 || n >= h)
    throw std::invalid_argument("need 0 <= n < h");
  Prop53Report report;
  report.n = n;
  report.h = h;
  report.mediator = mediator;
  report.outcome = outcome;
  report.granger_coeffs = granger_coefficients(gir, mediator, outcome, h - n);
  report.noncausal = report.granger_coeffs.cwiseAbs().maxCoeff() < tol;
  report.ame = ame(gir, irf, mediator, outcome, n, h).value;

  const int mi = gir.index_of(mediator);
  double max_theta = 0.0;
  for (int j = 0; j <= n; ++j)
    max_theta = std::max(max_theta, std::abs(irf.theta(j, mi)));
  report.bound = tol * (n + 1) * max_theta;

  if (!report.noncausal) {
    report.pass = true;  // vacuous: nothing to assert
    report.status = "precondition unmet";
  } else if (report.ame == 0.0 || std::abs(report.ame) <= report.bound) {
    report.pass = true;
    report.status = "holds";
  } else {
    report.pass = false;
    report.status = "violated";
  }
  return report;
}

std::string prop53_to_json_text(const Prop53Report& report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["h"] = report.h;
  j["mediator"] = report.mediator;
  j["outcome"] = report.outcome;
  j["granger_coeffs"] = std::vector<double>(
      report.granger_coeffs.data(),
      report.granger_coeffs.data() + report.granger_coeffs.size());
  j["noncausal"] = report.noncausal;
  j["ame"] = report.ame;
  j["bound"] = report.bound;
  j["pass"] = report.pass;
  j["status"] = report.status;
  return j.dump() + "\n";
}

}  // namespace medvar
