#include "medvar/var_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "io_detail.hpp"
#include "medvar/ols.hpp"

namespace medvar {

namespace {

constexpr double kStabilityMargin = 1e-8;
constexpr double kSymmetryTol = 1e-10;

void check_square_same_dim(const std::vector<Eigen::MatrixXd>& phi) {
  if (phi.empty()) throw std::invalid_argument("model needs at least one lag matrix");
  const long k = phi.front().rows();
  for (const auto& m : phi)
    if (m.rows() != k || m.cols() != k)
      throw std::invalid_argument("lag matrices must all be K x K");
}

double companion_spectral_radius(const std::vector<Eigen::MatrixXd>& phi) {
  Eigen::MatrixXd comp = companion_matrix(phi);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Removes the least-squares fit on [1, t] from every column.
Eigen::MatrixXd remove_linear_trend(const Eigen::MatrixXd& values) {
  const long T = values.rows();
  Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(T, 0.0, static_cast<double>(T - 1));
  t.array() -= t.mean();  // orthogonal to the intercept
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

}  // namespace

int VarModel::index_of(const std::string& label) const {
  auto it = std::find(names.begin(), names.end(), label);
  if (it == names.end())
    throw std::invalid_argument("unknown variable label: \"" + label + "\"");
  return static_cast<int>(it - names.begin());
}

Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& phi) {
  check_square_same_dim(phi);
  const int k = static_cast<int>(phi.front().rows());
  const int p = static_cast<int>(phi.size());
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(k * p, k * p);
  for (int j = 0; j < p; ++j) comp.block(0, j * k, k, k) = phi[j];
  if (p > 1)
    comp.block(k, 0, k * (p - 1), k * (p - 1)) =
        Eigen::MatrixXd::Identity(k * (p - 1), k * (p - 1));
  return comp;
}

bool is_stable(const VarModel& model) {
  return companion_spectral_radius(model.phi) < 1.0 - kStabilityMargin;
}

VarModel make_var_model(std::vector<Eigen::MatrixXd> phi, Eigen::MatrixXd sigma_u,
                        std::vector<std::string> names, Eigen::VectorXd intercepts) {
  check_square_same_dim(phi);
  const long k = phi.front().rows();
  if (sigma_u.rows() != k || sigma_u.cols() != k)
    throw std::invalid_argument("sigma_u must be K x K");
  if ((sigma_u - sigma_u.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
    throw std::invalid_argument("sigma_u is not symmetric within 1e-10");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma_u);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("sigma_u is not positive definite");
  if (static_cast<long>(names.size()) != k)
    throw std::invalid_argument("need one label per variable");
  if (intercepts.size() == 0) intercepts = Eigen::VectorXd::Zero(k);
  if (intercepts.size() != k)
    throw std::invalid_argument("intercept vector has wrong length");

  VarModel model;
  model.phi = std::move(phi);
  model.sigma_u = std::move(sigma_u);
  model.names = std::move(names);
  model.intercepts = std::move(intercepts);
  model.stable = is_stable(model);
  return model;
}

VarModel estimate_var(const Dataset& data, const VarSpec& spec, bool df_correction) {
  data.validate();
  if (spec.p < 1) throw std::invalid_argument("lag order must be >= 1");
  const long T = data.rows();
  const int k = static_cast<int>(data.cols());
  const int p = spec.p;
  if (!data.has_rows_for(p))
    throw std::runtime_error("insufficient rows: T = " + std::to_string(T) +
                             " < K*p + p + 1 = " + std::to_string(k * p + p + 1));
  for (const std::string* label : {&spec.shock_var, &spec.outcome_var, &spec.mediator_var})
    if (!label->empty()) data.column_index(*label);
  if (!spec.shock_var.empty() && (spec.shock_var == spec.outcome_var ||
                                  spec.shock_var == spec.mediator_var))
    throw std::invalid_argument("shock, outcome and mediator labels must be distinct");
  if (!spec.outcome_var.empty() && spec.outcome_var == spec.mediator_var)
    throw std::invalid_argument("shock, outcome and mediator labels must be distinct");

  Eigen::MatrixXd W = spec.detrend ? remove_linear_trend(data.values) : data.values;

  const long rows = T - p;
  const int ncoef = k * p + (spec.demean ? 1 : 0);
  const long dof = df_correction ? rows - static_cast<long>(k) * p - 1 : rows;
  if (dof < 1)
    throw std::runtime_error("insufficient rows for the covariance divisor T - p - K*p - 1");

  Eigen::MatrixXd X(rows, ncoef);
  int col = 0;
  if (spec.demean) X.col(col++).setOnes();
  for (int j = 1; j <= p; ++j)
    for (int v = 0; v < k; ++v) X.col(col++) = W.col(v).segment(p - j, rows);
  Eigen::MatrixXd Y = W.bottomRows(rows);

  OlsFit fit = solve_ols(X, Y);

  VarModel model;
  model.names = data.names;
  model.intercepts = spec.demean ? Eigen::VectorXd(fit.coef.row(0).transpose())
                                 : Eigen::VectorXd(Eigen::VectorXd::Zero(k));
  model.phi.reserve(p);
  const int base = spec.demean ? 1 : 0;
  for (int j = 0; j < p; ++j)
    model.phi.push_back(fit.coef.block(base + j * k, 0, k, k).transpose());
  model.residuals = fit.residuals;
  model.sigma_u = fit.residuals.transpose() * fit.residuals / static_cast<double>(dof);
  // enforce exact symmetry against accumulation round-off
  model.sigma_u = ((model.sigma_u + model.sigma_u.transpose()) / 2.0).eval();
  model.stable = is_stable(model);
  return model;
}

double standard_normal(std::mt19937_64& rng) {
  // 53-bit uniforms in (0,1); one draw per pair keeps the stream simple.
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Dataset simulate_var(const VarModel& model, long T, std::uint64_t seed, long burn_in) {
  return simulate_var(model, T, seed, burn_in, standard_normal);
}

Dataset simulate_var(const VarModel& model, long T, std::uint64_t seed,
                     long burn_in, const InnovationSampler& draw) {
  if (!model.stable) throw std::runtime_error("cannot simulate from an unstable model");
  if (T < 1) throw std::invalid_argument("simulation length must be positive");
  if (burn_in < 0) throw std::invalid_argument("burn-in must be nonnegative");

  const int k = model.dim();
  const int p = model.lag_order();
  Eigen::LLT<Eigen::MatrixXd> llt(model.sigma_u);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("sigma_u is not positive definite");
  const Eigen::MatrixXd chol_l = llt.matrixL();

  std::mt19937_64 rng(seed);
  const long total = burn_in + T;
  Eigen::MatrixXd path = Eigen::MatrixXd::Zero(total + p, k);  // p zero-rows of history
  Eigen::VectorXd z(k);
  for (long t = p; t < total + p; ++t) {
    for (int i = 0; i < k; ++i) z(i) = draw(rng);
    Eigen::VectorXd w = model.intercepts + chol_l * z;
    for (int j = 1; j <= p; ++j) w += model.phi[j - 1] * path.row(t - j).transpose();
    path.row(t) = w.transpose();
  }

  Dataset out;
  out.values = path.bottomRows(T);
  out.names = model.names;
  return out;
}

std::string model_to_json_text(const VarModel& model) {
  nlohmann::json j;
  j["p"] = model.lag_order();
  j["names"] = model.names;
  auto mat_to_json = [](const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (long r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (long c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  nlohmann::json phis = nlohmann::json::array();
  for (const auto& m : model.phi) phis.push_back(mat_to_json(m));
  j["phi"] = std::move(phis);
  j["sigma_u"] = mat_to_json(model.sigma_u);
  j["intercepts"] = std::vector<double>(model.intercepts.data(),
                                        model.intercepts.data() + model.intercepts.size());
  return j.dump(2) + "\n";
}

VarModel model_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const int p = j.at("p").get<int>();
  std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
  const int k = static_cast<int>(names.size());
  auto mat_from_json = [k](const nlohmann::json& rows) {
    Eigen::MatrixXd m(rows.size(), k);
    for (size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (static_cast<int>(row.size()) != k)
        throw std::runtime_error("matrix row length does not match variable count");
      for (int c = 0; c < k; ++c) m(static_cast<long>(r), c) = row[c].get<double>();
    }
    return m;
  };
  const auto& phis = j.at("phi");
  if (static_cast<int>(phis.size()) != p)
    throw std::runtime_error("phi array length does not match p");
  std::vector<Eigen::MatrixXd> phi;
  phi.reserve(p);
  for (const auto& m : phis) phi.push_back(mat_from_json(m));
  Eigen::MatrixXd sigma = mat_from_json(j.at("sigma_u"));
  std::vector<double> ic = j.at("intercepts").get<std::vector<double>>();
  Eigen::VectorXd intercepts =
      Eigen::Map<const Eigen::VectorXd>(ic.data(), static_cast<long>(ic.size()));
  return make_var_model(std::move(phi), std::move(sigma), std::move(names),
                        std::move(intercepts));
}

void save_model_json(const VarModel& model, const std::string& path) {
  detail::write_file(path, model_to_json_text(model));
}

VarModel load_model_json(const std::string& path) {
  return model_from_json_text(detail::read_file(path));
}

}  // namespace medvar
