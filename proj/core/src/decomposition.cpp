#include "medvar/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "io_detail.hpp"

namespace medvar {

namespace {
constexpr double kAdditivityTol = 1e-8;

void check_window(const GirSet& gir, int n, int h, int H) {
  if (n < 0) throw std::invalid_argument("decomposition time must be >= 0");
  if (n >= h)
    throw std::invalid_argument("decomposition time n = " + std::to_string(n) +
                                " must precede horizon h = " + std::to_string(h));
  if (h > H)
    throw std::invalid_argument("horizon " + std::to_string(h) +
                                " exceeds the impulse-response bound " + std::to_string(H));
  if (h - n > gir.h_max || n + 1 > gir.j_max)
    throw std::invalid_argument(
        "coefficient table too small for (n, h) = (" + std::to_string(n) + ", " +
        std::to_string(h) + "); need h_max >= " + std::to_string(h - n) +
        " and j_max >= " + std::to_string(n + 1));
}
}  // namespace

ShockIdentification identify_shock(const VarModel& model, const std::string& shock_var,
                                   Normalization normalization) {
  const int x = model.index_of(shock_var);
  const double var_x = model.sigma_u(x, x);
  if (!(var_x > 0.0))
    throw std::runtime_error("degenerate covariance: shock variance is not positive");
  ShockIdentification shock;
  shock.shock_var = shock_var;
  shock.shock_sd = std::sqrt(var_x);
  shock.normalization = normalization;
  const double scale =
      normalization == Normalization::UnitInnovation ? var_x : shock.shock_sd;
  shock.theta0 = model.sigma_u.col(x) / scale;
  return shock;
}

ShockIdentification user_supplied_shock(const VarModel& model,
                                        const std::string& shock_var,
                                        const Eigen::VectorXd& theta0) {
  model.index_of(shock_var);
  if (theta0.size() != model.dim())
    throw std::invalid_argument("impact vector length " + std::to_string(theta0.size()) +
                                " does not match variable count " +
                                std::to_string(model.dim()));
  ShockIdentification shock;
  shock.shock_var = shock_var;
  shock.theta0 = theta0;
  shock.shock_sd = std::sqrt(model.sigma_u(model.index_of(shock_var),
                                           model.index_of(shock_var)));
  shock.normalization = Normalization::UnitInnovation;
  return shock;
}

Eigen::VectorXd IrfPath::theta_at(int h) const {
  if (h < 0 || h > horizon)
    throw std::out_of_range("horizon " + std::to_string(h) + " outside 0.." +
                            std::to_string(horizon));
  return theta.row(h).transpose();
}

double IrfPath::entry(int h, const std::string& var) const {
  auto it = std::find(names.begin(), names.end(), var);
  if (it == names.end())
    throw std::invalid_argument("unknown variable label: \"" + var + "\"");
  if (h < 0 || h > horizon)
    throw std::out_of_range("horizon " + std::to_string(h) + " outside 0.." +
                            std::to_string(horizon));
  return theta(h, it - names.begin());
}

IrfPath impulse_response(const GirSet& gir, const ShockIdentification& shock, int H) {
  if (H < 0) throw std::invalid_argument("H must be >= 0");
  if (H > gir.h_max)
    throw std::invalid_argument("H = " + std::to_string(H) +
                                " exceeds the table's h_max = " + std::to_string(gir.h_max));
  if (shock.theta0.size() != gir.dim())
    throw std::invalid_argument("impact vector length does not match variable count");
  IrfPath irf;
  irf.shock = shock;
  irf.names = gir.names;
  irf.horizon = H;
  irf.theta.resize(H + 1, gir.dim());
  irf.theta.row(0) = shock.theta0.transpose();
  for (int h = 1; h <= H; ++h)
    irf.theta.row(h) = (gir.at(h, 1) * shock.theta0).transpose();
  return irf;
}

Eigen::VectorXd represent_at(const GirSet& gir, const IrfPath& irf, int n, int h) {
  check_window(gir, n, h, irf.horizon);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(gir.dim());
  for (int k = 0; k <= n; ++k)
    out += gir.at(h - n, k + 1) * irf.theta_at(n - k);
  return out;
}

Eigen::VectorXd contribution(const GirSet& gir, const IrfPath& irf,
                             const std::string& v, int n, int h) {
  const int vi = gir.index_of(v);
  check_window(gir, n, h, irf.horizon);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(gir.dim());
  for (int k = 0; k <= n; ++k)
    out += gir.at(h - n, k + 1).col(vi) * irf.theta(n - k, vi);
  return out;
}

const Eigen::MatrixXd& DecompositionTable::at(int n, int h) const {
  auto it = cells.find(n);
  if (it == cells.end())
    throw std::out_of_range("no decomposition front at n = " + std::to_string(n));
  if (h <= n || h > horizon)
    throw std::out_of_range("horizon " + std::to_string(h) + " outside (" +
                            std::to_string(n) + ", " + std::to_string(horizon) + "]");
  return it->second[h - n - 1];
}

Eigen::VectorXd DecompositionTable::contribution_of(int n, int h,
                                                    const std::string& v) const {
  auto it = std::find(names.begin(), names.end(), v);
  if (it == names.end())
    throw std::invalid_argument("unknown variable label: \"" + v + "\"");
  return at(n, h).col(it - names.begin());
}

DecompositionTable build_table(const GirSet& gir, const IrfPath& irf,
                               const std::vector<int>& n_list, int H) {
  if (H < 1) throw std::invalid_argument("H must be >= 1");
  if (H > irf.horizon)
    throw std::invalid_argument("H exceeds the impulse-response horizon");
  DecompositionTable table;
  table.n_list = n_list;
  std::sort(table.n_list.begin(), table.n_list.end());
  table.n_list.erase(std::unique(table.n_list.begin(), table.n_list.end()),
                     table.n_list.end());
  table.horizon = H;
  table.names = gir.names;
  table.irf_theta = irf.theta.topRows(H + 1);

  const int k = gir.dim();
  for (int n : table.n_list) {
    if (n < 0 || n >= H)
      throw std::invalid_argument("decomposition time " + std::to_string(n) +
                                  " outside [0, H)");
    std::vector<Eigen::MatrixXd> front;
    front.reserve(H - n);
    for (int h = n + 1; h <= H; ++h) {
      Eigen::MatrixXd cell(k, k);
      for (int v = 0; v < k; ++v)
        cell.col(v) = contribution(gir, irf, gir.names[v], n, h);
      const double gap = (cell.rowwise().sum() - irf.theta_at(h)).cwiseAbs().maxCoeff();
      if (gap > kAdditivityTol)
        throw std::runtime_error(
            "additivity violated at (n, h) = (" + std::to_string(n) + ", " +
            std::to_string(h) + "): max gap " + std::to_string(gap));
      front.push_back(std::move(cell));
    }
    table.cells[n] = std::move(front);
  }
  return table;
}

void write_decomposition_csv(const DecompositionTable& table,
                             const std::string& outcome, const std::string& path) {
  auto it = std::find(table.names.begin(), table.names.end(), outcome);
  if (it == table.names.end())
    throw std::invalid_argument("unknown outcome label: \"" + outcome + "\"");
  const long y = it - table.names.begin();
  std::ostringstream out;
  out << "n,h,variable,contribution\n";
  for (int n : table.n_list) {
    for (int h = n + 1; h <= table.horizon; ++h) {
      const Eigen::MatrixXd& cell = table.at(n, h);
      for (size_t v = 0; v < table.names.size(); ++v)
        out << n << ',' << h << ',' << table.names[v] << ','
            << detail::format_double(cell(y, static_cast<long>(v))) << '\n';
      out << n << ',' << h << ",total,"
          << detail::format_double(table.irf_theta(h, y)) << '\n';
    }
  }
  detail::write_file(path, out.str());
}

std::string decomposition_to_json_text(const DecompositionTable& table) {
  nlohmann::json j;
  j["names"] = table.names;
  j["H"] = table.horizon;
  j["n_list"] = table.n_list;
  nlohmann::json byn;
  for (int n : table.n_list) {
    nlohmann::json byh;
    for (int h = n + 1; h <= table.horizon; ++h) {
      const Eigen::MatrixXd& cell = table.at(n, h);
      nlohmann::json byv;
      for (size_t v = 0; v < table.names.size(); ++v) {
        std::vector<double> col(cell.rows());
        for (long r = 0; r < cell.rows(); ++r) col[r] = cell(r, static_cast<long>(v));
        byv[table.names[v]] = col;
      }
      std::vector<double> tot(table.irf_theta.cols());
      for (long c = 0; c < table.irf_theta.cols(); ++c) tot[c] = table.irf_theta(h, c);
      byv["total"] = tot;
      byh[std::to_string(h)] = std::move(byv);
    }
    byn[std::to_string(n)] = std::move(byh);
  }
  j["contributions"] = std::move(byn);
  return j.dump() + "\n";
}

void write_irf_csv(const IrfPath& irf, const std::string& path) {
  std::ostringstream out;
  out << "h";
  for (const auto& name : irf.names) out << ',' << name;
  out << '\n';
  for (int h = 0; h <= irf.horizon; ++h) {
    out << h;
    for (long c = 0; c < irf.theta.cols(); ++c)
      out << ',' << detail::format_double(irf.theta(h, c));
    out << '\n';
  }
  detail::write_file(path, out.str());
}

std::string irf_to_json_text(const IrfPath& irf) {
  nlohmann::json j;
  j["names"] = irf.names;
  j["H"] = irf.horizon;
  j["shock_var"] = irf.shock.shock_var;
  j["normalization"] = irf.shock.normalization == Normalization::UnitInnovation
                           ? "unit"
                           : "sd";
  j["shock_sd"] = irf.shock.shock_sd;
  nlohmann::json rows = nlohmann::json::array();
  for (int h = 0; h <= irf.horizon; ++h) {
    std::vector<double> row(irf.theta.cols());
    for (long c = 0; c < irf.theta.cols(); ++c) row[c] = irf.theta(h, c);
    rows.push_back(row);
  }
  j["theta"] = std::move(rows);
  return j.dump() + "\n";
}

}  // namespace medvar
