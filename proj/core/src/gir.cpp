#include "medvar/gir.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "io_detail.hpp"

namespace medvar {

int GirSet::index_of(const std::string& label) const {
  auto it = std::find(names.begin(), names.end(), label);
  if (it == names.end())
    throw std::invalid_argument("unknown variable label: \"" + label + "\"");
  return static_cast<int>(it - names.begin());
}

const Eigen::MatrixXd& GirSet::at(int h, int j) const {
  if (h < 1 || h > h_max)
    throw std::out_of_range("horizon " + std::to_string(h) + " outside 1.." +
                            std::to_string(h_max));
  if (j < 1 || j > j_max)
    throw std::out_of_range("lag index " + std::to_string(j) + " outside 1.." +
                            std::to_string(j_max));
  return coeffs[h - 1][j - 1];
}

GirSet compute_gir(const VarModel& model, int h_max, int j_max) {
  if (h_max < 1) throw std::invalid_argument("h_max must be >= 1");
  const int p = model.lag_order();
  const int k = model.dim();
  if (j_max == 0) j_max = p + h_max;
  if (j_max < 1) throw std::invalid_argument("j_max must be >= 1");

  // Work internally with at least p lag slots so the shifted neighbour
  // Phi_{j+1}^{(h)} is never truncated; entries beyond p are exactly zero.
  const int jw = std::max(j_max, p);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(k, k);
  auto phi_at = [&](int j) -> const Eigen::MatrixXd& {
    return j <= p ? model.phi[j - 1] : zero;
  };

  std::vector<std::vector<Eigen::MatrixXd>> table(
      h_max, std::vector<Eigen::MatrixXd>(jw));
  for (int j = 1; j <= jw; ++j) table[0][j - 1] = phi_at(j);
  for (int h = 1; h < h_max; ++h) {
    const Eigen::MatrixXd& lead = table[h - 1][0];  // Phi_1^{(h)}
    for (int j = 1; j <= jw; ++j) {
      const Eigen::MatrixXd& shifted = j + 1 <= jw ? table[h - 1][j] : zero;
      table[h][j - 1] = shifted + lead * phi_at(j);
    }
  }

  GirSet gir;
  gir.h_max = h_max;
  gir.j_max = j_max;
  gir.names = model.names;
  gir.coeffs.resize(h_max);
  for (int h = 0; h < h_max; ++h)
    gir.coeffs[h].assign(table[h].begin(), table[h].begin() + j_max);
  return gir;
}

std::vector<Eigen::MatrixXd> ma_coefficients(const VarModel& model, int H) {
  if (H < 0) throw std::invalid_argument("H must be >= 0");
  if (!model.stable)
    throw std::runtime_error("moving-average inversion requires a stable model");
  const int k = model.dim();
  const int p = model.lag_order();
  std::vector<Eigen::MatrixXd> psi;
  psi.reserve(H + 1);
  psi.push_back(Eigen::MatrixXd::Identity(k, k));
  for (int h = 1; h <= H; ++h) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(k, k);
    for (int j = 1; j <= std::min(h, p); ++j) s += model.phi[j - 1] * psi[h - j];
    psi.push_back(std::move(s));
  }
  return psi;
}

Eigen::VectorXd granger_coefficients(const GirSet& gir, const std::string& from_var,
                                     const std::string& to_var, int h) {
  const int from = gir.index_of(from_var);
  const int to = gir.index_of(to_var);
  if (h < 1 || h > gir.h_max)
    throw std::out_of_range("horizon " + std::to_string(h) + " outside 1.." +
                            std::to_string(gir.h_max));
  Eigen::VectorXd out(gir.j_max);
  for (int j = 1; j <= gir.j_max; ++j) out(j - 1) = gir.at(h, j)(to, from);
  return out;
}

bool is_noncausal(const GirSet& gir, const std::string& from_var,
                  const std::string& to_var, int h, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  return granger_coefficients(gir, from_var, to_var, h).cwiseAbs().maxCoeff() < tol;
}

std::string gir_to_json_text(const GirSet& gir) {
  nlohmann::json j;
  j["h_max"] = gir.h_max;
  j["j_max"] = gir.j_max;
  j["names"] = gir.names;
  nlohmann::json byh;
  for (int h = 1; h <= gir.h_max; ++h) {
    nlohmann::json byj;
    for (int jj = 1; jj <= gir.j_max; ++jj) {
      const Eigen::MatrixXd& m = gir.at(h, jj);
      nlohmann::json rows = nlohmann::json::array();
      for (long r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
      }
      byj[std::to_string(jj)] = std::move(rows);
    }
    byh[std::to_string(h)] = std::move(byj);
  }
  j["coeffs"] = std::move(byh);
  return j.dump() + "\n";
}

void write_gir_slice_csv(const GirSet& gir, const std::string& from_var,
                         const std::string& to_var, const std::string& path) {
  std::ostringstream out;
  out << "h";
  for (int j = 1; j <= gir.j_max; ++j) out << ",j" << j;
  out << '\n';
  for (int h = 1; h <= gir.h_max; ++h) {
    Eigen::VectorXd row = granger_coefficients(gir, from_var, to_var, h);
    out << h;
    for (int j = 0; j < row.size(); ++j) out << ',' << detail::format_double(row(j));
    out << '\n';
  }
  detail::write_file(path, out.str());
}

}  // namespace medvar
