#include "medvar/ols.hpp"

#include <stdexcept>
#include <string>

namespace medvar {

OlsFit solve_ols(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
  if (X.rows() != Y.rows())
    throw std::invalid_argument("design and response row counts differ");
  if (X.rows() < X.cols())
    throw std::runtime_error("insufficient rows: " + std::to_string(X.rows()) +
                             " observations for " + std::to_string(X.cols()) +
                             " regressors");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < X.cols())
    throw std::runtime_error(
        "singular regressor cross-product (rank " + std::to_string(qr.rank()) +
        " of " + std::to_string(X.cols()) + "): collinear or constant columns");
  OlsFit fit;
  fit.coef = qr.solve(Y);
  fit.residuals = Y - X * fit.coef;
  return fit;
}

}  // namespace medvar
