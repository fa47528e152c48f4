#pragma once

#include <Eigen/Dense>

namespace medvar {

struct OlsFit {
  Eigen::MatrixXd coef;       // cols(X) x cols(Y)
  Eigen::MatrixXd residuals;  // rows(X) x cols(Y)
};

/// Multi-RHS least squares via column-pivoted QR. Throws
/// std::runtime_error on a rank-deficient design (collinear or
/// constant columns) or when rows(X) < cols(X).
OlsFit solve_ols(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

}  // namespace medvar
