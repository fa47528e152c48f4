#include <doctest.h>

#include <cmath>

#include "medvar/reference_example.hpp"
#include "medvar/var_model.hpp"
#include "support/oracles.hpp"

using namespace medvar;
namespace mt = medvar::testing;

namespace {

Dataset as_dataset(Eigen::MatrixXd values, std::vector<std::string> names) {
  Dataset d;
  d.values = std::move(values);
  d.names = std::move(names);
  return d;
}

}  // namespace

TEST_CASE("make_var_model validates sigma_u") {
  std::vector<Eigen::MatrixXd> phi{0.5 * Eigen::MatrixXd::Identity(2, 2)};
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 0.5, 0.2, 1.0;  // asymmetric
  CHECK_THROWS(make_var_model(phi, bad, {"a", "b"}));
  Eigen::MatrixXd notpd(2, 2);
  notpd << 1.0, 2.0, 2.0, 1.0;  // indefinite
  CHECK_THROWS(make_var_model(phi, notpd, {"a", "b"}));
  CHECK_THROWS(make_var_model(phi, Eigen::MatrixXd::Identity(2, 2), {"a"}));
}

TEST_CASE("stability: 0.5*I is stable, identity is a unit root") {
  std::vector<Eigen::MatrixXd> half{0.5 * Eigen::MatrixXd::Identity(2, 2)};
  VarModel stable = make_var_model(half, Eigen::MatrixXd::Identity(2, 2), {"a", "b"});
  CHECK(stable.stable);
  CHECK(is_stable(stable));
  CHECK(mt::certify_spectral_radius_below_one(companion_matrix(stable.phi)));

  std::vector<Eigen::MatrixXd> unit{Eigen::MatrixXd::Identity(2, 2)};
  VarModel root = make_var_model(unit, Eigen::MatrixXd::Identity(2, 2), {"a", "b"});
  CHECK_FALSE(root.stable);
  CHECK(mt::certify_spectral_radius_at_least_one(companion_matrix(root.phi)));
}

TEST_CASE("the reference lag-6 model is stable, certified independently") {
  VarModel model = reference_var6();
  CHECK(model.stable);
  Eigen::MatrixXd comp = companion_matrix(model.phi);
  CHECK(comp.rows() == 18);
  CHECK(mt::certify_spectral_radius_below_one(comp, 16));
}

TEST_CASE("estimation recovers the reference coefficients from a long sample") {
  VarModel truth = reference_var6();
  Dataset data = simulate_var(truth, 200000, 20240607);
  VarSpec spec;
  spec.p = 6;
  VarModel fit = estimate_var(data, spec);
  for (int j = 0; j < 6; ++j) {
    const double err = (fit.phi[j] - truth.phi[j]).cwiseAbs().maxCoeff();
    CHECK(err < 0.02);
  }
  CHECK((fit.sigma_u - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 0.02);
  CHECK(fit.stable);
  CHECK(fit.residuals.rows() == data.rows() - 6);
}

TEST_CASE("white noise estimates to (almost) no dynamics") {
  std::vector<Eigen::MatrixXd> zero{Eigen::MatrixXd::Zero(1, 1)};
  VarModel wn = make_var_model(zero, Eigen::MatrixXd::Identity(1, 1), {"e"});
  Dataset data = simulate_var(wn, 100000, 99, 10);
  VarSpec spec;
  spec.p = 1;
  VarModel fit = estimate_var(data, spec);
  CHECK(std::abs(fit.phi[0](0, 0)) < 0.05);
}

TEST_CASE("a duplicated column makes the design singular") {
  VarModel truth = reference_var6();
  Dataset data = simulate_var(truth, 500, 7);
  Eigen::MatrixXd values(data.rows(), 4);
  values << data.values, data.values.col(2);
  Dataset dup = as_dataset(values, {"X", "Y", "M", "M2"});
  VarSpec spec;
  spec.p = 2;
  CHECK_THROWS_WITH_AS(estimate_var(dup, spec), doctest::Contains("singular"),
                       std::runtime_error);
}

TEST_CASE("estimation requires enough rows") {
  VarModel truth = reference_var6();
  Dataset data = simulate_var(truth, 20, 3);
  VarSpec spec;
  spec.p = 6;  // needs T >= 3*6 + 6 + 1 = 25
  CHECK_THROWS(estimate_var(data, spec));
}

TEST_CASE("least-squares residuals are orthogonal to the regressors") {
  std::mt19937_64 rng(11);
  VarModel truth = mt::random_stable_var(rng, 3, 2);
  Dataset data = simulate_var(truth, 4000, 5);
  VarSpec spec;
  spec.p = 2;
  VarModel fit = estimate_var(data, spec);

  const long rows = data.rows() - spec.p;
  const int k = 3;
  Eigen::MatrixXd X(rows, 1 + k * spec.p);
  X.col(0).setOnes();
  int col = 1;
  for (int j = 1; j <= spec.p; ++j)
    for (int v = 0; v < k; ++v)
      X.col(col++) = data.values.col(v).segment(spec.p - j, rows);
  const double worst =
      (X.transpose() * fit.residuals).cwiseAbs().maxCoeff() / static_cast<double>(rows);
  CHECK(worst < 1e-8);
}

TEST_CASE("estimation error shrinks as the sample grows") {
  VarModel truth = reference_var6();
  VarSpec spec;
  spec.p = 6;
  double errs[3];
  const long lengths[3] = {5000, 50000, 500000};
  for (int i = 0; i < 3; ++i) {
    Dataset data = simulate_var(truth, lengths[i], 31337 + i);
    VarModel fit = estimate_var(data, spec);
    double err = 0.0;
    for (int j = 0; j < 6; ++j)
      err = std::max(err, (fit.phi[j] - truth.phi[j]).cwiseAbs().maxCoeff());
    errs[i] = err;
  }
  CHECK(errs[2] < errs[0]);
  CHECK(errs[2] < 0.01);
}

TEST_CASE("demeaning is idempotent: pre-centering does not move coefficients") {
  std::mt19937_64 rng(21);
  VarModel truth = mt::random_stable_var(rng, 2, 2);
  VarModel shifted_model = truth;
  shifted_model.intercepts = Eigen::VectorXd::Constant(2, 1.5);
  Dataset data = simulate_var(shifted_model, 3000, 8);

  Eigen::MatrixXd centered = data.values;
  for (long c = 0; c < centered.cols(); ++c)
    centered.col(c).array() -= centered.col(c).mean();
  Dataset centered_data = as_dataset(centered, data.names);

  VarSpec spec;
  spec.p = 2;
  spec.demean = true;
  VarModel a = estimate_var(data, spec);
  VarModel b = estimate_var(centered_data, spec);
  for (int j = 0; j < 2; ++j)
    CHECK((a.phi[j] - b.phi[j]).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("simulation is deterministic in the seed") {
  VarModel truth = reference_var6();
  Dataset a = simulate_var(truth, 500, 7);
  Dataset b = simulate_var(truth, 500, 7);
  CHECK((a.values.array() == b.values.array()).all());
  Dataset c = simulate_var(truth, 500, 8);
  CHECK_FALSE((a.values.array() == c.values.array()).all());
}

TEST_CASE("zero-coefficient model simulates white noise") {
  std::vector<Eigen::MatrixXd> zero{Eigen::MatrixXd::Zero(2, 2)};
  VarModel wn = make_var_model(zero, Eigen::MatrixXd::Identity(2, 2), {"a", "b"});
  const long T = 100000;
  Dataset data = simulate_var(wn, T, 12345);
  for (int v = 0; v < 2; ++v) {
    Eigen::VectorXd x = data.values.col(v);
    x.array() -= x.mean();
    const double acov1 = x.head(T - 1).dot(x.tail(T - 1)) / static_cast<double>(T);
    CHECK(std::abs(acov1) < 4.0 / std::sqrt(static_cast<double>(T)));
  }
}

TEST_CASE("re-estimated residual covariance matches the identity innovation") {
  VarModel truth = reference_var6();
  Dataset data = simulate_var(truth, 100000, 4242);
  VarSpec spec;
  spec.p = 6;
  VarModel fit = estimate_var(data, spec);
  Eigen::MatrixXd sample_cov =
      fit.residuals.transpose() * fit.residuals / static_cast<double>(fit.residuals.rows());
  CHECK((sample_cov - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("simulate rejects unstable models and nonpositive lengths") {
  std::vector<Eigen::MatrixXd> unit{Eigen::MatrixXd::Identity(2, 2)};
  VarModel root = make_var_model(unit, Eigen::MatrixXd::Identity(2, 2), {"a", "b"});
  CHECK_THROWS(simulate_var(root, 100, 1));
  VarModel ok = reference_var6();
  CHECK_THROWS(simulate_var(ok, 0, 1));
  CHECK_THROWS(simulate_var(ok, 100, 1, -1));
}

TEST_CASE("detrending removes a linear drift before estimation") {
  std::mt19937_64 rng(5);
  VarModel truth = mt::random_stable_var(rng, 2, 1, 0.5);
  Dataset data = simulate_var(truth, 20000, 17);
  Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(data.rows(), 0.0, data.rows() - 1.0);
  Eigen::MatrixXd drifted = data.values;
  drifted.col(0) += 0.01 * t;
  drifted.col(1) -= 0.005 * t;
  Dataset trended = as_dataset(drifted, data.names);

  VarSpec spec;
  spec.p = 1;
  spec.detrend = true;
  VarModel fit = estimate_var(trended, spec);
  CHECK((fit.phi[0] - truth.phi[0]).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("the uncorrected covariance divisor is T - p") {
  VarModel truth = reference_var6();
  Dataset data = simulate_var(truth, 1000, 77);
  VarSpec spec;
  spec.p = 6;
  VarModel corrected = estimate_var(data, spec, true);
  VarModel raw = estimate_var(data, spec, false);
  const double rows = static_cast<double>(data.rows() - 6);
  const double dof = rows - 3.0 * 6.0 - 1.0;
  CHECK(raw.sigma_u(0, 0) == doctest::Approx(corrected.sigma_u(0, 0) * dof / rows));
}
