#include <doctest.h>

#include <cmath>

#include "medvar/decomposition.hpp"
#include "medvar/reference_example.hpp"
#include "support/oracles.hpp"

using namespace medvar;
namespace mt = medvar::testing;

TEST_CASE("identify_shock: orthogonal innovations give a unit basis vector") {
  VarModel model = reference_var6();  // identity covariance
  for (auto norm : {Normalization::UnitInnovation, Normalization::OneStandardDeviation}) {
    ShockIdentification shock = identify_shock(model, "X", norm);
    CHECK(shock.theta0(0) == 1.0);
    CHECK(shock.theta0(1) == 0.0);
    CHECK(shock.theta0(2) == 0.0);
    CHECK(shock.shock_sd == 1.0);
  }
}

TEST_CASE("identify_shock scales the covariance column") {
  Eigen::MatrixXd sigma(2, 2);
  sigma << 4.0, 2.0, 2.0, 3.0;
  std::vector<Eigen::MatrixXd> phi{0.2 * Eigen::MatrixXd::Identity(2, 2)};
  VarModel model = make_var_model(phi, sigma, {"x", "y"});

  ShockIdentification unit = identify_shock(model, "x", Normalization::UnitInnovation);
  CHECK(unit.theta0(0) == doctest::Approx(1.0));
  CHECK(unit.theta0(1) == doctest::Approx(0.5));
  CHECK(unit.shock_sd == doctest::Approx(2.0));

  ShockIdentification sd = identify_shock(model, "x", Normalization::OneStandardDeviation);
  CHECK(sd.theta0(0) == doctest::Approx(2.0));
  CHECK(sd.theta0(1) == doctest::Approx(1.0));
}

TEST_CASE("user-supplied impact vectors are size-checked") {
  VarModel model = reference_var6();
  Eigen::VectorXd good(3);
  good << 1.0, 0.2, -0.1;
  ShockIdentification shock = user_supplied_shock(model, "X", good);
  CHECK((shock.theta0.array() == good.array()).all());
  Eigen::VectorXd bad(2);
  bad << 1.0, 0.2;
  CHECK_THROWS(user_supplied_shock(model, "X", bad));
  CHECK_THROWS(user_supplied_shock(model, "nope", good));
}

TEST_CASE("impulse responses to a unit Y innovation reproduce the reference column") {
  VarModel model = reference_var6();
  GirSet gir = compute_gir(model, 10, 6);
  ShockIdentification shock = identify_shock(model, "Y", Normalization::UnitInnovation);
  IrfPath irf = impulse_response(gir, shock, 10);
  // with identity covariance the X-response to a unit Y innovation is the
  // first coefficient column of the (X,Y) slice
  for (int h = 1; h <= 5; ++h) CHECK(std::abs(irf.entry(h, "X")) < 5e-4);
  CHECK(std::llround(irf.entry(6, "X") * 1000.0) == -62);
}

TEST_CASE("zero-coefficient models have zero responses beyond impact") {
  std::vector<Eigen::MatrixXd> zero{Eigen::MatrixXd::Zero(2, 2)};
  VarModel model = make_var_model(zero, Eigen::MatrixXd::Identity(2, 2), {"a", "b"});
  GirSet gir = compute_gir(model, 6);
  IrfPath irf = impulse_response(gir, identify_shock(model, "a", Normalization::UnitInnovation), 6);
  CHECK((irf.theta.row(0).transpose() - Eigen::Vector2d(1.0, 0.0)).cwiseAbs().maxCoeff() == 0.0);
  for (int h = 1; h <= 6; ++h) CHECK(irf.theta_at(h).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scalar autoregression decays geometrically") {
  std::vector<Eigen::MatrixXd> phi{Eigen::MatrixXd::Constant(1, 1, 0.9)};
  VarModel model = make_var_model(phi, Eigen::MatrixXd::Identity(1, 1), {"z"});
  GirSet gir = compute_gir(model, 20);
  IrfPath irf = impulse_response(gir, identify_shock(model, "z", Normalization::UnitInnovation), 20);
  for (int h = 0; h <= 20; ++h)
    CHECK(irf.entry(h, "z") == doctest::Approx(std::pow(0.9, h)).epsilon(1e-12));
}

TEST_CASE("represent_at reproduces the impulse response at every split") {
  VarModel model = reference_var6();
  GirSet gir = compute_gir(model, 12);
  IrfPath irf = impulse_response(gir, identify_shock(model, "X", Normalization::UnitInnovation), 12);

  SUBCASE("n = 0 collapses to the first term") {
    for (int h = 1; h <= 12; ++h)
      CHECK((represent_at(gir, irf, 0, h) - irf.theta_at(h)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("n = 1, h = 2 split") {
    CHECK((represent_at(gir, irf, 1, 2) - irf.theta_at(2)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("all (n, h) pairs on random models") {
    std::mt19937_64 rng(404);
    for (int rep = 0; rep < 20; ++rep) {
      VarModel m = mt::random_stable_var(rng, 3, 4);
      GirSet g = compute_gir(m, 12);
      IrfPath path = impulse_response(g, identify_shock(m, "v1", Normalization::OneStandardDeviation), 12);
      for (int h = 1; h <= 12; ++h)
        for (int n = 0; n < h; ++n)
          CHECK((represent_at(g, path, n, h) - path.theta_at(h)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("n >= h is rejected") {
    CHECK_THROWS(represent_at(gir, irf, 3, 3));
    CHECK_THROWS(represent_at(gir, irf, 5, 3));
  }
}

TEST_CASE("contributions: only the shock variable moves at n = 0 under identity covariance") {
  VarModel model = reference_var6();
  GirSet gir = compute_gir(model, 8);
  IrfPath irf = impulse_response(gir, identify_shock(model, "X", Normalization::UnitInnovation), 8);
  for (int h = 1; h <= 8; ++h) {
    CHECK(contribution(gir, irf, "Y", 0, h).cwiseAbs().maxCoeff() == 0.0);
    CHECK(contribution(gir, irf, "M", 0, h).cwiseAbs().maxCoeff() == 0.0);
    CHECK((contribution(gir, irf, "X", 0, h) - irf.theta_at(h)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("the worked mediator contribution at (n=1, h=2)") {
  VarModel model = reference_var6();
  GirSet gir = compute_gir(model, 8);
  IrfPath irf = impulse_response(gir, identify_shock(model, "X", Normalization::UnitInnovation), 8);
  Eigen::VectorXd c = contribution(gir, irf, "M", 1, 2);
  CHECK(c(0) == doctest::Approx(-0.04).epsilon(1e-12));
  CHECK(c(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c(2) == doctest::Approx(-0.14).epsilon(1e-12));
}

TEST_CASE("contributions re-sum to the impulse response") {
  std::mt19937_64 rng(1001);
  for (int rep = 0; rep < 20; ++rep) {
    VarModel model = mt::random_stable_var(rng, 3, 3);
    GirSet gir = compute_gir(model, 10);
    IrfPath irf = impulse_response(
        gir, identify_shock(model, "v2", Normalization::OneStandardDeviation), 10);
    for (int h = 1; h <= 10; ++h)
      for (int n = 0; n < h; ++n) {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
        for (const auto& name : model.names) sum += contribution(gir, irf, name, n, h);
        CHECK((sum - irf.theta_at(h)).cwiseAbs().maxCoeff() < 1e-10);
      }
  }
}

TEST_CASE("doubling the impact vector doubles every contribution exactly") {
  VarModel model = reference_var6();
  GirSet gir = compute_gir(model, 8);
  ShockIdentification shock = identify_shock(model, "X", Normalization::UnitInnovation);
  IrfPath irf = impulse_response(gir, shock, 8);
  ShockIdentification doubled = shock;
  doubled.theta0 *= 2.0;
  IrfPath irf2 = impulse_response(gir, doubled, 8);
  for (int h = 2; h <= 8; ++h)
    for (int n = 0; n < std::min(h, 4); ++n)
      for (const auto& v : model.names) {
        Eigen::VectorXd one = contribution(gir, irf, v, n, h);
        Eigen::VectorXd two = contribution(gir, irf2, v, n, h);
        for (int i = 0; i < 3; ++i) CHECK(two(i) == 2.0 * one(i));
      }
}

TEST_CASE("build_table fills every requested front and enforces additivity") {
  VarModel model = reference_var6();
  GirSet gir = compute_gir(model, 12);
  IrfPath irf = impulse_response(gir, identify_shock(model, "X", Normalization::UnitInnovation), 12);
  DecompositionTable table = build_table(gir, irf, {0, 3, 6}, 12);
  CHECK(table.n_list == std::vector<int>{0, 3, 6});
  CHECK(table.at(3, 4).cols() == 3);
  CHECK((table.contribution_of(3, 4, "M") - contribution(gir, irf, "M", 3, 4))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK_THROWS(table.at(1, 5));    // no front at n = 1
  CHECK_THROWS(table.at(3, 3));    // h must exceed n
  CHECK_THROWS(build_table(gir, irf, {12}, 12));  // n outside [0, H)
}

TEST_CASE("single-variable tables attribute everything to the only variable") {
  std::vector<Eigen::MatrixXd> phi{Eigen::MatrixXd::Constant(1, 1, 0.7)};
  VarModel model = make_var_model(phi, Eigen::MatrixXd::Identity(1, 1), {"z"});
  GirSet gir = compute_gir(model, 10);
  IrfPath irf = impulse_response(gir, identify_shock(model, "z", Normalization::UnitInnovation), 10);
  DecompositionTable table = build_table(gir, irf, {0}, 10);
  for (int h = 1; h <= 10; ++h)
    CHECK(table.contribution_of(0, h, "z")(0) ==
          doctest::Approx(irf.entry(h, "z")).epsilon(1e-12));
}

TEST_CASE("four-front table on an eight-variable lag-12 model") {
  std::mt19937_64 rng(888);
  VarModel model = mt::random_stable_var(rng, 8, 12, 0.6);
  GirSet gir = compute_gir(model, 36);
  IrfPath irf = impulse_response(
      gir, identify_shock(model, "v1", Normalization::OneStandardDeviation), 36);
  DecompositionTable table = build_table(gir, irf, {0, 3, 6, 12}, 36);
  CHECK(table.cells.size() == 4);
  CHECK(static_cast<int>(table.cells.at(12).size()) == 36 - 12);
  // spot-check additivity on the deepest front
  for (int h = 13; h <= 36; ++h)
    CHECK((table.at(12, h).rowwise().sum() - irf.theta_at(h)).cwiseAbs().maxCoeff() < 1e-8);
}
