#include "medvar/reference_example.hpp"

#include <cmath>

namespace medvar {

VarModel reference_var6() {
  std::vector<Eigen::MatrixXd> phi(6, Eigen::MatrixXd(3, 3));
  phi[0] << 0.6, 0.0, 0.2,
            0.2, 0.6, 0.0,
           -0.2, 0.4, 0.7;
  phi[1] << -0.4, -0.08, 0.36,
             0.0, -0.2,  0.1,
             0.1,  0.0, -0.5;
  phi[2] << 0.1, -0.2,  0.0,
            0.1,  0.2,  0.0,
            0.1,  0.0, -0.2;
  phi[3] << 0.3, -0.1,  0.19,
            0.0,  0.2,  0.0,
            0.0,  0.05, 0.15;
  phi[4] << 0.0, -0.04, -0.1,
            0.0,  0.08,  0.03,
            0.0,  0.0,  -0.02;
  phi[5] << -0.1,  0.01, 0.03,
            -0.08, 0.03, 0.06,
             0.0,  0.0,  0.0;
  return make_var_model(std::move(phi), Eigen::MatrixXd::Identity(3, 3),
                        {"X", "Y", "M"});
}

const std::array<std::array<double, 6>, 10>& reference_gir_table() {
  static const std::array<std::array<double, 6>, 10> table = {{
      {0.000, -0.080, -0.200, -0.100, -0.040, 0.010},
      {0.000, -0.248, -0.220, -0.090, -0.014, 0.006},
      {0.000, -0.214, -0.074, 0.025, 0.009, -0.001},
      {0.000, -0.051, 0.083, 0.065, 0.011, -0.003},
      {0.000, 0.068, 0.027, -0.002, -0.011, 0.002},
      {-0.062, -0.013, -0.101, -0.076, -0.018, 0.005},
      {-0.124, -0.104, -0.128, -0.059, -0.008, 0.000},
      {-0.074, -0.087, -0.044, 0.001, -0.002, -0.006},
      {0.044, -0.012, 0.029, 0.027, -0.003, -0.004},
      {0.054, 0.016, 0.026, 0.006, -0.003, 0.002},
  }};
  return table;
}

std::vector<ReferenceMismatch> verify_reference_table(const GirSet& gir) {
  const auto& expected = reference_gir_table();
  std::vector<ReferenceMismatch> mismatches;
  const int x = gir.index_of("X");
  const int y = gir.index_of("Y");
  for (int h = 1; h <= 10; ++h) {
    for (int j = 1; j <= 6; ++j) {
      const double actual = gir.at(h, j)(x, y);
      const double rounded = std::round(actual * 1000.0) / 1000.0;
      const double want = expected[h - 1][j - 1];
      if (std::llround(rounded * 1000.0) != std::llround(want * 1000.0))
        mismatches.push_back({h, j, want, rounded});
    }
  }
  return mismatches;
}

}  // namespace medvar
