#include <benchmark/benchmark.h>

#include <random>

#include "medvar/decomposition.hpp"
#include "medvar/dmi.hpp"
#include "medvar/gir.hpp"
#include "medvar/reference_example.hpp"
#include "medvar/var_model.hpp"

using namespace medvar;

namespace {

VarModel wide_model() {
  // stable 8-variable lag-12 system, the shape of the empirical runs
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  std::vector<Eigen::MatrixXd> phi;
  for (int j = 1; j <= 12; ++j) {
    Eigen::MatrixXd m(8, 8);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) m(r, c) = unif(rng) / (1.5 * j);
    phi.push_back(m);
  }
  const double rho = Eigen::EigenSolver<Eigen::MatrixXd>(companion_matrix(phi), false)
                         .eigenvalues().cwiseAbs().maxCoeff();
  double s = 0.85 / rho, scale = s;
  for (auto& m : phi) { m *= scale; scale *= s; }
  std::vector<std::string> names;
  for (int i = 0; i < 8; ++i) names.push_back("v" + std::to_string(i + 1));
  return make_var_model(std::move(phi), Eigen::MatrixXd::Identity(8, 8), std::move(names));
}

}  // namespace

static void BM_ComputeGir(benchmark::State& state) {
  VarModel model = wide_model();
  const int H = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GirSet gir = compute_gir(model, H);
    benchmark::DoNotOptimize(gir.coeffs.data());
  }
}
BENCHMARK(BM_ComputeGir)->Arg(12)->Arg(36)->Arg(60);

static void BM_EstimateVar(benchmark::State& state) {
  VarModel truth = wide_model();
  Dataset data = simulate_var(truth, state.range(0), 77);
  VarSpec spec;
  spec.p = 12;
  for (auto _ : state) {
    VarModel fit = estimate_var(data, spec);
    benchmark::DoNotOptimize(fit.phi.data());
  }
}
BENCHMARK(BM_EstimateVar)->Arg(383)->Arg(2000);

static void BM_BuildFullTable(benchmark::State& state) {
  VarModel model = wide_model();
  const int H = static_cast<int>(state.range(0));
  GirSet gir = compute_gir(model, H);
  IrfPath irf = impulse_response(
      gir, identify_shock(model, "v1", Normalization::OneStandardDeviation), H);
  std::vector<int> all_n(H);
  for (int n = 0; n < H; ++n) all_n[n] = n;
  for (auto _ : state) {
    DecompositionTable table = build_table(gir, irf, all_n, H);
    benchmark::DoNotOptimize(table.cells.size());
  }
}
BENCHMARK(BM_BuildFullTable)->Arg(12)->Arg(36);

static void BM_DmiSeries(benchmark::State& state) {
  VarModel model = wide_model();
  const int H = 36;
  GirSet gir = compute_gir(model, H);
  IrfPath irf = impulse_response(
      gir, identify_shock(model, "v1", Normalization::OneStandardDeviation), H);
  std::vector<int> all_n(H);
  for (int n = 0; n < H; ++n) all_n[n] = n;
  DecompositionTable table = build_table(gir, irf, all_n, H);
  for (auto _ : state) {
    DmiSeries series = dmi_series(table, irf, "v3", "v2", H);
    benchmark::DoNotOptimize(series.values.data());
  }
}
BENCHMARK(BM_DmiSeries);

static void BM_SimulateVar(benchmark::State& state) {
  VarModel model = reference_var6();
  for (auto _ : state) {
    Dataset data = simulate_var(model, state.range(0), 5);
    benchmark::DoNotOptimize(data.values.data());
  }
}
BENCHMARK(BM_SimulateVar)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
