#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "medvar/dataset.hpp"
#include "medvar/decomposition.hpp"
#include "medvar/dmi.hpp"
#include "medvar/gir.hpp"
#include "medvar/mediation.hpp"
#include "medvar/reference_example.hpp"
#include "medvar/var_model.hpp"

namespace fs = std::filesystem;
using namespace medvar;

namespace {

struct ModelSource {
  std::string model_path;
  std::string input_path;
  std::string roles_spec;
  int lags = 1;
  bool demean = true;
  bool detrend = false;
};

struct OutputOpts {
  std::string out_dir = ".";
  std::string format = "csv";
};

void add_model_source(CLI::App* cmd, ModelSource& src, bool need_input_only = false) {
  if (!need_input_only)
    cmd->add_option("--model", src.model_path, "model JSON produced by `estimate`")
        ->check(CLI::ExistingFile);
  cmd->add_option("--input", src.input_path, "CSV dataset (header row, oldest first)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--roles", src.roles_spec, "role bindings, e.g. X=rate,Y=ip,M=ebp");
  cmd->add_option("--lags", src.lags, "lag order p");
  cmd->add_flag("--demean,!--no-demean", src.demean,
                "intercept in every equation (default on)");
  cmd->add_flag("--detrend", src.detrend, "remove a fitted linear trend first");
}

void add_output(CLI::App* cmd, OutputOpts& out) {
  cmd->add_option("--out-dir", out.out_dir, "output directory (created if missing)");
  cmd->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

VarSpec spec_from(const ModelSource& src, const RoleMap& roles) {
  VarSpec spec;
  spec.p = src.lags;
  spec.demean = src.demean;
  spec.detrend = src.detrend;
  for (const auto& [label, role] : roles) {
    if (role == Role::Treatment) spec.shock_var = label;
    if (role == Role::Outcome) spec.outcome_var = label;
    if (role == Role::Mediator && spec.mediator_var.empty()) spec.mediator_var = label;
  }
  return spec;
}

VarModel acquire_model(const ModelSource& src, const RoleMap& roles) {
  if (!src.model_path.empty()) return load_model_json(src.model_path);
  if (src.input_path.empty())
    throw std::runtime_error("supply either --model or --input");
  Dataset data = load_dataset(src.input_path, roles);
  return estimate_var(data, spec_from(src, roles));
}

Eigen::VectorXd parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    vals.push_back(std::stod(item, &pos));
    if (pos != item.size())
      throw std::runtime_error("bad number in vector literal: \"" + item + "\"");
  }
  return Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<long>(vals.size()));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(std::stoi(item));
  return vals;
}

fs::path prepare_out_dir(const OutputOpts& out) {
  fs::path dir(out.out_dir);
  fs::create_directories(dir);
  return dir;
}

ShockIdentification make_shock(const VarModel& model, const std::string& shock_var,
                               const std::string& normalization,
                               const std::string& theta0_literal) {
  if (!theta0_literal.empty())
    return user_supplied_shock(model, shock_var, parse_vector(theta0_literal));
  return identify_shock(model, shock_var,
                        normalization == "unit" ? Normalization::UnitInnovation
                                                : Normalization::OneStandardDeviation);
}

int cmd_estimate(const ModelSource& src, const OutputOpts& out, bool no_df_correction) {
  RoleMap roles =
      src.roles_spec.empty() ? RoleMap{} : parse_role_spec(src.roles_spec);
  if (src.input_path.empty()) throw std::runtime_error("--input is required");
  Dataset data = load_dataset(src.input_path, roles);
  VarModel model = estimate_var(data, spec_from(src, roles), !no_df_correction);

  fs::path dir = prepare_out_dir(out);
  fs::path model_path = dir / "model.json";
  save_model_json(model, model_path.string());

  std::cout << "estimated lag-" << model.lag_order() << " model on " << data.rows()
            << " rows, K = " << model.dim() << "\n";
  std::cout << "stability: " << (model.stable ? "stable" : "UNSTABLE") << "\n";
  std::cout << "sigma_u diagonal:";
  for (int i = 0; i < model.dim(); ++i)
    std::printf(" %s=%.6g", model.names[i].c_str(), model.sigma_u(i, i));
  std::cout << "\nwrote " << model_path.string() << "\n";
  return 0;
}

int cmd_simulate(const ModelSource& src, const OutputOpts& out, long length,
                 std::uint64_t seed, long burn_in) {
  if (src.model_path.empty()) throw std::runtime_error("--model is required");
  VarModel model = load_model_json(src.model_path);
  Dataset data = simulate_var(model, length, seed, burn_in);
  fs::path dir = prepare_out_dir(out);
  fs::path path = dir / "simulated.csv";
  write_dataset_csv(data, path.string());
  std::cout << "simulated " << length << " rows (seed " << seed << ", burn-in "
            << burn_in << ")\nwrote " << path.string() << "\n";
  return 0;
}

int cmd_decompose(const ModelSource& src, const OutputOpts& out,
                  const std::string& normalization, const std::string& theta0_literal,
                  const std::string& nlist_text, int horizon) {
  RoleMap roles = parse_role_spec(src.roles_spec);
  VarModel model = acquire_model(src, roles);
  VarSpec spec = spec_from(src, roles);
  if (spec.shock_var.empty() || spec.outcome_var.empty())
    throw std::runtime_error("--roles must bind X= and Y=");

  std::vector<int> n_list = parse_int_list(nlist_text);
  for (int n : n_list)
    if (n < 0 || n >= horizon)
      throw std::runtime_error("decomposition time " + std::to_string(n) +
                               " outside [0, horizon)");

  GirSet gir = compute_gir(model, horizon);
  ShockIdentification shock =
      make_shock(model, spec.shock_var, normalization, theta0_literal);
  IrfPath irf = impulse_response(gir, shock, horizon);
  DecompositionTable table = build_table(gir, irf, n_list, horizon);

  fs::path dir = prepare_out_dir(out);
  if (out.format == "csv") {
    write_decomposition_csv(table, spec.outcome_var, (dir / "decomposition.csv").string());
    write_irf_csv(irf, (dir / "irf.csv").string());
    std::cout << "wrote " << (dir / "decomposition.csv").string() << " and "
              << (dir / "irf.csv").string() << "\n";
  } else {
    std::ofstream(dir / "decomposition.json") << decomposition_to_json_text(table);
    std::ofstream(dir / "irf.json") << irf_to_json_text(irf);
    std::cout << "wrote " << (dir / "decomposition.json").string() << " and "
              << (dir / "irf.json").string() << "\n";
  }
  return 0;
}

int cmd_granger(const ModelSource& src, const OutputOpts& out, const std::string& from,
                const std::string& to, int horizon, double tol) {
  RoleMap roles =
      src.roles_spec.empty() ? RoleMap{} : parse_role_spec(src.roles_spec);
  VarModel model = acquire_model(src, roles);
  GirSet gir = compute_gir(model, horizon);

  fs::path dir = prepare_out_dir(out);
  if (out.format == "csv") {
    write_gir_slice_csv(gir, from, to, (dir / "granger.csv").string());
    std::cout << "wrote " << (dir / "granger.csv").string() << "\n";
  } else {
    std::ostringstream rows;
    rows << "{\"from\":\"" << from << "\",\"to\":\"" << to << "\",\"tol\":" << tol
         << ",\"rows\":[";
    for (int h = 1; h <= horizon; ++h) {
      Eigen::VectorXd coeffs = granger_coefficients(gir, from, to, h);
      rows << (h > 1 ? "," : "") << "{\"h\":" << h << ",\"coeffs\":[";
      for (int j = 0; j < coeffs.size(); ++j)
        rows << (j ? "," : "") << coeffs(j);
      rows << "],\"noncausal\":" << (is_noncausal(gir, from, to, h, tol) ? "true" : "false")
           << "}";
    }
    rows << "]}\n";
    std::ofstream(dir / "granger.json") << rows.str();
    std::cout << "wrote " << (dir / "granger.json").string() << "\n";
  }
  for (int h = 1; h <= horizon; ++h)
    std::cout << from << " -> " << to << " at h = " << h << ": "
              << (is_noncausal(gir, from, to, h, tol) ? "noncausal" : "causal") << "\n";
  return 0;
}

int cmd_dmi(const ModelSource& src, const OutputOpts& out,
            const std::string& normalization, const std::string& theta0_literal,
            const std::string& mediator_flag, int horizon) {
  RoleMap roles = parse_role_spec(src.roles_spec);
  VarModel model = acquire_model(src, roles);
  VarSpec spec = spec_from(src, roles);
  std::string mediator = mediator_flag.empty() ? spec.mediator_var : mediator_flag;
  if (spec.shock_var.empty() || spec.outcome_var.empty())
    throw std::runtime_error("--roles must bind X= and Y=");
  if (mediator.empty())
    throw std::runtime_error("bind a mediator via --roles M=... or --mediator");

  GirSet gir = compute_gir(model, horizon);
  ShockIdentification shock =
      make_shock(model, spec.shock_var, normalization, theta0_literal);
  IrfPath irf = impulse_response(gir, shock, horizon);
  std::vector<int> all_n(horizon);
  for (int n = 0; n < horizon; ++n) all_n[n] = n;
  DecompositionTable table = build_table(gir, irf, all_n, horizon);
  DmiSeries series = dmi_series(table, irf, mediator, spec.outcome_var, horizon);

  fs::path dir = prepare_out_dir(out);
  fs::path path = dir / (out.format == "csv" ? "dmi.csv" : "dmi.json");
  if (out.format == "csv")
    write_dmi_csv(series, path.string());
  else
    std::ofstream(path) << dmi_to_json_text(series);
  std::cout << "mediator " << mediator << ", outcome " << spec.outcome_var
            << ", H = " << horizon << "\nwrote " << path.string() << "\n";
  return 0;
}

int cmd_replicate_example() {
  VarModel model = reference_var6();
  GirSet gir = compute_gir(model, 10, 6);

  std::printf("%-4s", "h");
  for (int j = 1; j <= 6; ++j) std::printf("%9s%d", "j=", j);
  std::printf("\n");
  const int x = gir.index_of("X");
  const int y = gir.index_of("Y");
  for (int h = 1; h <= 10; ++h) {
    std::printf("%-4d", h);
    for (int j = 1; j <= 6; ++j) std::printf("%10.3f", gir.at(h, j)(x, y));
    std::printf("\n");
  }

  auto mismatches = verify_reference_table(gir);
  if (mismatches.empty()) {
    std::cout << "60/60 cells match the reference table\n";
    return 0;
  }
  std::cerr << mismatches.size() << " cells differ from the reference table:\n";
  for (const auto& m : mismatches)
    std::fprintf(stderr, "  (h=%d, j=%d): expected %.3f, got %.3f\n", m.h, m.j,
                 m.expected, m.actual);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"impulse response decomposition, mediation effects and the dynamic "
               "mediation index for vector autoregressions"};
  app.require_subcommand(1);

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate a reduced-form model from CSV");
  ModelSource est_src;
  OutputOpts est_out;
  bool no_df_correction = false;
  add_model_source(est, est_src, /*need_input_only=*/true);
  est->add_flag("--no-df-correction", no_df_correction,
                "divide the residual cross-product by T-p instead of T-p-K*p-1");
  add_output(est, est_out);

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate a dataset from a model file");
  ModelSource sim_src;
  OutputOpts sim_out;
  long sim_length = 0;
  std::uint64_t sim_seed = 0;
  long sim_burn_in = 1000;
  sim->add_option("--model", sim_src.model_path, "model JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sim->add_option("--length", sim_length, "rows to generate")->required();
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--burn-in", sim_burn_in, "rows to discard before the sample");
  add_output(sim, sim_out);

  // decompose
  auto* dec = app.add_subcommand("decompose",
                                 "impulse responses and per-variable contributions");
  ModelSource dec_src;
  OutputOpts dec_out;
  std::string dec_norm = "sd", dec_theta0, dec_nlist = "0";
  int dec_horizon = 36;
  add_model_source(dec, dec_src);
  dec->add_option("--normalization", dec_norm, "shock scale")
      ->check(CLI::IsMember({"unit", "sd"}));
  dec->add_option("--theta0", dec_theta0, "externally identified impact vector, e.g. \"1,0.4,0\"");
  dec->add_option("--nlist", dec_nlist, "decomposition times, e.g. \"0,3,6,12\"");
  dec->add_option("--horizon", dec_horizon, "maximum horizon H");
  add_output(dec, dec_out);

  // granger
  auto* gra = app.add_subcommand("granger", "multi-horizon causality slice and verdicts");
  ModelSource gra_src;
  OutputOpts gra_out;
  std::string gra_from, gra_to;
  int gra_horizon = 10;
  double gra_tol = 1e-10;
  add_model_source(gra, gra_src);
  gra->add_option("--from", gra_from, "source variable label")->required();
  gra->add_option("--to", gra_to, "target variable label")->required();
  gra->add_option("--horizon", gra_horizon, "maximum horizon H");
  gra->add_option("--tol", gra_tol, "non-causality tolerance");
  add_output(gra, gra_out);

  // dmi
  auto* dmi_cmd = app.add_subcommand("dmi", "dynamic mediation index series");
  ModelSource dmi_src;
  OutputOpts dmi_out;
  std::string dmi_norm = "sd", dmi_theta0, dmi_mediator;
  int dmi_horizon = 36;
  add_model_source(dmi_cmd, dmi_src);
  dmi_cmd->add_option("--normalization", dmi_norm, "shock scale")
      ->check(CLI::IsMember({"unit", "sd"}));
  dmi_cmd->add_option("--theta0", dmi_theta0, "externally identified impact vector");
  dmi_cmd->add_option("--mediator", dmi_mediator, "mediator label (defaults to the M role)");
  dmi_cmd->add_option("--horizon", dmi_horizon, "terminal horizon H");
  add_output(dmi_cmd, dmi_out);

  // replicate-example
  app.add_subcommand("replicate-example",
                     "recompute the bundled worked example and check it against the "
                     "embedded reference table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) return cmd_estimate(est_src, est_out, no_df_correction);
    if (sim->parsed()) return cmd_simulate(sim_src, sim_out, sim_length, sim_seed, sim_burn_in);
    if (dec->parsed())
      return cmd_decompose(dec_src, dec_out, dec_norm, dec_theta0, dec_nlist, dec_horizon);
    if (gra->parsed())
      return cmd_granger(gra_src, gra_out, gra_from, gra_to, gra_horizon, gra_tol);
    if (dmi_cmd->parsed())
      return cmd_dmi(dmi_src, dmi_out, dmi_norm, dmi_theta0, dmi_mediator, dmi_horizon);
    return cmd_replicate_example();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
