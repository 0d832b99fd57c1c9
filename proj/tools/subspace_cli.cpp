// Command-line front end for the subspace perturbation library.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subspace/adversarial.hpp"
#include "subspace/cca.hpp"
#include "subspace/clustering.hpp"
#include "subspace/denoising.hpp"
#include "subspace/linalg.hpp"
#include "subspace/matrix_io.hpp"
#include "subspace/perturbation.hpp"
#include "subspace/simulation.hpp"

namespace {

using subspace::Matrix;
using subspace::SummaryTable;
using subspace::TableFormat;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int default_threads() {
  const char* env = std::getenv("SUBSPACE_PERTURB_THREADS");
  if (env == nullptr) return 1;
  int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

// A flat list of named scalars, printed as key=value lines, one CSV row,
// or a JSON object.
using Report = std::vector<std::pair<std::string, double>>;

void print_report(const Report& report, const std::string& format) {
  if (format == "csv") {
    for (size_t i = 0; i < report.size(); ++i) {
      std::cout << report[i].first << (i + 1 < report.size() ? "," : "\n");
    }
    for (size_t i = 0; i < report.size(); ++i) {
      std::cout << fmt(report[i].second)
                << (i + 1 < report.size() ? "," : "\n");
    }
  } else if (format == "json") {
    nlohmann::ordered_json obj;
    for (const auto& [key, value] : report) obj[key] = value;
    std::cout << obj.dump(2) << '\n';
  } else {
    for (const auto& [key, value] : report) {
      std::cout << key << " = " << fmt_short(value) << '\n';
    }
  }
}

void print_table(const SummaryTable& table, const std::string& format,
                 const std::string& out_path) {
  if (!out_path.empty()) {
    subspace::export_table(
        table, format == "json" ? TableFormat::json : TableFormat::csv,
        out_path);
    return;
  }
  if (format == "json") {
    subspace::write_table(table, TableFormat::json, std::cout);
  } else if (format == "csv") {
    subspace::write_table(table, TableFormat::csv, std::cout);
  } else {
    for (const auto& c : table.param_cols) std::cout << c << '\t';
    for (const auto& c : table.stat_cols) {
      std::cout << c << '\t' << c << "_se\t";
    }
    std::cout << "reps\n";
    for (const auto& row : table.rows) {
      for (double p : row.params) std::cout << fmt_short(p) << '\t';
      for (size_t i = 0; i < row.means.size(); ++i) {
        std::cout << fmt_short(row.means[i]) << '\t'
                  << fmt_short(row.ses[i]) << '\t';
      }
      std::cout << row.reps << '\n';
    }
  }
}

void add_format_flag(CLI::App* cmd, std::string* format) {
  cmd->add_option("--format", *format, "Output format")
      ->check(CLI::IsMember({"human", "csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unilateral perturbation bounds for singular subspaces"};
  app.require_subcommand(1);

  std::string format = "human";
  int threads = default_threads();

  // bound
  auto* bound = app.add_subcommand(
      "bound", "Unilateral subspace bounds for a signal plus perturbation");
  std::string bound_x, bound_z;
  int bound_r = 1;
  bound->add_option("--x", bound_x, "Signal matrix CSV")->required();
  bound->add_option("--z", bound_z, "Perturbation matrix CSV")->required();
  bound->add_option("--r", bound_r, "Target rank")->required();
  add_format_flag(bound, &format);

  // wedin
  auto* wedin = app.add_subcommand(
      "wedin", "Classical uniform two-sided bound");
  std::string wedin_x, wedin_z;
  int wedin_r = 1;
  wedin->add_option("--x", wedin_x, "Signal matrix CSV")->required();
  wedin->add_option("--z", wedin_z, "Perturbation matrix CSV")->required();
  wedin->add_option("--r", wedin_r, "Target rank")->required();
  add_format_flag(wedin, &format);

  // worst-case
  auto* worst = app.add_subcommand(
      "worst-case", "Generate a pair that nearly attains the bounds");
  int wc_p1 = 6, wc_p2 = 6, wc_r = 1;
  double wc_alpha = 2, wc_beta = 1, wc_z12 = 1, wc_z21 = 0.5;
  std::uint64_t wc_seed = 0;
  std::string wc_out_x = "x.csv", wc_out_z = "z.csv";
  worst->add_option("--p1", wc_p1, "Rows");
  worst->add_option("--p2", wc_p2, "Columns");
  worst->add_option("--r", wc_r, "Rank");
  worst->add_option("--alpha", wc_alpha, "Signal level");
  worst->add_option("--beta", wc_beta, "Residual level");
  worst->add_option("--z12", wc_z12, "Coupling level 1->2");
  worst->add_option("--z21", wc_z21, "Coupling level 2->1");
  worst->add_option("--seed", wc_seed, "Seed for the random bases");
  worst->add_option("--out-x", wc_out_x, "Where to write the signal");
  worst->add_option("--out-z", wc_out_z, "Where to write the perturbation");
  add_format_flag(worst, &format);

  // sharpness
  auto* sharp = app.add_subcommand(
      "sharpness", "Ratio of realized loss to bound over random pairs");
  int sh_p1 = 20, sh_p2 = 20, sh_r = 2, sh_count = 500;
  std::uint64_t sh_seed = 0;
  sharp->add_option("--p1", sh_p1, "Rows");
  sharp->add_option("--p2", sh_p2, "Columns");
  sharp->add_option("--r", sh_r, "Rank");
  sharp->add_option("--count", sh_count, "Number of pairs");
  sharp->add_option("--seed", sh_seed, "Master seed");
  sharp->add_option("--threads", threads, "Worker threads");
  add_format_flag(sharp, &format);

  // denoise
  auto* denoise = app.add_subcommand(
      "denoise", "Low-rank denoising: file estimators or a seeded study");
  std::string dn_y, dn_out = "denoised.csv", dn_method = "spectral";
  double dn_lambda = 0.0, dn_c = 1.0, dn_t = 10.0;
  int dn_p1 = 100, dn_p2 = 10, dn_r = 2, dn_reps = 1000;
  std::uint64_t dn_seed = 0;
  bool dn_rademacher = false;
  denoise->add_option("--y", dn_y, "Observed matrix CSV (file mode)");
  denoise->add_option("--method", dn_method, "spectral|svt|hsvt|adaptive")
      ->check(CLI::IsMember({"spectral", "svt", "hsvt", "adaptive"}));
  denoise->add_option("--lambda", dn_lambda, "Threshold level");
  denoise->add_option("--c", dn_c, "Adaptive zero/denoise threshold constant");
  denoise->add_option("--out", dn_out, "Output CSV (file mode)");
  denoise->add_option("--p1", dn_p1, "Rows (study mode)");
  denoise->add_option("--p2", dn_p2, "Columns (study mode)");
  denoise->add_option("--r", dn_r, "Rank");
  denoise->add_option("--t", dn_t, "Signal strength");
  denoise->add_option("--reps", dn_reps, "Repetitions (study mode)");
  denoise->add_option("--seed", dn_seed, "Master seed");
  denoise->add_flag("--rademacher", dn_rademacher, "Rademacher noise");
  denoise->add_option("--threads", threads, "Worker threads");
  add_format_flag(denoise, &format);

  // cluster
  auto* cluster = app.add_subcommand(
      "cluster", "Two-class clustering: label a file or run a seeded study");
  std::string cl_y;
  int cl_p = 100, cl_n = 100, cl_reps = 1000;
  double cl_t = 1.0, cl_rho = 0.5;
  std::uint64_t cl_seed = 0;
  bool cl_fix_mu = false;
  cluster->add_option("--y", cl_y, "Data matrix CSV, one column per point");
  cluster->add_option("--p", cl_p, "Dimension (study mode)");
  cluster->add_option("--t", cl_t, "Scaled signal strength");
  cluster->add_option("--rho", cl_rho, "Class-1 probability");
  cluster->add_option("--n", cl_n, "Sample size");
  cluster->add_option("--reps", cl_reps, "Repetitions");
  cluster->add_option("--seed", cl_seed, "Master seed");
  cluster->add_flag("--fix-mu", cl_fix_mu,
                    "Draw the mean direction once per setting");
  cluster->add_option("--threads", threads, "Worker threads");
  add_format_flag(cluster, &format);

  // cca
  auto* cca = app.add_subcommand(
      "cca", "Canonical correlation study with a seeded Monte-Carlo loop");
  int cc_p1 = 30, cc_p2 = 10, cc_r = 2, cc_n = 100, cc_reps = 1000;
  double cc_t = 0.8;
  std::uint64_t cc_seed = 0;
  cca->add_option("--p1", cc_p1, "First dimension");
  cca->add_option("--p2", cc_p2, "Second dimension");
  cca->add_option("--r", cc_r, "Rank");
  cca->add_option("--n", cc_n, "Sample size");
  cca->add_option("--t", cc_t, "Canonical correlation");
  cca->add_option("--reps", cc_reps, "Repetitions");
  cca->add_option("--seed", cc_seed, "Master seed");
  cca->add_option("--threads", threads, "Worker threads");
  add_format_flag(cca, &format);

  // reproduce-table
  auto* repro = app.add_subcommand(
      "reproduce-table", "Re-run one of the three summary tables");
  int rt_id = 1, rt_reps = 1000, rt_rank = 2;
  std::uint64_t rt_seed = 0;
  std::string rt_out;
  repro->add_option("--id", rt_id, "Table id: 1, 2 or 3")->required();
  repro->add_option("--reps", rt_reps, "Repetitions per cell");
  repro->add_option("--seed", rt_seed, "Master seed");
  repro->add_option("--cca-rank", rt_rank, "Rank used for table 3");
  repro->add_option("--out", rt_out, "Write the table here instead of stdout");
  repro->add_option("--threads", threads, "Worker threads");
  add_format_flag(repro, &format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (bound->parsed()) {
      Matrix x = subspace::load_csv(bound_x);
      Matrix z = subspace::load_csv(bound_z);
      auto d = subspace::block_decompose(x, z, bound_r);
      auto b = subspace::unilateral_bounds(d);
      auto w = subspace::wedin_bounds(x, z, bound_r);
      print_report({{"alpha", d.alpha},
                    {"beta", d.beta},
                    {"z12_sp", d.z12_sp},
                    {"z21_sp", d.z21_sp},
                    {"v_spectral", b.v_spectral},
                    {"v_frobenius", b.v_frobenius},
                    {"u_spectral", b.u_spectral},
                    {"u_frobenius", b.u_frobenius},
                    {"applicable", b.applicable ? 1.0 : 0.0},
                    {"gap", b.gap},
                    {"wedin_spectral", w.v_spectral},
                    {"wedin_frobenius", w.v_frobenius},
                    {"wedin_applicable", w.applicable ? 1.0 : 0.0}},
                   format);
    } else if (wedin->parsed()) {
      Matrix x = subspace::load_csv(wedin_x);
      Matrix z = subspace::load_csv(wedin_z);
      auto w = subspace::wedin_bounds(x, z, wedin_r);
      print_report({{"spectral", w.v_spectral},
                    {"frobenius", w.v_frobenius},
                    {"applicable", w.applicable ? 1.0 : 0.0},
                    {"delta", w.gap}},
                   format);
    } else if (worst->parsed()) {
      subspace::Rng rng(wc_seed);
      auto pair = subspace::worst_case_pair(wc_p1, wc_p2, wc_r, wc_alpha,
                                            wc_beta, wc_z12, wc_z21, rng);
      subspace::save_csv(pair.x, wc_out_x);
      subspace::save_csv(pair.z, wc_out_z);
      auto check = subspace::sharpness_check(pair);
      print_report({{"actual_v", check.actual_v},
                    {"bound_v", check.bound_v},
                    {"ratio", check.ratio}},
                   format);
    } else if (sharp->parsed()) {
      auto study = subspace::sharpness_study(sh_p1, sh_p2, sh_r, sh_count,
                                             sh_seed, threads);
      print_report({{"mean_ratio", study.mean_ratio},
                    {"min_ratio", study.min_ratio},
                    {"max_ratio", study.max_ratio},
                    {"count", static_cast<double>(study.count)}},
                   format);
    } else if (denoise->parsed()) {
      if (!dn_y.empty()) {
        Matrix y = subspace::load_csv(dn_y);
        Matrix result;
        if (dn_method == "spectral") {
          result = subspace::spectral_denoise(y, dn_r).x_hat;
        } else if (dn_method == "svt") {
          result = subspace::svt(y, dn_lambda);
        } else if (dn_method == "hsvt") {
          result = subspace::hsvt(y, dn_lambda);
        } else {
          result = subspace::adaptive_estimator(y, dn_t, dn_c);
        }
        subspace::save_csv(result, dn_out);
      } else {
        subspace::ExperimentConfig config;
        config.study = subspace::Study::denoising;
        config.parameters = {{"p1", static_cast<double>(dn_p1)},
                             {"p2", static_cast<double>(dn_p2)},
                             {"r", static_cast<double>(dn_r)},
                             {"t", dn_t},
                             {"rademacher", dn_rademacher ? 1.0 : 0.0}};
        config.reps = dn_reps;
        config.master_seed = dn_seed;
        print_table(subspace::run_experiment(config, threads), format, "");
      }
    } else if (cluster->parsed()) {
      if (!cl_y.empty()) {
        Matrix y = subspace::load_csv(cl_y);
        auto labels = subspace::pca_cluster(y);
        for (int l : labels.labels) std::cout << l << '\n';
      } else {
        subspace::ExperimentConfig config;
        config.study = subspace::Study::clustering;
        config.parameters = {{"p", static_cast<double>(cl_p)},
                             {"t", cl_t},
                             {"rho", cl_rho},
                             {"n", static_cast<double>(cl_n)},
                             {"fix_mu", cl_fix_mu ? 1.0 : 0.0}};
        config.reps = cl_reps;
        config.master_seed = cl_seed;
        print_table(subspace::run_experiment(config, threads), format, "");
      }
    } else if (cca->parsed()) {
      subspace::ExperimentConfig config;
      config.study = subspace::Study::cca;
      config.parameters = {{"p1", static_cast<double>(cc_p1)},
                           {"p2", static_cast<double>(cc_p2)},
                           {"r", static_cast<double>(cc_r)},
                           {"n", static_cast<double>(cc_n)},
                           {"t", cc_t}};
      config.reps = cc_reps;
      config.master_seed = cc_seed;
      print_table(subspace::run_experiment(config, threads), format, "");
    } else if (repro->parsed()) {
      auto table =
          subspace::reproduce_table(rt_id, rt_reps, rt_seed, threads, rt_rank);
      print_table(table, format, rt_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
