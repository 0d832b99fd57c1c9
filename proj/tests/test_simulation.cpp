#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "subspace/simulation.hpp"

using namespace subspace;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/subspace_test_") + name;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

}  // namespace

TEST_CASE("study names round trip") {
  for (Study s : {Study::denoising, Study::clustering, Study::cca,
                  Study::sharpness}) {
    CHECK(parse_study(study_name(s)) == s);
  }
  CHECK_THROWS_AS(parse_study("bogus"), std::invalid_argument);
}

TEST_CASE("config file parsing") {
  std::string path = temp_path("config.txt");
  write_file(path,
             "# comment line\n"
             "study=denoising\n"
             "reps=7\n"
             "master_seed=42\n"
             "p1=30\n"
             "p2=10\n"
             "r=2\n"
             "t=8.5\n");
  ExperimentConfig config = parse_config_file(path);
  CHECK(config.study == Study::denoising);
  CHECK(config.reps == 7);
  CHECK(config.master_seed == 42);
  CHECK(config.parameters.at("p1") == 30.0);
  CHECK(config.parameters.at("t") == 8.5);
}

TEST_CASE("config file errors") {
  CHECK_THROWS(parse_config_file("/tmp/subspace_no_such_file.txt"));
  std::string bad_line = temp_path("bad_line.txt");
  write_file(bad_line, "study=denoising\nnot a pair\n");
  CHECK_THROWS(parse_config_file(bad_line));
  std::string no_study = temp_path("no_study.txt");
  write_file(no_study, "reps=5\n");
  CHECK_THROWS(parse_config_file(no_study));
}

TEST_CASE("run_experiment rejects missing parameters") {
  ExperimentConfig config;
  config.study = Study::denoising;
  config.reps = 1;
  config.parameters = {{"p1", 10.0}, {"p2", 5.0}, {"r", 1.0}};  // no t
  CHECK_THROWS_WITH_AS(run_experiment(config), "missing parameter: t",
                       std::invalid_argument);
}

TEST_CASE("run_experiment is deterministic and thread invariant") {
  ExperimentConfig config;
  config.study = Study::denoising;
  config.reps = 20;
  config.master_seed = 9;
  config.parameters = {{"p1", 20.0}, {"p2", 8.0}, {"r", 2.0}, {"t", 10.0}};
  SummaryTable a = run_experiment(config, 1);
  SummaryTable b = run_experiment(config, 3);
  CHECK(a == b);
}

TEST_CASE("each study produces its advertised columns") {
  ExperimentConfig config;
  config.reps = 3;
  config.master_seed = 1;

  config.study = Study::denoising;
  config.parameters = {{"p1", 12.0}, {"p2", 6.0}, {"r", 1.0}, {"t", 9.0}};
  SummaryTable den = run_experiment(config);
  CHECK(den.stat_cols.front() == "u_sp");
  CHECK(den.rows.size() == 1);
  CHECK(den.rows[0].reps == 3);

  config.study = Study::clustering;
  config.parameters = {{"p", 15.0}, {"t", 1.0}, {"rho", 0.5}, {"n", 8.0}};
  SummaryTable clu = run_experiment(config);
  CHECK(clu.stat_cols == std::vector<std::string>{"mean_misclassification"});

  config.study = Study::cca;
  config.reps = 2;
  config.parameters = {{"p1", 8.0}, {"p2", 5.0}, {"r", 1.0}, {"n", 40.0},
                       {"t", 0.7}};
  SummaryTable cca = run_experiment(config);
  CHECK(cca.stat_cols.back() == "lf_procrustes");

  config.study = Study::sharpness;
  config.reps = 5;
  config.parameters = {{"p1", 6.0}, {"p2", 6.0}, {"r", 1.0}};
  SummaryTable sh = run_experiment(config);
  CHECK(sh.stat_cols ==
        std::vector<std::string>{"mean_ratio", "min_ratio", "max_ratio"});
}

TEST_CASE("csv export and import round trip exactly") {
  ExperimentConfig config;
  config.study = Study::denoising;
  config.reps = 5;
  config.master_seed = 4;
  config.parameters = {{"p1", 14.0}, {"p2", 7.0}, {"r", 2.0}, {"t", 7.5}};
  SummaryTable table = run_experiment(config);
  std::string path = temp_path("round.csv");
  export_table(table, TableFormat::csv, path);
  SummaryTable back = import_table_csv(path);
  CHECK(back == table);
}

TEST_CASE("json export and import round trip exactly") {
  ExperimentConfig config;
  config.study = Study::sharpness;
  config.reps = 8;
  config.master_seed = 6;
  config.parameters = {{"p1", 7.0}, {"p2", 6.0}, {"r", 1.0}};
  SummaryTable table = run_experiment(config);
  std::string path = temp_path("round.json");
  export_table(table, TableFormat::json, path);
  SummaryTable back = import_table_json(path);
  CHECK(back == table);
}

TEST_CASE("csv writer emits se columns next to their stats") {
  SummaryTable table;
  table.param_cols = {"p"};
  table.stat_cols = {"loss"};
  table.rows.push_back({{3.0}, {0.25}, {0.01}, 10});
  std::ostringstream out;
  write_table(table, TableFormat::csv, out);
  CHECK(out.str() == "p,loss,loss_se,reps\n3,0.25,0.01,10\n");
}

TEST_CASE("empty table round trips as header only") {
  SummaryTable table;
  table.param_cols = {"p1", "p2"};
  table.stat_cols = {"u_sp"};
  std::string path = temp_path("empty.csv");
  export_table(table, TableFormat::csv, path);
  SummaryTable back = import_table_csv(path);
  CHECK(back.param_cols == table.param_cols);
  CHECK(back.stat_cols == table.stat_cols);
  CHECK(back.rows.empty());
}

TEST_CASE("malformed csv import throws") {
  std::string path = temp_path("malformed.csv");
  write_file(path, "p,loss,loss_se\n1,2\n");  // header lacks reps
  CHECK_THROWS(import_table_csv(path));
  write_file(path, "p,loss,loss_se,reps\n1,2\n");  // short row
  CHECK_THROWS(import_table_csv(path));
}

TEST_CASE("standard errors shrink like one over sqrt reps") {
  ExperimentConfig config;
  config.study = Study::denoising;
  config.master_seed = 21;
  config.parameters = {{"p1", 30.0}, {"p2", 10.0}, {"r", 2.0}, {"t", 8.0}};
  config.reps = 50;
  double se_small = run_experiment(config).rows[0].ses[0];
  config.reps = 200;
  double se_large = run_experiment(config).rows[0].ses[0];
  // quadrupling reps should halve the SE, within +-30%
  double ratio = se_small / se_large;
  CHECK(ratio >= 2.0 * 0.7);
  CHECK(ratio <= 2.0 * 1.3);
}

TEST_CASE("json and csv exports carry the same number of rows") {
  SummaryTable table = reproduce_table(2, 1, 13);
  std::ostringstream csv_out;
  write_table(table, TableFormat::csv, csv_out);
  long csv_rows = -1;  // skip the header
  for (char c : csv_out.str()) csv_rows += c == '\n';
  std::string json_path = temp_path("rows.json");
  export_table(table, TableFormat::json, json_path);
  SummaryTable back = import_table_json(json_path);
  CHECK(csv_rows == static_cast<long>(back.rows.size()));
  CHECK(csv_rows == 48);
}

TEST_CASE("reproduce_table shapes") {
  SummaryTable t1 = reproduce_table(1, 2, 3);
  CHECK(t1.rows.size() == 8);
  CHECK(t1.stat_cols.size() == 4);
  SummaryTable t2 = reproduce_table(2, 2, 3);
  CHECK(t2.rows.size() == 48);
  CHECK(t2.stat_cols == std::vector<std::string>{"mean_misclassification"});
  CHECK_THROWS_AS(reproduce_table(4, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(reproduce_table(0, 2, 3), std::invalid_argument);
}

TEST_CASE("reproduce_table csv is thread-count invariant byte for byte") {
  SummaryTable a = reproduce_table(1, 3, 5, 1);
  SummaryTable b = reproduce_table(1, 3, 5, 4);
  std::ostringstream sa, sb;
  write_table(a, TableFormat::csv, sa);
  write_table(b, TableFormat::csv, sb);
  CHECK(sa.str() == sb.str());
}
