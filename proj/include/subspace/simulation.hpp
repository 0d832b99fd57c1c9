#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace subspace {

enum class Study { denoising, clustering, cca, sharpness };

Study parse_study(const std::string& name);
std::string study_name(Study study);

struct ExperimentConfig {
  Study study;
  std::map<std::string, double> parameters;
  int reps = 1000;
  std::uint64_t master_seed = 0;
};

// Flat key=value text: study, reps, master_seed plus study parameters.
ExperimentConfig parse_config_file(const std::string& path);

struct SummaryTable {
  std::vector<std::string> param_cols;
  std::vector<std::string> stat_cols;  // each stat also gets a <name>_se column
  struct Row {
    std::vector<double> params;
    std::vector<double> means;
    std::vector<double> ses;
    long reps = 0;

    bool operator==(const Row&) const = default;
  };
  std::vector<Row> rows;

  bool operator==(const SummaryTable&) const = default;
};

SummaryTable run_experiment(const ExperimentConfig& config, int threads = 1);

// Rows exactly as printed in the corresponding summary table; table 3 uses
// cca_rank (default 2) since its rank is not part of the grid.
SummaryTable reproduce_table(int table_id, int reps, std::uint64_t master_seed,
                             int threads = 1, int cca_rank = 2);

enum class TableFormat { csv, json };

void export_table(const SummaryTable& table, TableFormat format,
                  const std::string& path);
void write_table(const SummaryTable& table, TableFormat format,
                 std::ostream& out);

SummaryTable import_table_csv(const std::string& path);
SummaryTable import_table_json(const std::string& path);

}  // namespace subspace
