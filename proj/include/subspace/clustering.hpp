#pragma once

#include <cstdint>
#include <vector>

#include "subspace/linalg.hpp"

namespace subspace {

struct LabelVector {
  std::vector<int> labels;  // entries in {-1, +1}
};

struct ClusterModel {
  int n, p;
  Vector mu;      // contrast mean, units of the noise SD
  double rho;     // P(label = +1)
  double signal;  // ||mu||_2
};

ClusterModel make_cluster_model(int n, int p, Vector mu, double rho);

struct TwoClassSample {
  Matrix y;  // p x n, column i is l_i * mu + N(0, I_p)
  LabelVector l;
};

TwoClassSample generate_two_class(const ClusterModel& model, Rng& rng);

// Sign of the leading right singular vector; sgn(0) maps to +1.
LabelVector pca_cluster(const Matrix& y);

// Fraction of disagreements minimized over the global +-1 relabeling.
double misclassification(const LabelVector& l, const LabelVector& l_hat);

struct ClusteringStudyRow {
  int n;
  double mean;
  double se;
};

// mu = t (p/n)^{1/4} mu_tilde / ||mu_tilde||, mu_tilde ~ N(0, I_p), drawn
// fresh each rep unless fix_mu is set (then one draw per n).
std::vector<ClusteringStudyRow> clustering_study(
    int p, double t_scaled, double rho, const std::vector<int>& n_list,
    int reps, std::uint64_t master_seed, bool fix_mu = false, int threads = 1);

// Same study, but with ||mu|| given directly per sample size; mu_norms must
// have one entry per element of n_list.
std::vector<ClusteringStudyRow> clustering_study_norms(
    int p, const std::vector<double>& mu_norms, double rho,
    const std::vector<int>& n_list, int reps, std::uint64_t master_seed,
    bool fix_mu = false, int threads = 1);

}  // namespace subspace
