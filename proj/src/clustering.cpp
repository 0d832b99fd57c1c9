#include "subspace/clustering.hpp"

#include <cmath>
#include <stdexcept>

#include "subspace/parallel.hpp"

namespace subspace {

ClusterModel make_cluster_model(int n, int p, Vector mu, double rho) {
  if (n < 2) throw std::invalid_argument("make_cluster_model: need n >= 2");
  if (mu.size() != p) {
    throw std::invalid_argument("make_cluster_model: mu must have length p");
  }
  if (rho <= 0.0 || rho > 1.0) {
    throw std::invalid_argument("make_cluster_model: rho must be in (0, 1]");
  }
  double signal = mu.norm();
  return ClusterModel{n, p, std::move(mu), rho, signal};
}

TwoClassSample generate_two_class(const ClusterModel& model, Rng& rng) {
  LabelVector l;
  l.labels.resize(static_cast<size_t>(model.n));
  for (int i = 0; i < model.n; ++i) {
    l.labels[static_cast<size_t>(i)] = rng.uniform() < model.rho ? 1 : -1;
  }
  Matrix y(model.p, model.n);
  for (int i = 0; i < model.n; ++i) {
    for (int k = 0; k < model.p; ++k) {
      y(k, i) = l.labels[static_cast<size_t>(i)] * model.mu(k) + rng.gaussian();
    }
  }
  return {std::move(y), std::move(l)};
}

LabelVector pca_cluster(const Matrix& y) {
  check_finite(y, "pca_cluster y");
  if (y.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("pca_cluster: all-zero input");
  }
  Matrix u, v;
  Vector s;
  leading_singular_pairs(y, 1, &u, &s, &v);
  LabelVector out;
  out.labels.resize(static_cast<size_t>(v.rows()));
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    out.labels[static_cast<size_t>(i)] = v(i, 0) < 0.0 ? -1 : 1;
  }
  return out;
}

double misclassification(const LabelVector& l, const LabelVector& l_hat) {
  const size_t n = l.labels.size();
  if (n == 0 || n != l_hat.labels.size()) {
    throw std::invalid_argument("misclassification: length mismatch");
  }
  long diff = 0;
  for (size_t i = 0; i < n; ++i) {
    if (l.labels[i] != l_hat.labels[i]) ++diff;
  }
  long best = std::min(diff, static_cast<long>(n) - diff);
  return static_cast<double>(best) / static_cast<double>(n);
}

std::vector<ClusteringStudyRow> clustering_study(
    int p, double t_scaled, double rho, const std::vector<int>& n_list,
    int reps, std::uint64_t master_seed, bool fix_mu, int threads) {
  std::vector<double> norms;
  norms.reserve(n_list.size());
  for (int n : n_list) {
    norms.push_back(t_scaled * std::pow(static_cast<double>(p) / n, 0.25));
  }
  return clustering_study_norms(p, norms, rho, n_list, reps, master_seed,
                                fix_mu, threads);
}

std::vector<ClusteringStudyRow> clustering_study_norms(
    int p, const std::vector<double>& mu_norms, double rho,
    const std::vector<int>& n_list, int reps, std::uint64_t master_seed,
    bool fix_mu, int threads) {
  if (reps < 1) throw std::invalid_argument("clustering_study: reps must be >= 1");
  if (mu_norms.size() != n_list.size()) {
    throw std::invalid_argument(
        "clustering_study: need one signal norm per sample size");
  }
  std::vector<ClusteringStudyRow> rows;
  rows.reserve(n_list.size());
  for (size_t row = 0; row < n_list.size(); ++row) {
    const int n = n_list[row];
    const double scale = mu_norms[row];

    Vector fixed_mu;
    if (fix_mu) {
      Rng rng(derive_seed(master_seed, row, ~0ULL));
      fixed_mu.resize(p);
      for (int k = 0; k < p; ++k) fixed_mu(k) = rng.gaussian();
      double nrm = fixed_mu.norm();
      fixed_mu *= (nrm > 0 ? scale / nrm : 0.0);
    }

    std::vector<double> losses(static_cast<size_t>(reps));
    parallel_for(reps, threads, [&](long rep) {
      Rng rng(derive_seed(master_seed, row, static_cast<std::uint64_t>(rep)));
      Vector mu;
      if (fix_mu) {
        mu = fixed_mu;
      } else {
        mu.resize(p);
        for (int k = 0; k < p; ++k) mu(k) = rng.gaussian();
        double nrm = mu.norm();
        mu *= (nrm > 0 ? scale / nrm : 0.0);
      }
      ClusterModel model = make_cluster_model(n, p, std::move(mu), rho);
      TwoClassSample sample = generate_two_class(model, rng);
      LabelVector l_hat = pca_cluster(sample.y);
      losses[static_cast<size_t>(rep)] = misclassification(sample.l, l_hat);
    });
    MeanSe stat = mean_se(losses);
    rows.push_back({n, stat.mean, stat.se});
  }
  return rows;
}

}  // namespace subspace
