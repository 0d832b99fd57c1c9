#include "subspace/cca.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "subspace/parallel.hpp"

namespace subspace {

namespace {

constexpr double kEigenvalueFloor = 1e-12;

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  return m;
}

// I_p + (Z + Z^T) / (2 ||Z + Z^T||), eigenvalues in [0.5, 1.5].
Matrix random_covariance(int p, Rng& rng) {
  Matrix z = gaussian_matrix(p, p, rng);
  Matrix s = z + z.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  double norm = std::max(std::abs(eig.eigenvalues()(0)),
                         std::abs(eig.eigenvalues()(p - 1)));
  return Matrix::Identity(p, p) + s / (2.0 * norm);
}

}  // namespace

Matrix symmetric_sqrt(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  Vector vals = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
}

Matrix symmetric_inv_sqrt(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  if (eig.eigenvalues()(0) <= kEigenvalueFloor) {
    throw std::invalid_argument(
        "symmetric_inv_sqrt: matrix is numerically singular");
  }
  Vector vals = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  return eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
}

CcaModel build_cca_model(int p1, int p2, int r, double t, Rng& rng) {
  if (r < 1 || r > std::min(p1, p2)) {
    throw std::invalid_argument("build_cca_model: bad rank");
  }
  if (!(t > 0.0 && t < 1.0)) {
    throw std::invalid_argument("build_cca_model: t must be in (0, 1)");
  }
  Matrix sigma_x = random_covariance(p1, rng);
  Matrix sigma_y = random_covariance(p2, rng);
  OrthonormalBasis u = haar_orthonormal(p1, r, rng);
  OrthonormalBasis v = haar_orthonormal(p2, r, rng);

  Matrix sx_sqrt = symmetric_sqrt(sigma_x);
  Matrix sy_sqrt = symmetric_sqrt(sigma_y);
  Matrix sx_isqrt = symmetric_inv_sqrt(sigma_x);
  Matrix sy_isqrt = symmetric_inv_sqrt(sigma_y);

  Matrix sigma_xy =
      sx_sqrt * (t * u.columns() * v.columns().transpose()) * sy_sqrt;
  Matrix s_pop = sx_isqrt * sigma_xy * sy_isqrt;

  Eigen::BDCSVD<Matrix> sv(s_pop, Eigen::ComputeThinU | Eigen::ComputeThinV);
  OrthonormalBasis u_s(sv.matrixU().leftCols(r));
  OrthonormalBasis v_s(sv.matrixV().leftCols(r));
  Matrix a_pop = sx_isqrt * u_s.columns();
  Matrix b_pop = sy_isqrt * v_s.columns();

  // Joint PD check; cannot fail for t < 1 by construction.
  Matrix joint(p1 + p2, p1 + p2);
  joint.topLeftCorner(p1, p1) = sigma_x;
  joint.topRightCorner(p1, p2) = sigma_xy;
  joint.bottomLeftCorner(p2, p1) = sigma_xy.transpose();
  joint.bottomRightCorner(p2, p2) = sigma_y;
  Eigen::LLT<Matrix> llt(joint);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("build_cca_model: joint covariance not PD");
  }

  return CcaModel{p1,
                  p2,
                  r,
                  t,
                  std::move(sigma_x),
                  std::move(sigma_y),
                  std::move(sigma_xy),
                  std::move(sx_sqrt),
                  std::move(sy_sqrt),
                  std::move(sx_isqrt),
                  std::move(sy_isqrt),
                  std::move(s_pop),
                  std::move(u_s),
                  std::move(v_s),
                  std::move(a_pop),
                  std::move(b_pop)};
}

CcaSample sample_cca(const CcaModel& model, int n, Rng& rng) {
  const int p1 = model.p1, p2 = model.p2;
  if (n <= p1 + p2) {
    throw std::invalid_argument("sample_cca: sample covariance would be singular, need n > p1 + p2");
  }
  Matrix joint(p1 + p2, p1 + p2);
  joint.topLeftCorner(p1, p1) = model.sigma_x;
  joint.topRightCorner(p1, p2) = model.sigma_xy;
  joint.bottomLeftCorner(p2, p1) = model.sigma_xy.transpose();
  joint.bottomRightCorner(p2, p2) = model.sigma_y;
  Eigen::LLT<Matrix> llt(joint);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("sample_cca: joint covariance not PD");
  }
  Matrix g = gaussian_matrix(p1 + p2, n, rng);
  Matrix data = llt.matrixL() * g;
  return {data.topRows(p1), data.bottomRows(p2)};
}

CcaEstimate estimate_cca(const Matrix& x_data, const Matrix& y_data, int r) {
  if (x_data.cols() != y_data.cols()) {
    throw std::invalid_argument("estimate_cca: sample sizes differ");
  }
  const double n = static_cast<double>(x_data.cols());
  Matrix sx = x_data * x_data.transpose() / n;
  Matrix sy = y_data * y_data.transpose() / n;
  Matrix sxy = x_data * y_data.transpose() / n;

  Matrix sx_isqrt, sy_isqrt;
  try {
    sx_isqrt = symmetric_inv_sqrt(sx);
    sy_isqrt = symmetric_inv_sqrt(sy);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("estimate_cca: singular sample covariance");
  }
  Matrix s_hat = sx_isqrt * sxy * sy_isqrt;
  Eigen::BDCSVD<Matrix> sv(s_hat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  OrthonormalBasis u_hat(sv.matrixU().leftCols(r));
  OrthonormalBasis v_hat(sv.matrixV().leftCols(r));
  Matrix a_hat = sx_isqrt * u_hat.columns();
  Matrix b_hat = sy_isqrt * v_hat.columns();
  return {std::move(a_hat), std::move(b_hat), std::move(u_hat),
          std::move(v_hat)};
}

CcaLosses cca_losses(const CcaModel& model, const CcaEstimate& est) {
  if (est.u_hat.ambient_dim() != model.p1 ||
      est.v_hat.ambient_dim() != model.p2 ||
      est.u_hat.rank() != model.r) {
    throw std::invalid_argument("cca_losses: shapes do not match the model");
  }
  SubspaceMetrics du = equivalent_metrics(model.u_s, est.u_hat);
  SubspaceMetrics dv = equivalent_metrics(model.v_s, est.v_hat);

  Matrix m_hat = model.sigma_x_sqrt * est.a_hat;
  Matrix m = model.sigma_x_sqrt * model.a_pop;
  Eigen::JacobiSVD<Matrix> sv(m_hat.transpose() * m,
                              Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix rot = sv.matrixU() * sv.matrixV().transpose();
  double lf = (m_hat * rot - m).squaredNorm();
  return {du.d_sp * du.d_sp, du.d_f * du.d_f, dv.d_sp * dv.d_sp,
          dv.d_f * dv.d_f, lf};
}

CcaStudyResult cca_study(int p1, int p2, int r, int n, double t, int reps,
                         std::uint64_t master_seed, int threads) {
  if (reps < 1) throw std::invalid_argument("cca_study: reps must be >= 1");
  std::vector<double> u_sp(reps), u_fro(reps), v_sp(reps), v_fro(reps), lf(reps);
  parallel_for(reps, threads, [&](long rep) {
    Rng rng(derive_seed(master_seed, 0, static_cast<std::uint64_t>(rep)));
    CcaModel model = build_cca_model(p1, p2, r, t, rng);
    CcaSample sample = sample_cca(model, n, rng);
    CcaEstimate est = estimate_cca(sample.x_data, sample.y_data, r);
    CcaLosses losses = cca_losses(model, est);
    u_sp[rep] = losses.u_sp;
    u_fro[rep] = losses.u_fro;
    v_sp[rep] = losses.v_sp;
    v_fro[rep] = losses.v_fro;
    lf[rep] = losses.l_f_procrustes;
  });
  MeanSe a = mean_se(u_sp), b = mean_se(u_fro), c = mean_se(v_sp),
         d = mean_se(v_fro), e = mean_se(lf);
  return {a.mean, b.mean, c.mean, d.mean, e.mean,
          a.se,   b.se,   c.se,   d.se,   e.se};
}

}  // namespace subspace
