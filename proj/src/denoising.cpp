#include "subspace/denoising.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "subspace/parallel.hpp"

namespace subspace {

namespace {

Matrix draw_noise(int p1, int p2, NoiseKind kind, Rng& rng) {
  Matrix z(p1, p2);
  if (kind == NoiseKind::gaussian) {
    for (int j = 0; j < p2; ++j)
      for (int i = 0; i < p1; ++i) z(i, j) = rng.gaussian();
  } else {
    for (int j = 0; j < p2; ++j)
      for (int i = 0; i < p1; ++i) z(i, j) = rng.rademacher();
  }
  return z;
}

Matrix rebuild_with_values(const Eigen::BDCSVD<Matrix>& sv, const Vector& vals) {
  return sv.matrixU() * vals.asDiagonal() * sv.matrixV().transpose();
}

}  // namespace

DenoisingModel make_denoising_model(int p1, int p2, int r, double t,
                                    NoiseKind noise_kind, Rng& rng) {
  if (r < 1 || r > std::min(p1, p2)) {
    throw std::invalid_argument("make_denoising_model: bad rank");
  }
  if (t <= 0.0) {
    throw std::invalid_argument("make_denoising_model: t must be > 0");
  }
  OrthonormalBasis u = haar_orthonormal(p1, r, rng);
  OrthonormalBasis v = haar_orthonormal(p2, r, rng);
  Matrix x = t * u.columns() * v.columns().transpose();
  return DenoisingModel{p1, p2, r, t, noise_kind, std::move(x)};
}

SpectralDenoiseResult spectral_denoise(const Matrix& y, int r) {
  if (r < 1 || r > std::min(y.rows(), y.cols())) {
    throw std::invalid_argument("spectral_denoise: bad rank");
  }
  check_finite(y, "spectral_denoise y");
  Eigen::BDCSVD<Matrix> sv(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Matrix u = sv.matrixU().leftCols(r);
  Matrix v = sv.matrixV().leftCols(r);
  Matrix x_hat = u * sv.singularValues().head(r).asDiagonal() * v.transpose();
  return {std::move(x_hat), OrthonormalBasis(std::move(u)),
          OrthonormalBasis(std::move(v))};
}

Matrix svt(const Matrix& y, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("svt: lambda must be >= 0");
  check_finite(y, "svt y");
  if (lambda == 0.0) return y;
  Eigen::BDCSVD<Matrix> sv(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector vals = (sv.singularValues().array() - lambda).max(0.0);
  return rebuild_with_values(sv, vals);
}

Matrix hsvt(const Matrix& y, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("hsvt: lambda must be >= 0");
  check_finite(y, "hsvt y");
  if (lambda == 0.0) return y;
  Eigen::BDCSVD<Matrix> sv(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector vals = sv.singularValues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    // Keeping sigma_i saves sigma_i^2 / 2 of fit at a rank cost of lambda.
    if (!(vals(i) * vals(i) > 2.0 * lambda)) vals(i) = 0.0;
  }
  return rebuild_with_values(sv, vals);
}

Matrix adaptive_estimator(const Matrix& y, double t, double c_threshold) {
  if (t <= 0.0 || c_threshold <= 0.0) {
    throw std::invalid_argument("adaptive_estimator: t and c_threshold must be > 0");
  }
  const double p1 = static_cast<double>(y.rows());
  const double p2 = static_cast<double>(y.cols());
  if (t * t < c_threshold * (p1 + p2)) {
    return Matrix::Zero(y.rows(), y.cols());
  }
  double lambda_star = std::sqrt(p1) + std::sqrt(p2);
  return svt(y, lambda_star);
}

DenoisingRisk denoising_risk(const DenoisingModel& model, int reps,
                             std::uint64_t master_seed, int threads) {
  if (reps < 1) throw std::invalid_argument("denoising_risk: reps must be >= 1");
  const int p1 = model.p1, p2 = model.p2, r = model.r;
  const double t = model.t;

  std::vector<double> u_sp(reps), v_sp(reps), u_fro(reps), v_fro(reps);
  parallel_for(reps, threads, [&](long rep) {
    Rng rng(derive_seed(master_seed, 0, static_cast<std::uint64_t>(rep)));
    OrthonormalBasis u = haar_orthonormal(p1, r, rng);
    OrthonormalBasis v = haar_orthonormal(p2, r, rng);
    Matrix y = t * u.columns() * v.columns().transpose() +
               draw_noise(p1, p2, model.noise_kind, rng);
    Matrix uh, vh;
    Vector s;
    leading_singular_pairs(y, r, &uh, &s, &vh);
    SinThetaDistances du = sin_theta_fast(u.columns(), uh);
    SinThetaDistances dv = sin_theta_fast(v.columns(), vh);
    u_sp[rep] = du.spectral * du.spectral;
    v_sp[rep] = dv.spectral * dv.spectral;
    u_fro[rep] = du.frobenius * du.frobenius;
    v_fro[rep] = dv.frobenius * dv.frobenius;
  });

  MeanSe mu = mean_se(u_sp), mv = mean_se(v_sp);
  MeanSe fu = mean_se(u_fro), fv = mean_se(v_fro);
  double t2 = t * t, t4 = t2 * t2;
  double theo_v = std::min(p2 * (t2 + p1) / t4, 1.0);
  double theo_u = std::min(p1 * (t2 + p2) / t4, 1.0);
  return {mu.mean, mv.mean, fu.mean, fv.mean,
          mu.se,   mv.se,   fu.se,   fv.se,
          theo_u,  theo_v};
}

}  // namespace subspace
