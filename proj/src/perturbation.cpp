#include "subspace/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace subspace {

namespace {

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> sv(m);
  return sv.singularValues()(0);
}

double smallest_singular(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> sv(m);
  const Vector& s = sv.singularValues();
  return s(s.size() - 1);
}

struct FullBases {
  Matrix u_full;  // p1 x p1
  Matrix v_full;  // p2 x p2
  Vector s;       // min(p1, p2)
};

FullBases full_svd(const Matrix& x) {
  Eigen::BDCSVD<Matrix> sv(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {sv.matrixU(), sv.matrixV(), sv.singularValues()};
}

void require_identifiable(const Vector& s, int r, Eigen::Index kmax) {
  double sr = s(r - 1);
  double sr1 = (r < kmax) ? s(r) : 0.0;
  double top = s(0);
  if (top <= 0.0 || (sr - sr1) / top <= kGapGuard) {
    throw std::invalid_argument("target rank not identifiable: sigma_r(X) ~ sigma_{r+1}(X)");
  }
}

}  // namespace

BlockDecomposition block_decompose(const Matrix& x, const Matrix& z, int r) {
  if (x.rows() != z.rows() || x.cols() != z.cols()) {
    throw std::invalid_argument("block_decompose: x and z must have the same shape");
  }
  const Eigen::Index p1 = x.rows();
  const Eigen::Index p2 = x.cols();
  const Eigen::Index kmax = std::min(p1, p2);
  if (r < 1 || r >= kmax) {
    throw std::invalid_argument("block_decompose: need 1 <= r < min(p1, p2)");
  }
  check_finite(x, "block_decompose x");
  check_finite(z, "block_decompose z");

  FullBases f = full_svd(x);
  require_identifiable(f.s, r, kmax);

  Matrix u = f.u_full.leftCols(r);
  Matrix v = f.v_full.leftCols(r);
  Matrix up = f.u_full.rightCols(p1 - r);
  Matrix vp = f.v_full.rightCols(p2 - r);

  Matrix xhat = x + z;
  double alpha = smallest_singular(u.transpose() * xhat * v);
  double beta = spectral_norm(up.transpose() * xhat * vp);

  Matrix z11 = u.transpose() * z * v;
  Matrix z12 = u.transpose() * z * vp;
  Matrix z21 = up.transpose() * z * v;
  Matrix z22 = up.transpose() * z * vp;

  return BlockDecomposition{r,
                            std::move(z11),
                            z12,
                            z21,
                            std::move(z22),
                            alpha,
                            beta,
                            spectral_norm(z12),
                            spectral_norm(z21),
                            z12.norm(),
                            z21.norm(),
                            OrthonormalBasis(std::move(u)),
                            OrthonormalBasis(std::move(v)),
                            OrthonormalBasis(std::move(up)),
                            OrthonormalBasis(std::move(vp))};
}

BoundReport unilateral_bounds_from_scalars(int r, double alpha, double beta,
                                           double z12_sp, double z21_sp,
                                           double z12_fro, double z21_fro) {
  const double cap_sp = 1.0;
  const double cap_fro = std::sqrt(static_cast<double>(r));
  double gap = alpha * alpha - beta * beta -
               std::min(z12_sp * z12_sp, z21_sp * z21_sp);
  BoundReport rep{cap_sp, cap_fro, cap_sp, cap_fro, false, gap};
  if (gap <= 0.0) {
    return rep;
  }
  rep.applicable = true;
  rep.v_spectral = std::min((alpha * z12_sp + beta * z21_sp) / gap, cap_sp);
  rep.u_spectral = std::min((alpha * z21_sp + beta * z12_sp) / gap, cap_sp);
  rep.v_frobenius = std::min((alpha * z12_fro + beta * z21_fro) / gap, cap_fro);
  rep.u_frobenius = std::min((alpha * z21_fro + beta * z12_fro) / gap, cap_fro);
  return rep;
}

BoundReport unilateral_bounds(const BlockDecomposition& d) {
  return unilateral_bounds_from_scalars(d.r, d.alpha, d.beta, d.z12_sp,
                                        d.z21_sp, d.z12_fro, d.z21_fro);
}

BoundReport wedin_bounds(const Matrix& x, const Matrix& z, int r) {
  if (x.rows() != z.rows() || x.cols() != z.cols()) {
    throw std::invalid_argument("wedin_bounds: x and z must have the same shape");
  }
  const Eigen::Index kmax = std::min(x.rows(), x.cols());
  if (r < 1 || r >= kmax) {
    throw std::invalid_argument("wedin_bounds: need 1 <= r < min(p1, p2)");
  }
  check_finite(x, "wedin_bounds x");
  check_finite(z, "wedin_bounds z");

  Eigen::BDCSVD<Matrix> sx(x);
  require_identifiable(sx.singularValues(), r, kmax);
  double sigma2_max = sx.singularValues()(r);  // sigma_{r+1}(X)

  Matrix xhat = x + z;
  Eigen::BDCSVD<Matrix> sh(xhat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double sigma1_min = sh.singularValues()(r - 1);  // sigma_r(X + Z)
  Matrix u_hat = sh.matrixU().leftCols(r);
  Matrix v_hat = sh.matrixV().leftCols(r);

  double delta = sigma1_min - sigma2_max;
  const double cap_sp = 1.0;
  const double cap_fro = std::sqrt(static_cast<double>(r));
  BoundReport rep{cap_sp, cap_fro, cap_sp, cap_fro, false, delta};
  if (delta <= 0.0) {
    return rep;
  }
  Matrix zv = z * v_hat;
  Matrix uz = u_hat.transpose() * z;
  double sp = std::min(std::max(spectral_norm(zv), spectral_norm(uz)) / delta, cap_sp);
  double fro = std::min(std::max(zv.norm(), uz.norm()) / delta, cap_fro);
  rep.applicable = true;
  rep.v_spectral = rep.u_spectral = sp;
  rep.v_frobenius = rep.u_frobenius = fro;
  return rep;
}

ProjectionBound projection_bound(const Matrix& a, const OrthonormalBasis& w) {
  if (a.cols() != w.ambient_dim()) {
    throw std::invalid_argument("projection_bound: incompatible shapes");
  }
  const int r = static_cast<int>(w.rank());
  Matrix aw = a * w.columns();
  Eigen::JacobiSVD<Matrix> saw(aw);
  double sigma_r_aw = saw.singularValues()(r - 1);

  Eigen::BDCSVD<Matrix> sa(a);
  const Eigen::Index kmax = std::min(a.rows(), a.cols());
  double sigma_r1_a = (r < kmax) ? sa.singularValues()(r) : 0.0;

  double denom = sigma_r_aw * sigma_r_aw - sigma_r1_a * sigma_r1_a;
  if (sigma_r_aw <= sigma_r1_a || denom <= 0.0) {
    throw std::invalid_argument("projection_bound: singular value gap condition fails");
  }

  // Projector onto range(AW) via a thin QR.
  Eigen::HouseholderQR<Matrix> qr(aw);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), r);
  OrthonormalBasis w_perp = orthonormal_complement(w);
  Matrix rest = a * w_perp.columns();
  Matrix projected = q * (q.transpose() * rest);

  double sp = std::min(sigma_r_aw * spectral_norm(projected) / denom, 1.0);
  double fro = std::min(sigma_r_aw * projected.norm() / denom,
                        std::sqrt(static_cast<double>(r)));
  return {sp, fro};
}

SegmentBounds segment_bounds(const Matrix& x, const Matrix& z, int i, int j) {
  if (x.rows() != z.rows() || x.cols() != z.cols()) {
    throw std::invalid_argument("segment_bounds: x and z must have the same shape");
  }
  const Eigen::Index p1 = x.rows();
  const Eigen::Index p2 = x.cols();
  const Eigen::Index kmax = std::min(p1, p2);
  if (i < 1 || j < i || j > kmax) {
    throw std::invalid_argument("segment_bounds: need 1 <= i <= j <= min(p1, p2)");
  }
  check_finite(x, "segment_bounds x");
  check_finite(z, "segment_bounds z");

  FullBases f = full_svd(x);
  Matrix xhat = x + z;

  double sum_v = 0.0;
  double sum_u = 0.0;
  for (int k : {i - 1, j}) {
    if (k == 0) {
      // alpha^(0) = infinity and z^(0) = 0: the term vanishes.
      continue;
    }
    Matrix uk = f.u_full.leftCols(k);
    Matrix vk = f.v_full.leftCols(k);
    Matrix ukp = f.u_full.rightCols(p1 - k);
    Matrix vkp = f.v_full.rightCols(p2 - k);

    double alpha_k = smallest_singular(uk.transpose() * xhat * vk);
    double beta_k = (ukp.cols() > 0 && vkp.cols() > 0)
                        ? spectral_norm(ukp.transpose() * xhat * vkp)
                        : 0.0;
    double z12_k = (vkp.cols() > 0)
                       ? spectral_norm(uk.transpose() * z * vkp)
                       : 0.0;
    double z21_k = (ukp.cols() > 0)
                       ? spectral_norm(ukp.transpose() * z * vk)
                       : 0.0;

    double gap = alpha_k * alpha_k - beta_k * beta_k -
                 std::min(z12_k * z12_k, z21_k * z21_k);
    if (gap <= 0.0) {
      throw std::invalid_argument(
          "segment_bounds: applicability condition fails at k = " +
          std::to_string(k));
    }
    double term_v = (alpha_k * z12_k + beta_k * z21_k) / gap;
    double term_u = (alpha_k * z21_k + beta_k * z12_k) / gap;
    sum_v += term_v * term_v;
    sum_u += term_u * term_u;
  }
  return {std::min(std::sqrt(sum_u), 1.0), std::min(std::sqrt(sum_v), 1.0)};
}

}  // namespace subspace
