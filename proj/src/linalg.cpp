#include "subspace/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace subspace {

void check_finite(const Matrix& a, const std::string& name) {
  if (!a.allFinite()) {
    throw std::invalid_argument(name + ": non-finite entries");
  }
}

OrthonormalBasis::OrthonormalBasis(Matrix columns) : columns_(std::move(columns)) {
  if (columns_.rows() < 1 || columns_.cols() < 1 ||
      columns_.cols() > columns_.rows()) {
    throw std::invalid_argument("OrthonormalBasis: need 1 <= r <= p");
  }
  check_finite(columns_, "OrthonormalBasis");
  Matrix gram = columns_.transpose() * columns_;
  gram.diagonal().array() -= 1.0;
  if (gram.cwiseAbs().maxCoeff() > kOrthoTol) {
    throw std::invalid_argument("OrthonormalBasis: columns not orthonormal");
  }
}

SvdFactorization svd(const Matrix& a) {
  check_finite(a, "svd input");
  Eigen::BDCSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SvdFactorization{OrthonormalBasis(solver.matrixU()),
                          solver.singularValues(),
                          OrthonormalBasis(solver.matrixV())};
}

OrthonormalBasis orthonormal_complement(const OrthonormalBasis& v) {
  const Eigen::Index p = v.ambient_dim();
  const Eigen::Index r = v.rank();
  if (r == p) {
    throw std::invalid_argument("orthonormal_complement: complement is empty");
  }
  Eigen::HouseholderQR<Matrix> qr(v.columns());
  Matrix q = qr.householderQ() * Matrix::Identity(p, p);
  return OrthonormalBasis(q.rightCols(p - r));
}

SinThetaDistances sin_theta(const OrthonormalBasis& v,
                            const OrthonormalBasis& v_hat) {
  if (v.ambient_dim() != v_hat.ambient_dim() || v.rank() != v_hat.rank()) {
    throw std::invalid_argument("sin_theta: mismatched shapes");
  }
  const Eigen::Index p = v.ambient_dim();
  const Eigen::Index r = v.rank();
  if (r == p) {
    return {0.0, 0.0};  // both span the full space
  }
  OrthonormalBasis v_perp = orthonormal_complement(v);
  Matrix m = v_hat.columns().transpose() * v_perp.columns();
  Eigen::JacobiSVD<Matrix> sv(m);
  double spectral = sv.singularValues().size() > 0 ? sv.singularValues()(0) : 0.0;
  double frobenius = m.norm();
  spectral = std::min(spectral, 1.0);
  frobenius = std::min(frobenius, std::sqrt(static_cast<double>(r)));
  return {spectral, frobenius};
}

SinThetaDistances sin_theta_fast(const Matrix& v, const Matrix& v_hat) {
  const Eigen::Index r = v.cols();
  Matrix m = v_hat.transpose() * v;  // r x r
  Eigen::JacobiSVD<Matrix> sv(m);
  const Vector& s = sv.singularValues();
  double smin = s(s.size() - 1);
  double spectral = std::sqrt(std::max(0.0, 1.0 - smin * smin));
  double fro2 = static_cast<double>(r) - m.squaredNorm();
  double frobenius = std::sqrt(std::max(0.0, fro2));
  return {std::min(spectral, 1.0),
          std::min(frobenius, std::sqrt(static_cast<double>(r)))};
}

SubspaceMetrics equivalent_metrics(const OrthonormalBasis& v,
                                   const OrthonormalBasis& v_hat) {
  if (v.ambient_dim() != v_hat.ambient_dim() || v.rank() != v_hat.rank()) {
    throw std::invalid_argument("equivalent_metrics: mismatched shapes");
  }
  Matrix cross = v.columns().transpose() * v_hat.columns();
  Eigen::JacobiSVD<Matrix> sv(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix rot = sv.matrixU() * sv.matrixV().transpose();
  Matrix diff = v_hat.columns() - v.columns() * rot;
  Eigen::JacobiSVD<Matrix> dv(diff);
  double d_sp = dv.singularValues().size() > 0 ? dv.singularValues()(0) : 0.0;
  double d_f = diff.norm();

  Matrix proj_diff = v_hat.columns() * v_hat.columns().transpose() -
                     v.columns() * v.columns().transpose();
  Eigen::JacobiSVD<Matrix> pv(proj_diff);
  double proj_sp = pv.singularValues().size() > 0 ? pv.singularValues()(0) : 0.0;
  double proj_f = proj_diff.norm();
  return {d_sp, d_f, proj_sp, proj_f};
}

OrthonormalBasis haar_orthonormal(int p, int r, Rng& rng) {
  if (r < 1 || r > p) {
    throw std::invalid_argument("haar_orthonormal: need 1 <= r <= p");
  }
  Matrix g(p, r);
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < p; ++i) {
      g(i, j) = rng.gaussian();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(p, r);
  Matrix rr = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  // Sign correction: without it the QR output is not Haar-distributed.
  for (int j = 0; j < r; ++j) {
    if (rr(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return OrthonormalBasis(std::move(q));
}

void leading_singular_pairs(const Matrix& y, int r, Matrix* u, Vector* s,
                            Matrix* v) {
  const Eigen::Index p1 = y.rows();
  const Eigen::Index p2 = y.cols();
  if (r < 1 || r > std::min(p1, p2)) {
    throw std::invalid_argument("leading_singular_pairs: bad rank");
  }
  if (p1 <= p2) {
    Matrix gram = y * y.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    Matrix uu(p1, r);
    Vector ss(r);
    for (int k = 0; k < r; ++k) {
      // eigenvalues ascend; take the top r
      uu.col(k) = eig.eigenvectors().col(p1 - 1 - k);
      ss(k) = std::sqrt(std::max(0.0, eig.eigenvalues()(p1 - 1 - k)));
    }
    Matrix vv = y.transpose() * uu;
    for (int k = 0; k < r; ++k) {
      double nrm = vv.col(k).norm();
      if (nrm > 0.0) vv.col(k) /= nrm;
    }
    // Re-orthonormalize against rounding in the Gram route.
    Eigen::HouseholderQR<Matrix> qr(vv);
    Matrix q = qr.householderQ() * Matrix::Identity(p2, r);
    Matrix rr = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    for (int k = 0; k < r; ++k) {
      if (rr(k, k) < 0.0) q.col(k) = -q.col(k);
    }
    *u = std::move(uu);
    *s = std::move(ss);
    *v = std::move(q);
  } else {
    Matrix ut, vt;
    Matrix yt = y.transpose();
    leading_singular_pairs(yt, r, &vt, s, &ut);
    *u = std::move(ut);
    *v = std::move(vt);
  }
}

}  // namespace subspace
