#pragma once

#include <Eigen/Dense>
#include <string>

#include "subspace/rng.hpp"

namespace subspace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kOrthoTol = 1e-10;

// Throws std::invalid_argument if any entry is NaN or infinite.
void check_finite(const Matrix& a, const std::string& name);

// p x r matrix with orthonormal columns, validated at construction.
class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(Matrix columns);

  Eigen::Index ambient_dim() const { return columns_.rows(); }
  Eigen::Index rank() const { return columns_.cols(); }
  const Matrix& columns() const { return columns_; }

 private:
  Matrix columns_;
};

struct SvdFactorization {
  OrthonormalBasis u;        // p1 x k
  Vector singular_values;    // length k, non-increasing
  OrthonormalBasis v;        // p2 x k
};

// Thin SVD with k = min(p1, p2).
SvdFactorization svd(const Matrix& a);

// V_perp of shape p x (p - r) with [V V_perp] orthogonal. Errors when r = p.
OrthonormalBasis orthonormal_complement(const OrthonormalBasis& v);

struct SinThetaDistances {
  double spectral;    // in [0, 1]
  double frobenius;   // in [0, sqrt(r)]
};

// Computed as the norms of v_hat^T V_perp, which is stable for nearly
// aligned subspaces.
SinThetaDistances sin_theta(const OrthonormalBasis& v,
                            const OrthonormalBasis& v_hat);

// Cheap variant via the singular values of v_hat^T v; avoids the p x p
// complement. Used inside Monte-Carlo loops where losses are not tiny.
SinThetaDistances sin_theta_fast(const Matrix& v, const Matrix& v_hat);

struct SubspaceMetrics {
  double d_sp;     // ||v_hat - v O|| at the Procrustes-optimal O
  double d_f;      // Frobenius version
  double proj_sp;  // ||v_hat v_hat^T - v v^T||
  double proj_f;
};

SubspaceMetrics equivalent_metrics(const OrthonormalBasis& v,
                                   const OrthonormalBasis& v_hat);

// Haar-distributed orthonormal columns: QR of a Gaussian matrix with the
// R-diagonal sign correction.
OrthonormalBasis haar_orthonormal(int p, int r, Rng& rng);

// Leading r singular triplets of y via an eigendecomposition of the smaller
// Gram matrix. Much faster than a full SVD when y is very tall or very wide.
void leading_singular_pairs(const Matrix& y, int r, Matrix* u, Vector* s,
                            Matrix* v);

}  // namespace subspace
