#pragma once

#include <cstdint>

#include "subspace/linalg.hpp"

namespace subspace {

// Symmetric PSD square root via eigendecomposition.
Matrix symmetric_sqrt(const Matrix& s);
// Inverse square root; throws when an eigenvalue falls below the 1e-12 floor.
Matrix symmetric_inv_sqrt(const Matrix& s);

struct CcaModel {
  int p1, p2, r;
  double t;  // common canonical correlation, in (0, 1)
  Matrix sigma_x, sigma_y, sigma_xy;
  Matrix sigma_x_sqrt, sigma_y_sqrt;
  Matrix sigma_x_isqrt, sigma_y_isqrt;
  Matrix s_pop;  // Sigma_X^{-1/2} Sigma_XY Sigma_Y^{-1/2}
  OrthonormalBasis u_s, v_s;  // leading-r singular bases of s_pop
  Matrix a_pop, b_pop;        // population direction matrices
};

CcaModel build_cca_model(int p1, int p2, int r, double t, Rng& rng);

struct CcaSample {
  Matrix x_data;  // p1 x n
  Matrix y_data;  // p2 x n
};

// n i.i.d. joint Gaussian pairs; requires n > p1 + p2.
CcaSample sample_cca(const CcaModel& model, int n, Rng& rng);

struct CcaEstimate {
  Matrix a_hat, b_hat;        // p1 x r, p2 x r
  OrthonormalBasis u_hat, v_hat;
};

CcaEstimate estimate_cca(const Matrix& x_data, const Matrix& y_data, int r);

struct CcaLosses {
  // Squared rotation-aligned distances between u_hat and u_s: the Frobenius
  // and spectral norms of u_hat O - u_s at the Frobenius-Procrustes-optimal
  // rotation O (the exact spectral min over O has no closed form). Both are
  // within constant factors of the squared sin-Theta distances.
  double u_sp, u_fro;
  double v_sp, v_fro;
  double l_f_procrustes;  // min_O ||Sigma_X^{1/2}(A_hat O - A)||_F^2
};

CcaLosses cca_losses(const CcaModel& model, const CcaEstimate& est);

struct CcaStudyResult {
  double u_sp, u_fro, v_sp, v_fro, lf;
  double u_sp_se, u_fro_se, v_sp_se, v_fro_se, lf_se;
};

// Fresh model and fresh data each rep.
CcaStudyResult cca_study(int p1, int p2, int r, int n, double t, int reps,
                         std::uint64_t master_seed, int threads = 1);

}  // namespace subspace
