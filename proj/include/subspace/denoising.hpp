#pragma once

#include <cstdint>

#include "subspace/linalg.hpp"

namespace subspace {

enum class NoiseKind { gaussian, rademacher };

// Rank-r signal with singular-value floor t, observed under standardized
// i.i.d. noise.
struct DenoisingModel {
  int p1, p2, r;
  double t;
  NoiseKind noise_kind;
  Matrix x;  // one representative signal draw, t * U V^T
};

DenoisingModel make_denoising_model(int p1, int p2, int r, double t,
                                    NoiseKind noise_kind, Rng& rng);

struct SpectralDenoiseResult {
  Matrix x_hat;             // best rank-r approximation of y
  OrthonormalBasis u_hat;
  OrthonormalBasis v_hat;
};

SpectralDenoiseResult spectral_denoise(const Matrix& y, int r);

// Soft singular-value thresholding: minimizes 0.5||Y-X||_F^2 + lambda ||X||_*.
Matrix svt(const Matrix& y, double lambda);

// Hard singular-value thresholding: minimizes 0.5||Y-X||_F^2 + lambda rank(X).
// Keeps sigma_i iff sigma_i^2 > 2 lambda; ties are dropped.
Matrix hsvt(const Matrix& y, double lambda);

// SVT at lambda* = sqrt(p1) + sqrt(p2) when t^2 >= c_threshold * (p1 + p2),
// otherwise the zero matrix.
Matrix adaptive_estimator(const Matrix& y, double t, double c_threshold);

struct DenoisingRisk {
  // Monte-Carlo means of squared sin-Theta losses.
  double u_sp, v_sp, u_fro, v_fro;
  double u_sp_se, v_sp_se, u_fro_se, v_fro_se;
  // Rate values with constants omitted.
  double theoretical_u, theoretical_v;
};

// Fresh Haar U, V and fresh noise each rep; per-rep seeds derived from
// master_seed, so the result is independent of the thread schedule.
DenoisingRisk denoising_risk(const DenoisingModel& model, int reps,
                             std::uint64_t master_seed, int threads = 1);

}  // namespace subspace
