#pragma once

#include "subspace/linalg.hpp"

namespace subspace {

// Relative singular-value gap below which the target rank of X is treated
// as unidentifiable.
inline constexpr double kGapGuard = 1e-12;

// The perturbation expressed in the coordinates of the leading-r singular
// bases of X and their complements.
struct BlockDecomposition {
  int r;
  Matrix z11, z12, z21, z22;  // r x r, r x (p2-r), (p1-r) x r, (p1-r) x (p2-r)
  double alpha;               // sigma_min(U^T (X+Z) V)
  double beta;                // ||U_perp^T (X+Z) V_perp||
  double z12_sp, z21_sp;      // spectral norms of the coupling blocks
  double z12_fro, z21_fro;
  OrthonormalBasis u, v, u_perp, v_perp;
};

BlockDecomposition block_decompose(const Matrix& x, const Matrix& z, int r);

struct BoundReport {
  double v_spectral;   // capped at 1
  double v_frobenius;  // capped at sqrt(r)
  double u_spectral;
  double u_frobenius;
  bool applicable;
  double gap;  // alpha^2 - beta^2 - min(z12^2, z21^2); Wedin stores delta here
};

// Unilateral bounds from a block decomposition. Inapplicability is reported,
// not thrown: bounds fall back to the trivial caps.
BoundReport unilateral_bounds(const BlockDecomposition& d);

// Scalar form, used by the adversarial constructions where the block norms
// are known exactly.
BoundReport unilateral_bounds_from_scalars(int r, double alpha, double beta,
                                           double z12_sp, double z21_sp,
                                           double z12_fro, double z21_fro);

// Classical uniform two-sided bound for comparison; u- and v-fields are
// equal by construction.
BoundReport wedin_bounds(const Matrix& x, const Matrix& z, int r);

struct ProjectionBound {
  double spectral;
  double frobenius;
};

// Bound on sin-Theta between the leading right subspace of a and an
// arbitrary candidate w. Requires sigma_r(AW) > sigma_{r+1}(A).
ProjectionBound projection_bound(const Matrix& a, const OrthonormalBasis& w);

struct SegmentBounds {
  double u_spectral;
  double v_spectral;
};

// One-sided bounds for the singular vectors i..j (1-based, inclusive).
// Throws when the applicability condition fails at k = i-1 or k = j.
SegmentBounds segment_bounds(const Matrix& x, const Matrix& z, int i, int j);

}  // namespace subspace
