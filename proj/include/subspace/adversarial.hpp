#pragma once

#include <cstdint>

#include "subspace/linalg.hpp"

namespace subspace {

struct TwoByTwoRightSingular {
  double v12_abs;  // |(1,2) entry| of the right singular matrix
  double sigma1;
  double sigma2;
};

// Closed-form right singular matrix of [[a, b], [c, d]] with a,b,c,d >= 0,
// via the eigendecomposition of the 2x2 Gram matrix.
TwoByTwoRightSingular two_by_two_right_singular(double a, double b, double c,
                                                double d);

// An (X, Z) pair built from scaled identity blocks and conjugated by
// Haar-random bases. Nearly attains the unilateral upper bounds.
struct WorstCasePair {
  Matrix x;
  Matrix z;
  int r;
  double alpha, beta, z12, z21;
  OrthonormalBasis u_true;  // left singular subspace of x
  OrthonormalBasis v_true;  // right singular subspace of x
};

WorstCasePair worst_case_pair(int p1, int p2, int r, double alpha, double beta,
                              double z12, double z21, Rng& rng);

// Two rank-r pairs with bit-identical X + Z but different right subspaces.
struct ConfusablePair {
  WorstCasePair pair1;
  WorstCasePair pair2;
};

ConfusablePair confusable_pairs(int p1, int p2, int r, double alpha,
                                double beta, double z12);

struct SharpnessResult {
  double actual_v;  // realized ||sin Theta(V, V_hat)||
  double bound_v;   // unilateral spectral bound from the pair's scalars
  double ratio;     // actual / bound; 0/0 reported as 1
};

// Requires the strict condition alpha^2 > beta^2 + z12^2 + z21^2.
SharpnessResult sharpness_check(const WorstCasePair& pair);

struct SharpnessStudy {
  double mean_ratio;
  double min_ratio;
  double max_ratio;
  long count;
};

// Monte Carlo over random applicable (alpha, beta, z12, z21) scalars.
SharpnessStudy sharpness_study(int p1, int p2, int r, int count,
                               std::uint64_t master_seed, int threads = 1);

}  // namespace subspace
