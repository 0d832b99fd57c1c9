#include "subspace/adversarial.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subspace/parallel.hpp"
#include "subspace/perturbation.hpp"

namespace subspace {

namespace {

// Adjust z so that x + z == total bit-exactly, keeping z within a few ulps
// of its ideal value.
std::pair<double, double> exact_split(double total, double x_ideal,
                                      double z_ideal) {
  double x = x_ideal;
  double z = z_ideal;
  if (x + z == total) return {x, z};
  z = total - x;
  if (x + z == total) return {x, z};
  x = total - z;
  int guard = 0;
  while (x + z != total && guard++ < 16) {
    double s = x + z;
    z = std::nextafter(z, s < total ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity());
  }
  if (x + z != total) {
    throw std::runtime_error("confusable_pairs: exact split failed");
  }
  return {x, z};
}

void check_rank_budget(int p1, int p2, int r) {
  if (r < 1 || 2 * r > std::min(p1, p2)) {
    throw std::invalid_argument("rank too large: need r <= min(p1, p2) / 2");
  }
}

}  // namespace

TwoByTwoRightSingular two_by_two_right_singular(double a, double b, double c,
                                                double d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw std::invalid_argument("two_by_two_right_singular: entries must be >= 0");
  }
  // Gram matrix of [[a, b], [c, d]].
  double g11 = a * a + c * c;
  double g22 = b * b + d * d;
  double g12 = a * b + c * d;
  double mean = 0.5 * (g11 + g22);
  double disc = std::hypot(0.5 * (g11 - g22), g12);
  double lam1 = mean + disc;
  double sigma1 = std::sqrt(std::max(0.0, lam1));
  // mean - disc cancels badly near rank deficiency; |det| / sigma1 is exact
  // there and algebraically identical.
  double sigma2 = sigma1 > 0.0 ? std::abs(a * d - b * c) / sigma1 : 0.0;

  double v12_abs;
  if (disc <= 0.0) {
    v12_abs = 0.0;  // isotropic Gram: any basis works
  } else if (std::abs(g12) <= disc * 1e-15) {
    v12_abs = (g11 >= g22) ? 0.0 : 1.0;
  } else {
    // Top eigenvector (v11, v21); |v12| = |v21| by orthogonality.
    double e1 = g12;
    double e2 = lam1 - g11;
    double nrm = std::hypot(e1, e2);
    v12_abs = std::abs(e2) / nrm;
  }
  return {v12_abs, sigma1, sigma2};
}

WorstCasePair worst_case_pair(int p1, int p2, int r, double alpha, double beta,
                              double z12, double z21, Rng& rng) {
  check_rank_budget(p1, p2, r);
  if (!(alpha > beta) || beta < 0 || z12 < 0 || z21 < 0) {
    throw std::invalid_argument("worst_case_pair: need alpha > beta >= 0 and z12, z21 >= 0");
  }
  OrthonormalBasis left = haar_orthonormal(p1, 2 * r, rng);
  OrthonormalBasis right = haar_orthonormal(p2, 2 * r, rng);
  Matrix u = left.columns().leftCols(r);
  Matrix u1 = left.columns().rightCols(r);
  Matrix v = right.columns().leftCols(r);
  Matrix v1 = right.columns().rightCols(r);

  Matrix x = alpha * u * v.transpose() + beta * u1 * v1.transpose();
  Matrix z = z12 * u * v1.transpose() + z21 * u1 * v.transpose();
  return WorstCasePair{std::move(x), std::move(z), r,          alpha,
                       beta,         z12,          z21,
                       OrthonormalBasis(std::move(u)),
                       OrthonormalBasis(std::move(v))};
}

ConfusablePair confusable_pairs(int p1, int p2, int r, double alpha,
                                double beta, double z12) {
  check_rank_budget(p1, p2, r);
  if (alpha < 0 || beta < 0 || z12 < 0) {
    throw std::invalid_argument("confusable_pairs: scalars must be >= 0");
  }

  // SVD of the 2x2 block [[alpha, z12], [0, beta]].
  Matrix b(2, 2);
  b << alpha, z12, 0.0, beta;
  Eigen::JacobiSVD<Matrix> sv(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& uu = sv.matrixU();
  const Matrix& vv = sv.matrixV();
  double s1 = sv.singularValues()(0);
  double s2 = sv.singularValues()(1);

  // Shared observation in block scalars: [[alpha, z12], [0, beta]].
  double xh[2][2] = {{alpha, z12}, {0.0, beta}};
  double x1s[2][2];
  double z1s[2][2];
  for (int a = 0; a < 2; ++a) {
    for (int bb = 0; bb < 2; ++bb) {
      double ideal_x = s1 * uu(a, 0) * vv(bb, 0);
      double ideal_z = s2 * uu(a, 1) * vv(bb, 1);
      std::tie(x1s[a][bb], z1s[a][bb]) = exact_split(xh[a][bb], ideal_x, ideal_z);
    }
  }

  Matrix x1 = Matrix::Zero(p1, p2);
  Matrix z1 = Matrix::Zero(p1, p2);
  Matrix x2 = Matrix::Zero(p1, p2);
  Matrix z2 = Matrix::Zero(p1, p2);
  for (int k = 0; k < r; ++k) {
    x1(k, k) = x1s[0][0];
    x1(k, r + k) = x1s[0][1];
    x1(r + k, k) = x1s[1][0];
    x1(r + k, r + k) = x1s[1][1];
    z1(k, k) = z1s[0][0];
    z1(k, r + k) = z1s[0][1];
    z1(r + k, k) = z1s[1][0];
    z1(r + k, r + k) = z1s[1][1];
    x2(k, k) = alpha;
    z2(k, r + k) = z12;
    z2(r + k, r + k) = beta;
  }

  Matrix u1b = Matrix::Zero(p1, r);
  Matrix v1b = Matrix::Zero(p2, r);
  Matrix u2b = Matrix::Zero(p1, r);
  Matrix v2b = Matrix::Zero(p2, r);
  for (int k = 0; k < r; ++k) {
    u1b(k, k) = uu(0, 0);
    u1b(r + k, k) = uu(1, 0);
    v1b(k, k) = vv(0, 0);
    v1b(r + k, k) = vv(1, 0);
    u2b(k, k) = 1.0;
    v2b(k, k) = 1.0;
  }

  WorstCasePair pair1{std::move(x1), std::move(z1), r, s1, s2, 0.0, 0.0,
                      OrthonormalBasis(std::move(u1b)),
                      OrthonormalBasis(std::move(v1b))};
  WorstCasePair pair2{std::move(x2), std::move(z2), r, alpha, beta, z12, 0.0,
                      OrthonormalBasis(std::move(u2b)),
                      OrthonormalBasis(std::move(v2b))};
  return ConfusablePair{std::move(pair1), std::move(pair2)};
}

SharpnessResult sharpness_check(const WorstCasePair& pair) {
  double lhs = pair.alpha * pair.alpha;
  double rhs = pair.beta * pair.beta + pair.z12 * pair.z12 + pair.z21 * pair.z21;
  if (lhs <= rhs) {
    throw std::invalid_argument(
        "sharpness_check: pair violates alpha^2 > beta^2 + z12^2 + z21^2");
  }
  double sr = std::sqrt(static_cast<double>(pair.r));
  BoundReport rep = unilateral_bounds_from_scalars(
      pair.r, pair.alpha, pair.beta, pair.z12, pair.z21, sr * pair.z12,
      sr * pair.z21);
  double bound = rep.v_spectral;

  Matrix xhat = pair.x + pair.z;
  Eigen::BDCSVD<Matrix> sv(xhat, Eigen::ComputeThinV);
  OrthonormalBasis v_hat(sv.matrixV().leftCols(pair.r));
  double actual = sin_theta(pair.v_true, v_hat).spectral;

  double ratio;
  if (bound == 0.0) {
    ratio = 1.0;  // zero-perturbation case is vacuously sharp
  } else {
    ratio = actual / bound;
  }
  return {actual, bound, ratio};
}

SharpnessStudy sharpness_study(int p1, int p2, int r, int count,
                               std::uint64_t master_seed, int threads) {
  if (count < 1) {
    throw std::invalid_argument("sharpness_study: count must be >= 1");
  }
  std::vector<double> ratios(static_cast<size_t>(count));
  parallel_for(count, threads, [&](long trial) {
    Rng rng(derive_seed(master_seed, 0, static_cast<std::uint64_t>(trial)));
    double alpha = 2.0 + 2.0 * rng.uniform();
    double beta = 0.5 * alpha * rng.uniform();
    double budget = std::sqrt(alpha * alpha - beta * beta);
    double s = 0.9 * budget * std::sqrt(0.05 + 0.95 * rng.uniform());
    double phi = 0.5 * M_PI * rng.uniform();
    double z12 = s * std::cos(phi);
    double z21 = s * std::sin(phi);
    WorstCasePair pair = worst_case_pair(p1, p2, r, alpha, beta, z12, z21, rng);
    ratios[static_cast<size_t>(trial)] = sharpness_check(pair).ratio;
  });
  double sum = 0.0, comp = 0.0;
  double mn = ratios[0], mx = ratios[0];
  for (double v : ratios) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return {sum / count, mn, mx, count};
}

}  // namespace subspace
