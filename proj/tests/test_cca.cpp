#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "subspace/cca.hpp"

using namespace subspace;

TEST_CASE("symmetric square roots invert each other") {
  Rng rng(1);
  Matrix g(5, 5);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) g(i, j) = rng.gaussian();
  Matrix s = g * g.transpose() + 0.5 * Matrix::Identity(5, 5);
  Matrix root = symmetric_sqrt(s);
  Matrix iroot = symmetric_inv_sqrt(s);
  CHECK((root * root - s).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((root * iroot - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("inverse square root rejects singular input") {
  Matrix s = Matrix::Zero(3, 3);
  s(0, 0) = 1.0;
  s(1, 1) = 1.0;
  CHECK_THROWS_AS(symmetric_inv_sqrt(s), std::invalid_argument);
}

TEST_CASE("model construction invariants") {
  Rng rng(2);
  CcaModel model = build_cca_model(30, 10, 2, 0.8, rng);
  // covariance factors have eigenvalues in [0.5, 1.5]
  Eigen::SelfAdjointEigenSolver<Matrix> ex(model.sigma_x);
  CHECK(ex.eigenvalues().minCoeff() >= 0.5 - 1e-9);
  CHECK(ex.eigenvalues().maxCoeff() <= 1.5 + 1e-9);
  // the whitened cross matrix has exactly r singular values equal to t
  Eigen::JacobiSVD<Matrix> sv(model.s_pop);
  CHECK(sv.singularValues()(0) == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(sv.singularValues()(1) == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(sv.singularValues()(2) <= 1e-9);
  // population directions are covariance-orthonormal
  Matrix gram = model.a_pop.transpose() * model.sigma_x * model.a_pop;
  CHECK((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-8);
  // joint covariance is positive definite
  Matrix joint(40, 40);
  joint.topLeftCorner(30, 30) = model.sigma_x;
  joint.topRightCorner(30, 10) = model.sigma_xy;
  joint.bottomLeftCorner(10, 30) = model.sigma_xy.transpose();
  joint.bottomRightCorner(10, 10) = model.sigma_y;
  Eigen::SelfAdjointEigenSolver<Matrix> ej(joint, Eigen::EigenvaluesOnly);
  CHECK(ej.eigenvalues().minCoeff() > 1e-10);
}

TEST_CASE("model construction rejects bad parameters") {
  Rng rng(3);
  CHECK_THROWS_AS(build_cca_model(5, 4, 5, 0.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(build_cca_model(5, 4, 2, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(build_cca_model(5, 4, 2, 0.0, rng), std::invalid_argument);
}

TEST_CASE("sampled data matches the population covariance") {
  Rng rng(4);
  CcaModel model = build_cca_model(6, 4, 2, 0.7, rng);
  CcaSample sample = sample_cca(model, 100000, rng);
  int n = 100000;
  Matrix sx = sample.x_data * sample.x_data.transpose() / n;
  Matrix sxy = sample.x_data * sample.y_data.transpose() / n;
  CHECK((sx - model.sigma_x).cwiseAbs().maxCoeff() <= 0.05);
  CHECK((sxy - model.sigma_xy).cwiseAbs().maxCoeff() <= 0.05);
}

TEST_CASE("sampling is deterministic per seed") {
  Rng rng_model(5);
  CcaModel model = build_cca_model(5, 4, 1, 0.6, rng_model);
  Rng a(99), b(99);
  CcaSample sa = sample_cca(model, 20, a);
  CcaSample sb = sample_cca(model, 20, b);
  CHECK((sa.x_data.array() == sb.x_data.array()).all());
  CHECK((sa.y_data.array() == sb.y_data.array()).all());
}

TEST_CASE("sample size guard") {
  Rng rng(6);
  CcaModel model = build_cca_model(5, 4, 1, 0.6, rng);
  CHECK_THROWS_AS(sample_cca(model, 9, rng), std::invalid_argument);
}

TEST_CASE("noiseless surrogate recovers the population directions") {
  // data whose sample covariance equals the population blocks exactly:
  // transplant the joint factor so X D X^T / n = Sigma.
  Rng rng(7);
  CcaModel model = build_cca_model(8, 5, 2, 0.8, rng);
  int p = 13, n = 40;
  Matrix joint(p, p);
  joint.topLeftCorner(8, 8) = model.sigma_x;
  joint.topRightCorner(8, 5) = model.sigma_xy;
  joint.bottomLeftCorner(5, 8) = model.sigma_xy.transpose();
  joint.bottomRightCorner(5, 5) = model.sigma_y;
  Eigen::LLT<Matrix> llt(joint);
  Matrix lfac = llt.matrixL();
  // build data with exactly identity empirical second moment
  Matrix q = haar_orthonormal(n, p, rng).columns();  // n x p
  Matrix data = lfac * std::sqrt(static_cast<double>(n)) * q.transpose();
  CcaEstimate est = estimate_cca(data.topRows(8), data.bottomRows(5), 2);
  CcaLosses losses = cca_losses(model, est);
  CHECK(losses.u_sp <= 1e-8);
  CHECK(losses.v_sp <= 1e-8);
  CHECK(losses.l_f_procrustes <= 1e-8);
  // estimated directions are covariance-orthonormal
  Matrix sx = data.topRows(8) * data.topRows(8).transpose() / n;
  Matrix gram = est.a_hat.transpose() * sx * est.a_hat;
  CHECK((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("estimator rejects singular sample covariance") {
  Matrix x = Matrix::Zero(3, 10);  // rank-deficient X block
  Matrix y = Matrix::Identity(2, 10);
  CHECK_THROWS_WITH_AS(estimate_cca(x, y, 1),
                       "estimate_cca: singular sample covariance",
                       std::invalid_argument);
}

TEST_CASE("study means are in range and thread invariant") {
  CcaStudyResult a = cca_study(8, 5, 2, 60, 0.8, 30, 11, 1);
  CcaStudyResult b = cca_study(8, 5, 2, 60, 0.8, 30, 11, 3);
  CHECK(a.u_sp == b.u_sp);
  CHECK(a.v_fro == b.v_fro);
  CHECK(a.lf_se == b.lf_se);
  // squared aligned distances obey d^2 <= 2 sin^2 <= 2
  CHECK(a.u_sp > 0.0);
  CHECK(a.u_sp <= 2.0);
  CHECK(a.v_sp <= 2.0);
  // u side is harder than the v side when p1 > p2
  CHECK(a.u_sp > a.v_sp);
}
