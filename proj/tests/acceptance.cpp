// End-to-end acceptance gate: one pass/fail line per criterion.
//
// Runs the full benchmark reproductions at their pinned seeds and rep counts
// plus the analytic property suites, and exits nonzero if any criterion
// fails. Expect a total runtime around half an hour on one core; the bulk is
// the 1000-rep canonical-correlation table.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "subspace/adversarial.hpp"
#include "subspace/cca.hpp"
#include "subspace/denoising.hpp"
#include "subspace/linalg.hpp"
#include "subspace/perturbation.hpp"
#include "subspace/simulation.hpp"

using namespace subspace;

namespace {

int g_failures = 0;
int g_index = 0;

void report(bool ok, const std::string& what, const std::string& detail) {
  ++g_index;
  if (!ok) ++g_failures;
  std::printf("%s %2d/10 %s (%s)\n", ok ? "PASS" : "FAIL", g_index,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
}

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  return m;
}

// --- 1. denoising table ----------------------------------------------------

void criterion_table1() {
  // reference row means: u_sp, v_sp, u_fro, v_fro
  const double ref[8][4] = {
      {0.3512, 0.0669, 0.6252, 0.0934}, {0.1120, 0.0139, 0.1984, 0.0196},
      {0.2711, 0.0930, 0.9993, 0.2347}, {0.0770, 0.0195, 0.2835, 0.0508},
      {0.5838, 0.0699, 2.6693, 0.1786}, {0.1060, 0.0036, 0.9007, 0.0109},
      {0.3456, 0.0797, 2.9430, 0.4863}, {0.1289, 0.0205, 4.3614, 0.2731}};
  SummaryTable t = reproduce_table(1, 1000, 1);
  bool ok = t.rows.size() == 8;
  double worst = 0.0;
  for (size_t row = 0; ok && row < t.rows.size(); ++row) {
    for (int col = 0; col < 4; ++col) {
      double mean = t.rows[row].means[col];
      double se = t.rows[row].ses[col];
      double target = ref[row][col];
      double band = std::max(3.0 * se, 0.10 * target);
      worst = std::max(worst, std::abs(mean - target) / band);
      ok = ok && std::abs(mean - target) <= band;
    }
  }
  std::ostringstream detail;
  detail << "1000 reps, seed 1, worst deviation " << worst
         << " of the max(3 SE, 10%) band";
  report(ok, "denoising table: all 32 cells within max(3 SE, 10%)",
         detail.str());
}

// --- 2. clustering table ---------------------------------------------------

void criterion_table2() {
  // reference means for the rho = 1/2 rows, n = 5, 10, 20, 50, 100, 200
  struct RefRow {
    int p;
    double t;
    double vals[6];
  };
  const RefRow ref[4] = {
      {100, 1, {0.2100, 0.1485, 0.0690, 0.0494, 0.0440, 0.0333}},
      {100, 3, {0.0019, 0.0005, 0.0000, 0.0000, 0.0000, 0.0000}},
      {1000, 1, {0.3260, 0.3510, 0.3594, 0.2855, 0.2691, 0.1364}},
      {1000, 3, {0.1370, 0.0485, 0.0066, 0.0019, 0.0013, 0.0003}}};
  SummaryTable t = reproduce_table(2, 1000, 1);
  bool ok = t.rows.size() == 48;
  double worst = 0.0;
  for (size_t i = 0; ok && i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    int p = static_cast<int>(row.params[0]);
    double tt = row.params[1];
    double rho = row.params[2];
    int n = static_cast<int>(row.params[3]);
    if (rho != 0.5) continue;
    const int n_index = n == 5 ? 0 : n == 10 ? 1 : n == 20 ? 2
                       : n == 50 ? 3 : n == 100 ? 4 : 5;
    for (const RefRow& r : ref) {
      if (r.p != p || r.t != tt) continue;
      double band = std::max(3.0 * row.ses[0], 0.02);
      double diff = std::abs(row.means[0] - r.vals[n_index]);
      worst = std::max(worst, diff / band);
      ok = ok && diff <= band;
    }
  }
  std::ostringstream detail;
  detail << "1000 reps, seed 1, worst deviation " << worst
         << " of the max(3 SE, 0.02) band";
  report(ok, "clustering table: all rho=1/2 cells within max(3 SE, 0.02)",
         detail.str());
}

// --- 3. canonical-correlation table ----------------------------------------

void criterion_table3() {
  const double ref_row1[4] = {0.3194, 0.6609, 0.1571, 0.2530};
  SummaryTable t = reproduce_table(3, 1000, 1, 1, 2);
  bool ok = t.rows.size() == 8;
  // stat columns: u_sp, u_fro, v_sp, v_fro, lf_procrustes
  for (const auto& row : t.rows) {
    ok = ok && row.means[0] > row.means[2];  // u_sp > v_sp
    ok = ok && row.means[1] > row.means[3];  // u_fro > v_fro
  }
  double worst = 0.0;
  if (ok) {
    for (int col = 0; col < 4; ++col) {
      double rel = std::abs(t.rows[0].means[col] - ref_row1[col]) /
                   ref_row1[col];
      worst = std::max(worst, rel);
      ok = ok && rel <= 0.25;
    }
  }
  std::ostringstream detail;
  detail << "rank 2, 1000 reps, seed 1, worst row-1 relative deviation "
         << worst;
  report(ok,
         "cca table: left losses exceed right losses in every row; "
         "row 1 within 25%",
         detail.str());
}

// --- 4. sharpness of the worst-case construction ----------------------------

void criterion_sharpness() {
  SharpnessStudy study = sharpness_study(12, 10, 2, 500, 1, 1);
  bool ok = study.count == 500 &&
            study.min_ratio >= 1.0 / std::sqrt(10.0) - 1e-9 &&
            study.max_ratio <= 1.0 + 1e-9;
  std::ostringstream detail;
  detail << "500 pairs, ratio range [" << study.min_ratio << ", "
         << study.max_ratio << "]";
  report(ok, "worst-case pairs: loss/bound in [1/sqrt(10), 1]", detail.str());
}

// --- 5. bounds dominate realized losses -------------------------------------

void criterion_dominance() {
  Rng rng(2);
  const int p1 = 12, p2 = 8, r = 2;
  int applicable = 0, violations = 0, wedin_violations = 0;
  for (int inst = 0; inst < 2000; ++inst) {
    Matrix x = 4.0 * gaussian_matrix(p1, p2, rng);
    Matrix z = 0.2 * gaussian_matrix(p1, p2, rng);
    BlockDecomposition d = block_decompose(x, z, r);
    BoundReport b = unilateral_bounds(d);
    if (!b.applicable) continue;
    ++applicable;
    SvdFactorization f = svd(x + z);
    OrthonormalBasis u_hat(f.u.columns().leftCols(r));
    OrthonormalBasis v_hat(f.v.columns().leftCols(r));
    SinThetaDistances du = sin_theta(d.u, u_hat);
    SinThetaDistances dv = sin_theta(d.v, v_hat);
    if (dv.spectral > b.v_spectral + 1e-9 ||
        dv.frobenius > b.v_frobenius + 1e-9 ||
        du.spectral > b.u_spectral + 1e-9 ||
        du.frobenius > b.u_frobenius + 1e-9) {
      ++violations;
    }
    BoundReport w = wedin_bounds(x, z, r);
    if (w.applicable && (dv.spectral > w.v_spectral + 1e-9 ||
                         du.spectral > w.u_spectral + 1e-9)) {
      ++wedin_violations;
    }
  }
  bool ok = applicable >= 1900 && violations == 0 && wedin_violations == 0;
  std::ostringstream detail;
  detail << applicable << "/2000 applicable, " << violations
         << " unilateral and " << wedin_violations << " two-sided violations";
  report(ok, "random instances: realized losses never exceed the bounds",
         detail.str());
}

// --- 6. metric identities and sandwiches ------------------------------------

void criterion_metric_suite() {
  Rng rng(3);
  const int p = 10, r = 3;
  bool ok = true;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    OrthonormalBasis a = haar_orthonormal(p, r, rng);
    OrthonormalBasis b = haar_orthonormal(p, r, rng);
    OrthonormalBasis c = haar_orthonormal(p, r, rng);
    SinThetaDistances ab = sin_theta(a, b), bc = sin_theta(b, c),
                      ac = sin_theta(a, c);
    // triangle inequality in both norms
    ok = ok && ac.spectral <= ab.spectral + bc.spectral + 1e-9;
    ok = ok && ac.frobenius <= ab.frobenius + bc.frobenius + 1e-9;
    // equivalent expressions
    Matrix overlap = b.columns().transpose() * a.columns();
    Eigen::JacobiSVD<Matrix> sv(overlap);
    double smin = sv.singularValues()(r - 1);
    ok = ok && std::abs(ab.spectral -
                        std::sqrt(std::max(0.0, 1.0 - smin * smin))) <= 1e-9;
    ok = ok && std::abs(ab.frobenius -
                        std::sqrt(std::max(0.0, r - overlap.squaredNorm()))) <=
                   1e-9;
    // metric sandwiches against the rotation-aligned and projector metrics
    SubspaceMetrics m = equivalent_metrics(a, b);
    ok = ok && m.d_sp >= ab.spectral - 1e-9;
    ok = ok && m.d_sp <= std::sqrt(2.0) * ab.spectral + 1e-9;
    ok = ok && m.d_f >= ab.frobenius - 1e-9;
    ok = ok && m.d_f <= std::sqrt(2.0) * ab.frobenius + 1e-9;
    ok = ok && m.proj_sp >= ab.spectral - 1e-9;
    ok = ok && m.proj_sp <= 2.0 * ab.spectral + 1e-9;
    ok = ok && std::abs(m.proj_f - std::sqrt(2.0) * ab.frobenius) <= 1e-9;
  }
  report(ok, "metric suite: triangle inequality, identities and sandwiches",
         "1000 random triples in O(10, 3), tolerance 1e-9");
}

// --- 7. closed-form 2x2 right singular matrix -------------------------------

void criterion_two_by_two() {
  int mismatches = 0, floor_failures = 0;
  for (int ia = 0; ia < 10; ++ia) {
    for (int ib = 0; ib < 10; ++ib) {
      for (int ic = 0; ic < 10; ++ic) {
        for (int id = 0; id < 10; ++id) {
          double a = 0.35 * ia, b = 0.35 * ib, c = 0.35 * ic, d = 0.35 * id;
          TwoByTwoRightSingular r = two_by_two_right_singular(a, b, c, d);
          Matrix m(2, 2);
          m << a, b, c, d;
          Eigen::JacobiSVD<Matrix> sv(m, Eigen::ComputeFullV);
          if (std::abs(r.sigma1 - sv.singularValues()(0)) > 1e-10 ||
              std::abs(r.sigma2 - sv.singularValues()(1)) > 1e-10) {
            ++mismatches;
          }
          // v12 is only well defined away from equal singular values
          if (sv.singularValues()(0) - sv.singularValues()(1) >= 1e-8 &&
              std::abs(r.v12_abs - std::abs(sv.matrixV()(0, 1))) > 1e-10) {
            ++mismatches;
          }
          // rotation floor: upper-triangular case with a distinguishable
          // second singular vector
          if (c == 0.0 && a * a <= b * b + d * d &&
              r.sigma1 - r.sigma2 >= 1e-8 &&
              r.v12_abs < 1.0 / std::sqrt(2.0) - 1e-12) {
            ++floor_failures;
          }
        }
      }
    }
  }
  std::ostringstream detail;
  detail << mismatches << " mismatches, " << floor_failures
         << " rotation-floor failures on 10^4 grid points";
  report(mismatches == 0 && floor_failures == 0,
         "2x2 closed form matches numerical svd at 1e-10", detail.str());
}

// --- 8. asymmetric recovery -------------------------------------------------

void criterion_asymmetric() {
  const int p1 = 1000, p2 = 20, r = 2, reps = 200;
  const double t = 26.0;  // between 2 (p1 p2)^{1/4} and 0.9 sqrt(p1)
  Rng model_rng(4);
  DenoisingModel model =
      make_denoising_model(p1, p2, r, t, NoiseKind::gaussian, model_rng);
  DenoisingRisk risk = denoising_risk(model, reps, 5, 1);

  int zeroed = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(derive_seed(6, 0, static_cast<std::uint64_t>(rep)));
    OrthonormalBasis u = haar_orthonormal(p1, r, rng);
    OrthonormalBasis v = haar_orthonormal(p2, r, rng);
    Matrix y = t * u.columns() * v.columns().transpose() +
               gaussian_matrix(p1, p2, rng);
    if (adaptive_estimator(y, t, 1.0).cwiseAbs().maxCoeff() == 0.0) ++zeroed;
  }
  double zero_rate = static_cast<double>(zeroed) / reps;
  bool ok = risk.v_sp < 0.2 && risk.u_sp > 0.5 && zero_rate > 0.9;
  std::ostringstream detail;
  detail << "p1=1000 p2=20 t=26: v loss " << risk.v_sp << ", u loss "
         << risk.u_sp << ", zero rate " << zero_rate;
  report(ok,
         "asymmetric regime: right side recovered, left side lost, "
         "adaptive estimator zeroes",
         detail.str());
}

// --- 9. thresholding estimators solve their objectives ----------------------

void criterion_optimizers() {
  Rng rng(7);
  bool ok = true;
  for (double lambda : {0.25, 0.8, 2.0, 5.0}) {
    Matrix y = 2.0 * gaussian_matrix(5, 4, rng);

    Matrix soft = svt(y, lambda);
    Eigen::JacobiSVD<Matrix> soft_sv(soft);
    double soft_obj = 0.5 * (y - soft).squaredNorm() +
                      lambda * soft_sv.singularValues().sum();

    Matrix hard = hsvt(y, lambda);
    Eigen::JacobiSVD<Matrix> hard_sv(hard);
    int hard_rank = 0;
    for (int i = 0; i < 4; ++i)
      if (hard_sv.singularValues()(i) > 1e-10) ++hard_rank;
    double hard_obj =
        0.5 * (y - hard).squaredNorm() + lambda * hard_rank;
    if (hard_rank > 0) {
      ok = ok && (hard - spectral_denoise(y, hard_rank).x_hat)
                         .cwiseAbs()
                         .maxCoeff() <= 1e-9;
    }

    for (int k = 0; k < 200; ++k) {
      Matrix cand = k % 3 == 0 ? Matrix(soft + 0.1 * gaussian_matrix(5, 4, rng))
                   : k % 3 == 1
                       ? Matrix(spectral_denoise(y, 1 + k % 4).x_hat)
                       : Matrix(2.0 * gaussian_matrix(5, 4, rng));
      Eigen::JacobiSVD<Matrix> cs(cand);
      double cand_soft = 0.5 * (y - cand).squaredNorm() +
                         lambda * cs.singularValues().sum();
      int cand_rank = 0;
      for (int i = 0; i < 4; ++i)
        if (cs.singularValues()(i) > 1e-10) ++cand_rank;
      double cand_hard = 0.5 * (y - cand).squaredNorm() + lambda * cand_rank;
      ok = ok && soft_obj <= cand_soft + 1e-9;
      ok = ok && hard_obj <= cand_hard + 1e-9;
    }
  }
  report(ok, "svt/hsvt minimize their objectives against 200 candidates",
         "lambda grid {0.25, 0.8, 2, 5}, hsvt equals truncated svd");
}

// --- 10. determinism across thread counts -----------------------------------

void criterion_determinism() {
  bool ok = true;
  auto csv_of = [](const SummaryTable& t) {
    std::ostringstream out;
    write_table(t, TableFormat::csv, out);
    return out.str();
  };
  for (int id : {1, 2, 3}) {
    SummaryTable a = reproduce_table(id, 3, 11, 1);
    SummaryTable b = reproduce_table(id, 3, 11, 4);
    ok = ok && csv_of(a) == csv_of(b);
  }
  for (Study study : {Study::denoising, Study::clustering, Study::cca,
                      Study::sharpness}) {
    ExperimentConfig config;
    config.study = study;
    config.reps = 16;
    config.master_seed = 12;
    config.parameters = {{"p", 30.0},  {"p1", 30.0}, {"p2", 10.0},
                         {"r", 2.0},   {"t", study == Study::cca ? 0.7 : 5.0},
                         {"rho", 0.5}, {"n", 50.0}};
    ok = ok && csv_of(run_experiment(config, 1)) ==
                   csv_of(run_experiment(config, 4));
  }
  report(ok, "bit-identical csv output for 1 and 4 worker threads",
         "all three tables and all four study kinds");
}

}  // namespace

int main() {
  criterion_table1();
  criterion_table2();
  criterion_table3();
  criterion_sharpness();
  criterion_dominance();
  criterion_metric_suite();
  criterion_two_by_two();
  criterion_asymmetric();
  criterion_optimizers();
  criterion_determinism();
  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
