// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned in code next to the check it gates.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cnb/bounds.hpp"
#include "cnb/campaign.hpp"
#include "cnb/ensemble.hpp"
#include "cnb/extremal.hpp"
#include "cnb/matrix.hpp"
#include "cnb/operators.hpp"
#include "cnb/reports.hpp"
#include "cnb/spectral.hpp"

using namespace cnb;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- 1. the 2||X||²||Y||² inequality on gaussian pairs ----
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t violations = 0, trials = 0;
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const EnsembleSpec xs{n, EnsembleKind::kGaussian, 100000, 0xB100u + static_cast<unsigned>(n)};
    const EnsembleSpec ys{n, EnsembleKind::kGaussian, 100000, 0xB200u + static_cast<unsigned>(n)};
    for (std::uint64_t t = 0; t < xs.count; ++t) {
      const Matrix x = draw(xs, t), y = draw(ys, t);
      const double lhs = frobenius_norm_sq(commutator(x, y));
      const double bound = bw_bound(x, y);
      if (lhs > bound * (1.0 + 1e-9)) ++violations;
      if (bound > 0.0) worst = std::max(worst, lhs / bound);
      ++trials;
    }
  }
  const double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%llu trials, %llu violations, max ratio %.6f, %.1f s (budget 60 s)",
                static_cast<unsigned long long>(trials),
                static_cast<unsigned long long>(violations), worst, elapsed);
  criterion(1, "Boettcher-Wenzel bound holds on 7x10^5 gaussian pairs",
            violations == 0 && elapsed <= 60.0, detail);
}

// ---- 2. closed-form block spectrum equals the dense eigensolve ----
void criterion_2() {
  std::uint64_t bad = 0, instances = 0;
  double worst_value = 0.0, worst_vector = 0.0;
  for (int n = 2; n <= 6; ++n) {
    Rng rng(0xB300u + static_cast<unsigned>(n));
    for (int t = 0; t < 200; ++t) {
      Rng sub = rng.substream(t);
      std::vector<double> lambda(n);
      for (double& v : lambda) v = 0.25 + std::abs(sub.gaussian());
      std::sort(lambda.rbegin(), lambda.rend());
      lambda = perturb_to_generic(lambda, 0xB300u + static_cast<unsigned>(t));

      SpectrumOptions opts;
      const SpectrumReport report = spectrum_report(lambda, opts);
      const double s1_sq = lambda[0] * lambda[0];
      const bool values_ok = report.eigenvalue_multiset_distance <= 1e-9 * s1_sq;
      const bool vectors_ok = report.max_eigenvector_residual <= 1e-10;
      const bool mult_ok = report.multiplicity.size() >= 2 &&
                           report.multiplicity[0].count == 1 && report.multiplicity[1].count == 2;
      if (!(values_ok && vectors_ok && mult_ok)) ++bad;
      worst_value = std::max(worst_value, report.eigenvalue_multiset_distance / s1_sq);
      worst_vector = std::max(worst_vector, report.max_eigenvector_residual);
      ++instances;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%llu spectra, %llu failures, worst value dist %.2e x s1^2, worst vector residual %.2e",
                static_cast<unsigned long long>(instances), static_cast<unsigned long long>(bad),
                worst_value, worst_vector);
  criterion(2, "closed-form block spectrum matches the Jacobi eigensolve", bad == 0, detail);
}

// ---- 3. the mixed-pair coefficient certification ----
void criterion_3() {
  const SpectrumReport report = spectrum_report(std::vector<double>{2.0, 1.0});
  const bool has = report.certification.has_value();
  const double derived = has ? report.certification->derived_residual : 1.0;
  const double mirrored = has ? report.certification->mirrored_residual : 0.0;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "derived coefficient residual %.2e (<= 1e-12), mirrored %.3f (>= 0.1)", derived,
                mirrored);
  criterion(3, "mixed-pair coefficient -s1/s2 certified against the mirrored form",
            has && derived <= 1e-12 && mirrored >= 0.1, detail);
}

// ---- 4. equality attainment at X = E12 ----
void criterion_4() {
  const Matrix x = Matrix::elementary(2, 1, 2);
  const EqualityCertificate cert = certify_equality_pair(x);
  const double lhs = frobenius_norm_sq(commutator(x, cert.certificate.y_star));
  const double x_norm = frobenius_norm(x);
  const double y_norm = frobenius_norm(cert.certificate.y_star);
  const bool pass = std::abs(cert.achieved_ratio - 1.0) <= 1e-10 && std::abs(lhs - 2.0) <= 1e-10 &&
                    std::abs(x_norm - 1.0) <= 1e-12 && std::abs(y_norm - 1.0) <= 1e-12;
  char detail[160];
  std::snprintf(detail, sizeof detail, "ratio %.12f, ||[X,Y*]||^2 = %.12f at ||X|| = ||Y*|| = 1",
                cert.achieved_ratio, lhs);
  criterion(4, "equality attained at X = E12", pass, detail);
}

// ---- 5. the change-of-variables identity ----
void criterion_5() {
  std::uint64_t bad = 0, trials = 0;
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const EnsembleSpec xs{n, EnsembleKind::kGaussian, 1500, 0xB500u + static_cast<unsigned>(n)};
    const EnsembleSpec ys{n, EnsembleKind::kGaussian, 1500, 0xB600u + static_cast<unsigned>(n)};
    for (std::uint64_t t = 0; t < xs.count; ++t) {
      const Matrix x = draw(xs, t), y = draw(ys, t);
      const ChangeOfVariables cov = change_of_variables(x, y);
      const double direct = frobenius_norm_sq(commutator(x, y));
      const double block = block_commutator_norm_sq(cov.lambda, cov.pair);
      const double budget = 1e-10 * std::max(1.0, frobenius_norm_sq(x) * frobenius_norm_sq(y));
      const double err = std::abs(direct - block);
      if (err > budget) ++bad;
      worst = std::max(worst, err / budget);
      ++trials;
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "%llu pairs, %llu breaches, worst error %.3f of budget",
                static_cast<unsigned long long>(trials), static_cast<unsigned long long>(bad),
                worst);
  criterion(5, "||Lambda B - C Lambda||^2 equals ||[X,Y]||^2 through the SVD", bad == 0, detail);
}

// ---- 6. the extremal bound chain ----
void criterion_6() {
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t bad = 0, trials = 0, dense_fallbacks = 0;
  double worst_ratio = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const EnsembleSpec xs{n, EnsembleKind::kGaussian, 10000, 0xB700u + static_cast<unsigned>(n)};
    for (std::uint64_t t = 0; t < xs.count; ++t) {
      const Matrix x = draw(xs, t);
      ExtremalResult ext;
      if (n <= 6) {
        ext = find_extremal(x, ExtremalMode::kDense);
      } else {
        try {
          ext = find_extremal(x, ExtremalMode::kMatrixFree);
        } catch (const ConvergenceError&) {
          ext = find_extremal(x, ExtremalMode::kDense);
          ++dense_fallbacks;
        }
      }
      const SvdResult s = svd(x);
      const double kyfan_unit = 2.0 * (s.sigma[0] * s.sigma[0] + s.sigma[1] * s.sigma[1]);
      const double bw_unit = 2.0 * frobenius_norm_sq(x);
      if (ext.lambda_max > kyfan_unit * (1.0 + 1e-8) || kyfan_unit > bw_unit * (1.0 + 1e-8)) ++bad;
      worst_ratio = std::max(worst_ratio, ext.lambda_max / kyfan_unit);
      ++trials;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%llu matrices, %llu chain breaches, max lambda/(2(s1^2+s2^2)) = %.9f, %.1f s",
                static_cast<unsigned long long>(trials), static_cast<unsigned long long>(bad),
                worst_ratio, seconds_since(start));
  criterion(6, "lambda_max <= 2(s1^2+s2^2) <= 2||X||^2", bad == 0, detail);
}

// ---- 7. diagonal and symmetric ensembles ----
void criterion_7() {
  std::uint64_t bad = 0;

  const EnsembleSpec dx{4, EnsembleKind::kDiagonal, 10000, 0xB801};
  const EnsembleSpec dy{4, EnsembleKind::kGaussian, 10000, 0xB802};
  for (std::uint64_t t = 0; t < dx.count; ++t) {
    const Matrix x = draw(dx, t), y = draw(dy, t);
    const double lhs = frobenius_norm_sq(commutator(x, y));
    if (lhs > infnorm_bound(x, y) * (1.0 + 1e-9)) ++bad;
    const PythagoreanSplit split = pythagorean_split_check(x, y);
    if (std::abs(split.total - (split.upper + split.lower)) > 1e-12 * split.total) ++bad;
  }

  const EnsembleSpec sx{4, EnsembleKind::kSymmetric, 10000, 0xB803};
  const EnsembleSpec sy{4, EnsembleKind::kGaussian, 10000, 0xB804};
  for (std::uint64_t t = 0; t < sx.count; ++t) {
    const Matrix x = draw(sx, t), y = draw(sy, t);
    const double lhs = frobenius_norm_sq(commutator(x, y));
    if (lhs > cdck_bound(x, y) * (1.0 + 1e-9)) ++bad;
    const auto [gl, gr] = cdck_vs_kyfan_gap(symmetric_eigen(x).values);
    if (gl > gr * (1.0 + 1e-9)) ++bad;
  }

  // The worked equality triples reproduce their flags exactly.
  const Matrix pm = Matrix::diagonal(std::vector<double>{1.0, -1.0});
  const Matrix flip(2, {0.0, 1.0, 1.0, 0.0});
  const BoundReport r1 = evaluate_all(Matrix::elementary(2, 1, 2), Matrix::elementary(2, 2, 1));
  const BoundReport r2 = evaluate_all(Matrix::diagonal(std::vector<double>{3.0, 1.0}),
                                      Matrix::elementary(2, 1, 2));
  const BoundReport r3 = evaluate_all(pm, flip);
  bool equalities_ok = r1.entries[0].equality && r1.entries[1].equality;              // bw, kyfan
  equalities_ok = equalities_ok && r2.entries[2].equality && !r2.entries[0].equality;  // cdck only
  equalities_ok = equalities_ok && r3.entries[2].equality && r3.entries[3].equality;  // cdck+infnorm
  if (!equalities_ok) ++bad;

  char detail[120];
  std::snprintf(detail, sizeof detail, "2x10^4 restricted trials + equality triples, %llu failures",
                static_cast<unsigned long long>(bad));
  criterion(7, "diagonal/symmetric bound suite with exact equality cases", bad == 0, detail);
}

// ---- 8. solver hygiene ----
void criterion_8() {
  std::uint64_t bad = 0;
  double worst_recon = 0.0, worst_orth = 0.0;

  std::uint64_t produced = 0;
  for (int n = 2; produced < 1000; n = (n % 16) + 2) {
    const EnsembleSpec xs{n, EnsembleKind::kGaussian, 1, 0xB900u + static_cast<unsigned>(produced)};
    const Matrix x = draw(xs, 0);
    const SvdResult s = svd(x);
    const Matrix rebuilt = s.q1 * Matrix::diagonal(s.sigma) * s.q2;
    const double recon = frobenius_norm(rebuilt - x) / std::max(1.0, frobenius_norm(x));
    double orth = 0.0;
    const Matrix g1 = transpose(s.q1) * s.q1;
    const Matrix g2 = s.q2 * transpose(s.q2);
    const Matrix id = Matrix::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        orth = std::max({orth, std::abs(g1(i, j) - id(i, j)), std::abs(g2(i, j) - id(i, j))});
    if (recon > 1e-12 || orth > 1e-12) ++bad;
    worst_recon = std::max(worst_recon, recon);
    worst_orth = std::max(worst_orth, orth);
    ++produced;
  }

  std::uint64_t power_bad = 0;
  double worst_gap = 0.0;
  for (std::uint64_t k = 0; k < 500; ++k) {
    const int n = 2 + static_cast<int>(k % 7);  // operator dimension 4..64
    const EnsembleSpec xs{n, EnsembleKind::kGaussian, 1, 0xBA00u + static_cast<unsigned>(k)};
    const Matrix x = draw(xs, 0);
    const EigenResult dense = symmetric_eigen(t_materialize(x));
    TOperator op(x);
    const PowerResult p = power_iteration(
        [&op](std::span<const double> in, std::span<double> out) { op.apply(in, out); }, op.dim());
    const double gap = std::abs(p.value - dense.values[0]) / std::max(1.0, dense.values[0]);
    if (gap > 1e-8) ++power_bad;
    worst_gap = std::max(worst_gap, gap);
  }

  char detail[200];
  std::snprintf(detail, sizeof detail,
                "svd: worst recon %.2e, worst orth %.2e over 1000; power vs dense: worst gap %.2e "
                "over 500",
                worst_recon, worst_orth, worst_gap);
  criterion(8, "SVD reconstruction/orthogonality and power-vs-dense agreement",
            bad == 0 && power_bad == 0, detail);
}

// ---- 9. campaign determinism ----
void criterion_9() {
  CampaignConfig config;
  config.x = {4, EnsembleKind::kSymmetric, 2000, Rng::mix(0xB9, 0)};
  config.y = {4, EnsembleKind::kGaussian, 2000, Rng::mix(0xB9, 1)};
  config.checks = parse_check_list("bw,kyfan,cdck,gap,cov");
  const std::string first = to_json(run_campaign(config)).dump(2);
  const std::string second = to_json(run_campaign(config)).dump(2);
  const bool passed_once = nlohmann::json::parse(first)["passed"].get<bool>();
  char detail[120];
  std::snprintf(detail, sizeof detail, "two runs, %zu bytes each, identical=%s, passed=%s",
                first.size(), first == second ? "yes" : "no", passed_once ? "yes" : "no");
  criterion(9, "identical campaigns emit byte-identical JSON summaries",
            first == second && passed_once, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
