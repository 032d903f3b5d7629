#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "cnb/ensemble.hpp"
#include "cnb/operators.hpp"
#include "cnb/spectral.hpp"
#include "test_util.hpp"

using namespace cnb;
using testutil::mat;

namespace {

double pair_residual(std::span<const double> lambda, const BlockPair& v, double value) {
  const BlockPair image = tilde_apply(lambda, v);
  return std::sqrt(frobenius_norm_sq(image.b - value * v.b) +
                   frobenius_norm_sq(image.c - value * v.c));
}

}  // namespace

TEST_CASE("t_apply hand oracles") {
  const Matrix e12 = Matrix::elementary(2, 1, 2);
  const Matrix e21 = Matrix::elementary(2, 2, 1);
  CHECK(t_apply(e12, e21) == 2.0 * e21);
  CHECK(frobenius_norm_sq(t_apply(Matrix::identity(3), mat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}))) ==
        0.0);
  CHECK(t_apply(mat({{1, 0}, {0, -1}}), e12) == 4.0 * e12);
  CHECK_THROWS_AS(t_apply(Matrix::identity(2), Matrix::identity(3)), DimensionError);
}

TEST_CASE("t_materialize of the zero matrix") {
  CHECK(frobenius_norm_sq(t_materialize(Matrix(2))) == 0.0);
}

TEST_CASE("t_materialize of E12 has eigenvalues {2, 2, 0, 0}") {
  // Direct computation: T(E11) = E11 - E22, T(E12) = 0, T(E21) = 2 E21,
  // T(E22) = E22 - E11, so the spectrum is {2, 2, 0, 0} with the eigenvalue-2
  // space spanned by E21 and (E11 - E22)/sqrt(2). Cross-checked against the
  // dense eigensolve.
  const Matrix m = t_materialize(Matrix::elementary(2, 1, 2));
  const EigenResult e = symmetric_eigen(m);
  const std::vector<double> expected{2.0, 2.0, 0.0, 0.0};
  REQUIRE(e.values.size() == expected.size());
  for (size_t k = 0; k < expected.size(); ++k) {
    CHECK(e.values[k] == doctest::Approx(expected[k]).epsilon(1e-12));
  }
}

TEST_CASE("t_materialize is symmetric and consistent with t_apply") {
  EnsembleStream xs({3, EnsembleKind::kGaussian, 100, 13});
  EnsembleStream ys({3, EnsembleKind::kGaussian, 100, 14});
  for (int t = 0; t < 100; ++t) {
    const Matrix x = xs.next();
    const Matrix m = t_materialize(x);
    const double scale = std::max(1.0, max_abs(m));
    CHECK(testutil::max_entry_diff(m, transpose(m)) <= 1e-14 * scale);

    const Matrix y = ys.next();
    // M vec(Y) = vec(T_X(Y)) under the row-major vectorization.
    const Matrix expected = t_apply(x, y);
    const auto& yv = y.entries();
    const int d = m.dim();
    std::vector<double> mv(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) mv[i] += m(i, j) * yv[j];
    CHECK(testutil::approx_equal(Matrix(3, mv), expected, 1e-12 * scale));
  }
}

TEST_CASE("self-adjointness identity <T_x y, z> = <[x,y], [x,z]>") {
  EnsembleStream xs({4, EnsembleKind::kGaussian, 50, 101});
  EnsembleStream ys({4, EnsembleKind::kGaussian, 50, 102});
  EnsembleStream zs({4, EnsembleKind::kGaussian, 50, 103});
  for (int t = 0; t < 50; ++t) {
    const Matrix x = xs.next(), y = ys.next(), z = zs.next();
    const double lhs = trace_inner_product(t_apply(x, y), z);
    const double rhs = trace_inner_product(commutator(x, y), commutator(x, z));
    const double scale = std::max(1.0, frobenius_norm_sq(x) * frobenius_norm(y) * frobenius_norm(z));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
    // The same identity at y = z forces positive semidefiniteness.
    CHECK(trace_inner_product(y, t_apply(x, y)) >= -1e-12 * scale);
  }
}

TEST_CASE("tilde_apply eigen relations") {
  const std::vector<double> lambda{3.0, 0.5};
  const Matrix e11 = Matrix::elementary(2, 1, 1);

  SUBCASE("diagonal pair at 2 s1^2") {
    const BlockPair v(e11, -1.0 * e11);
    const BlockPair image = tilde_apply(lambda, v);
    CHECK(testutil::approx_equal(image.b, 2.0 * lambda[0] * lambda[0] * e11, 1e-14));
    CHECK(testutil::approx_equal(image.c, -2.0 * lambda[0] * lambda[0] * e11, 1e-14));
  }
  SUBCASE("kernel pair") {
    const Matrix e12 = Matrix::elementary(2, 1, 2);
    const BlockPair v(e12, (lambda[0] / lambda[1]) * e12);
    CHECK(pair_norm_sq(tilde_apply(lambda, v)) == 0.0);
  }
  SUBCASE("zero coefficients annihilate everything") {
    const std::vector<double> zero{0.0, 0.0};
    const BlockPair v(mat({{1, 2}, {3, 4}}), mat({{5, 6}, {7, 8}}));
    CHECK(pair_norm_sq(tilde_apply(zero, v)) == 0.0);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(tilde_apply(std::vector<double>{1.0}, BlockPair(e11, e11)), DimensionError);
  }
}

TEST_CASE("block commutator norm") {
  SUBCASE("hand oracle: lambda = diag(1,0) annihilates E21") {
    const BlockPair v(Matrix::elementary(2, 2, 1), Matrix(2));
    CHECK(block_commutator_norm_sq(std::vector<double>{1.0, 0.0}, v) == 0.0);
  }
  SUBCASE("hand oracle: diagonal pair gives 4 s1^2") {
    const Matrix e11 = Matrix::elementary(2, 1, 1);
    const std::vector<double> lambda{2.5, 1.0};
    const BlockPair v(e11, -1.0 * e11);
    CHECK(block_commutator_norm_sq(lambda, v) ==
          doctest::Approx(4.0 * lambda[0] * lambda[0]).epsilon(1e-14));
  }
  SUBCASE("zero pair") {
    CHECK(block_commutator_norm_sq(std::vector<double>{1.0, 2.0}, BlockPair(Matrix(2), Matrix(2))) ==
          0.0);
  }
}

TEST_CASE("block commutator norm equals the quadratic form of tilde_apply") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 4);
    Rng sub = rng.substream(t);
    std::vector<double> lambda(n);
    for (double& v : lambda) v = sub.gaussian();
    std::vector<double> be(static_cast<size_t>(n) * n), ce(static_cast<size_t>(n) * n);
    for (double& v : be) v = sub.gaussian();
    for (double& v : ce) v = sub.gaussian();
    const BlockPair a(Matrix(n, be), Matrix(n, ce));
    const double direct = block_commutator_norm_sq(lambda, a);
    const double form = pair_inner_product(a, tilde_apply(lambda, a));
    CHECK(std::abs(direct - form) <= 1e-12 * std::max(1.0, direct));
  }
}

TEST_CASE("genericity checks") {
  CHECK(check_genericity(std::vector<double>{2.0, 1.0}).is_generic);
  const GenericityReport equal = check_genericity(std::vector<double>{1.0, 1.0});
  CHECK_FALSE(equal.is_generic);
  REQUIRE(!equal.violations.empty());
  CHECK(equal.violations.front().find("distinct-squares") != std::string::npos);
  const GenericityReport zero = check_genericity(std::vector<double>{1.0, 0.0});
  CHECK_FALSE(zero.is_generic);
  CHECK(zero.violations.front().find("nonzero") != std::string::npos);
  // Near-degenerate squares are flagged at the 1e-9 relative tolerance.
  CHECK_FALSE(check_genericity(std::vector<double>{1.0, std::sqrt(1.0 - 1e-12)}).is_generic);
  CHECK(check_genericity(std::vector<double>{1.0, std::sqrt(1.0 - 1e-6)}).is_generic);
}

TEST_CASE("perturb_to_generic") {
  SUBCASE("degenerate pair becomes generic within 1e-6") {
    const std::vector<double> in{1.0, 1.0};
    const std::vector<double> out = perturb_to_generic(in, 4);
    CHECK(check_genericity(out).is_generic);
    for (size_t k = 0; k < in.size(); ++k) CHECK(std::abs(out[k] - in[k]) <= 1e-6);
    CHECK(std::is_sorted(out.rbegin(), out.rend()));
  }
  SUBCASE("generic input is returned unchanged") {
    const std::vector<double> in{2.0, 1.0};
    CHECK(perturb_to_generic(in, 4) == in);
  }
  SUBCASE("zero singular value moves into (0, 1e-6]") {
    const std::vector<double> out = perturb_to_generic(std::vector<double>{1.0, 0.0}, 4);
    CHECK(check_genericity(out).is_generic);
    CHECK(out[1] > 0.0);
    CHECK(out[1] <= 1e-6);
  }
}

TEST_CASE("closed_form_spectrum counts and values") {
  const std::vector<double> lambda{2.0, 1.0};
  const auto spectrum = closed_form_spectrum(lambda);
  REQUIRE(spectrum.size() == 8);  // 2 n²

  std::vector<double> values;
  for (const auto& p : spectrum) values.push_back(p.value);
  const std::vector<double> expected{8.0, 5.0, 5.0, 2.0, 0.0, 0.0, 0.0, 0.0};
  CHECK(values == expected);

  int diag = 0, mixed = 0, kernel = 0;
  for (const auto& p : spectrum) {
    if (p.kind == EigenKind::kDiagonalPair) ++diag;
    if (p.kind == EigenKind::kMixedPair) ++mixed;
    if (p.kind == EigenKind::kKernel) ++kernel;
  }
  CHECK(diag == 2);
  CHECK(mixed == 2);
  CHECK(kernel == 4);
}

TEST_CASE("closed_form_spectrum has 2n^2 pairs for generic input") {
  Rng rng(17);
  for (int n = 2; n <= 5; ++n) {
    std::vector<double> lambda(n);
    for (double& v : lambda) v = 0.5 + rng.uniform();
    lambda = perturb_to_generic(lambda, 17);
    CHECK(closed_form_spectrum(lambda).size() == static_cast<size_t>(2 * n * n));
  }
}

TEST_CASE("mixed pair coefficient solves the eigenvector equations") {
  // s = (2, 1), entry (1,2): the coefficient is -s2/s1 = -1/2 at eigenvalue 5.
  const std::vector<double> lambda{2.0, 1.0};
  const Matrix e12 = Matrix::elementary(2, 1, 2);
  const BlockPair v(e12, -0.5 * e12);
  CHECK(pair_residual(lambda, v, 5.0) <= 1e-14);
}

TEST_CASE("every predicted eigenpair satisfies the eigen equation") {
  Rng rng(23);
  for (int n = 2; n <= 6; ++n) {
    std::vector<double> lambda(n);
    for (double& v : lambda) v = 0.5 + rng.uniform();
    std::sort(lambda.rbegin(), lambda.rend());
    lambda = perturb_to_generic(lambda, 23);
    for (const auto& p : closed_form_spectrum(lambda)) {
      CHECK(std::abs(pair_norm_sq(p.vector) - 1.0) <= 1e-12);
      CHECK(pair_residual(lambda, p.vector, p.value) <= 1e-10);
    }
  }
}

TEST_CASE("closed form matches the numeric spectrum of the materialized operator") {
  Rng rng(29);
  for (int n = 2; n <= 5; ++n) {
    std::vector<double> lambda(n);
    for (double& v : lambda) v = 0.5 + rng.uniform();
    std::sort(lambda.rbegin(), lambda.rend());
    lambda = perturb_to_generic(lambda, 29);
    const auto predicted = closed_form_spectrum(lambda);
    const EigenResult numeric = symmetric_eigen(tilde_materialize(lambda));
    const double s1_sq = lambda[0] * lambda[0];
    REQUIRE(predicted.size() == numeric.values.size());
    for (size_t k = 0; k < predicted.size(); ++k) {
      CHECK(std::abs(predicted[k].value - numeric.values[k]) <= 1e-9 * s1_sq);
    }
  }
}

TEST_CASE("homogeneity: scaling the coefficients scales the spectrum quadratically") {
  const std::vector<double> lambda{1.7, 1.1, 0.6};
  const double t = 2.5;
  std::vector<double> scaled(lambda);
  for (double& v : scaled) v *= t;
  const auto base = closed_form_spectrum(lambda);
  const auto after = closed_form_spectrum(scaled);
  for (size_t k = 0; k < base.size(); ++k) {
    CHECK(std::abs(after[k].value - t * t * base[k].value) <= 1e-10 * std::max(1.0, after[k].value));
  }
}

TEST_CASE("closed_form_spectrum rejects non-generic input") {
  CHECK_THROWS_AS(closed_form_spectrum(std::vector<double>{1.0, 1.0}), GenericityError);
  try {
    closed_form_spectrum(std::vector<double>{1.0, 0.0});
  } catch (const GenericityError& e) {
    CHECK_FALSE(e.report().is_generic);
    CHECK(e.report().suggested_perturbation > 0.0);
  }
}

TEST_CASE("spectrum_report for s = (2, 1)") {
  const SpectrumReport report = spectrum_report(std::vector<double>{2.0, 1.0});
  CHECK(report.eigenvalue_multiset_distance <= 1e-9 * 4.0);
  CHECK(report.max_eigenvector_residual <= 1e-10);
  CHECK_FALSE(report.perturbed);
  REQUIRE(report.multiplicity.size() >= 2);
  CHECK(report.multiplicity[0].count == 1);  // 2 s1² is simple
  CHECK(report.multiplicity[1].count == 2);  // s1²+s2² is double
  REQUIRE(report.certification.has_value());
  CHECK(report.certification->derived_residual <= 1e-12);
  CHECK(report.certification->mirrored_residual >= 0.1);
  CHECK(report.certification->derived_coefficient == doctest::Approx(-2.0));
  CHECK(report.certification->mirrored_coefficient == doctest::Approx(-0.5));
}

TEST_CASE("spectrum_report perturbs when allowed and throws when not") {
  CHECK_THROWS_AS(spectrum_report(std::vector<double>{1.0, 1.0}), GenericityError);
  SpectrumOptions opts;
  opts.allow_perturbation = true;
  const SpectrumReport report = spectrum_report(std::vector<double>{1.0, 1.0}, opts);
  CHECK(report.perturbed);
  CHECK(report.eigenvalue_multiset_distance <= 1e-9);
  CHECK(report.multiplicity[0].count == 1);
}
