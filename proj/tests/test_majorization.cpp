#include <gtest/gtest.h>

#include "orbithull/majorization.hpp"
#include "orbithull/random.hpp"
#include "support.hpp"

using namespace orbithull;
namespace ts = testing_support;

namespace {

HermitianElement diag(std::vector<std::vector<double>> d) { return HermitianElement::diagonal(d); }

}  // namespace

TEST(TracialSubmajorize, SmallExamples) {
  const Algebra m2 = Algebra::build({2});
  EXPECT_TRUE(tracial_submajorize(m2, diag({{0.5, 0.5}}), diag({{1.0, 0.0}})).holds);
  EXPECT_TRUE(ts::partial_sum_weak({0.5, 0.5}, {1.0, 0.0}, 0.0));

  const auto v = tracial_submajorize(m2, diag({{1.0, 0.5}}), diag({{1.0, 0.0}}));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.violation.has_value());
  EXPECT_GT(v.violation->lhs, v.violation->rhs);
  EXPECT_FALSE(ts::partial_sum_weak({1.0, 0.5}, {1.0, 0.0}, 0.0));

  const HermitianElement x = diag({{0.3, 0.7}});
  EXPECT_TRUE(tracial_submajorize(m2, x, x).holds);
}

TEST(TracialSubmajorize, RejectsNonPositive) {
  const Algebra m2 = Algebra::build({2});
  try {
    tracial_submajorize(m2, diag({{0.5, -0.1}}), diag({{1.0, 0.0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositive);
  }
}

TEST(Majorize, SmallExamples) {
  const Algebra m2 = Algebra::build({2});
  EXPECT_TRUE(majorize(m2, diag({{0.5, 0.5}}), diag({{1.0, 0.0}})).holds);
  EXPECT_TRUE(ts::partial_sum_majorized({0.5, 0.5}, {1.0, 0.0}, 0.0));
  EXPECT_FALSE(majorize(m2, diag({{1.0, 0.0}}), diag({{0.5, 0.5}})).holds);
  EXPECT_FALSE(ts::partial_sum_majorized({1.0, 0.0}, {0.5, 0.5}, 0.0));
  EXPECT_TRUE(majorize(m2, diag({{0.2, -0.9}}), diag({{0.2, -0.9}})).holds);
  EXPECT_THROW(majorize(m2, diag({{0.0}}), diag({{0.0, 0.0}})), Error);
}

TEST(Majorize, AgreesWithPartialSumsOnSingleBlocks) {
  Rng rng(101);
  int disagreements = 0;
  int positives = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + rng.below(6);
    const Algebra alg = Algebra::build({n});
    auto sa = ts::random_spectrum(n, rng, rng.below(3));
    auto sb = ts::random_spectrum(n, rng, rng.below(3));
    if (trial % 2 == 0) {
      // push a toward the hull: average of b with a permutation of b
      for (int i = 0; i < n; ++i) sa[static_cast<std::size_t>(i)] = 0.5 * (sb[static_cast<std::size_t>(i)] + sb[static_cast<std::size_t>(n - 1 - i)]);
    }
    const HermitianElement a = ts::element_with_spectra({sa}, rng);
    const HermitianElement b = ts::element_with_spectra({sb}, rng);
    const bool got = majorize(alg, a, b).holds;
    const double scale = ts::scale_of(a, b);
    const bool strict = ts::partial_sum_majorized(sa, sb, 1e-11 * scale);
    const bool loose = ts::partial_sum_majorized(sa, sb, 1e-7 * scale);
    if (got && !loose) ++disagreements;
    if (!got && strict) ++disagreements;
    positives += got;
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(positives, 4000);
}

TEST(OrbitDistance, SmallExamples) {
  const Algebra m2 = Algebra::build({2});
  EXPECT_NEAR(orbit_distance(m2, diag({{1.0, 1.0}}), diag({{1.0, 0.0}})), 0.5, 1e-12);
  EXPECT_NEAR(ts::bisection_distance({1.0, 1.0}, {1.0, 0.0}, true), 0.5, 1e-12);
  EXPECT_EQ(orbit_distance(m2, diag({{0.3, 0.1}}), diag({{0.3, 0.1}})), 0.0);
  EXPECT_NEAR(orbit_distance(m2, diag({{1.0, -1.0}}), HermitianElement::zero(m2)), 1.0, 1e-12);
  EXPECT_NEAR(ts::bisection_distance({1.0, -1.0}, {0.0, 0.0}, true), 1.0, 1e-12);
}

TEST(OrbitDistance, MatchesBisectionOracle) {
  Rng rng(202);
  for (int trial = 0; trial < 3000; ++trial) {
    const Algebra alg = ts::random_algebra(rng, 3, 6);
    const HermitianElement a = ts::random_element(alg, rng);
    const HermitianElement b = ts::random_element(alg, rng);
    const SpectrumProfile pa = spectrum_profile(a);
    const SpectrumProfile pb = spectrum_profile(b);
    double expected = 0.0;
    for (int j = 0; j < alg.num_blocks(); ++j) {
      expected = std::max(expected, ts::bisection_distance(pa.block(j), pb.block(j), true));
    }
    ASSERT_NEAR(orbit_distance(alg, a, b), expected, 1e-10) << "trial " << trial;
  }
}

TEST(OrbitDistance, ZeroExactlyWhenMajorized) {
  Rng rng(303);
  for (int trial = 0; trial < 2000; ++trial) {
    const Algebra alg = ts::random_algebra(rng);
    const HermitianElement b = ts::random_element(alg, rng);
    HermitianElement a = b.conjugated(random_unitary(alg, rng));
    if (trial % 2) a = 0.5 * (a + b.conjugated(random_unitary(alg, rng)));
    const double scale = ts::scale_of(a, b);
    EXPECT_TRUE(majorize(alg, a, b).holds);
    EXPECT_LE(orbit_distance(alg, a, b), 1e-9 * scale);
  }
}

TEST(OrbitDistance, UnitaryInvarianceAndCovariance) {
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const Algebra alg = ts::random_algebra(rng);
    const HermitianElement a = ts::random_element(alg, rng);
    const HermitianElement b = ts::random_element(alg, rng);
    const double d = orbit_distance(alg, a, b);
    const HermitianElement ua = a.conjugated(random_unitary(alg, rng));
    const HermitianElement vb = b.conjugated(random_unitary(alg, rng));
    EXPECT_NEAR(orbit_distance(alg, ua, vb), d, 1e-9);
    EXPECT_EQ(majorize(alg, ua, vb).holds, majorize(alg, a, b).holds);
    const double s = rng.uniform(-3.0, 3.0);
    EXPECT_NEAR(orbit_distance(alg, a.shifted(s), b.shifted(s)), d, 1e-9);
    const double c = rng.uniform(0.1, 4.0);
    EXPECT_NEAR(orbit_distance(alg, c * a, c * b), c * d, 1e-9);
  }
}

TEST(OrbitDistance, PerBlockIsMaxOfBlocks) {
  Rng rng(505);
  const Algebra alg = Algebra::build({2, 3, 1});
  for (int trial = 0; trial < 200; ++trial) {
    const HermitianElement a = ts::random_element(alg, rng);
    const HermitianElement b = ts::random_element(alg, rng);
    const auto per = orbit_distance_per_block(spectrum_profile(a), spectrum_profile(b));
    ASSERT_EQ(per.size(), 3u);
    EXPECT_EQ(*std::max_element(per.begin(), per.end()), orbit_distance(alg, a, b));
  }
}

TEST(SubmajDistance, SmallExamples) {
  const Algebra m2 = Algebra::build({2});
  EXPECT_NEAR(submaj_distance(m2, diag({{2.0, 0.0}}), diag({{1.0, 0.0}})).distance, 1.0, 1e-12);
  EXPECT_NEAR(ts::bisection_distance({2.0, 0.0}, {1.0, 0.0}, false), 1.0, 1e-12);
  EXPECT_EQ(submaj_distance(m2, diag({{0.3, 0.1}}), diag({{0.5, 0.2}})).distance, 0.0);
  const Algebra m1 = Algebra::build({1});
  EXPECT_NEAR(submaj_distance(m1, diag({{-1.0}}), diag({{0.0}})).distance, 1.0, 1e-12);
  EXPECT_NEAR(ts::bisection_distance({-1.0}, {0.0}, false), 1.0, 1e-12);
}

TEST(SubmajDistance, MatchesBisectionOracle) {
  Rng rng(606);
  for (int trial = 0; trial < 3000; ++trial) {
    const Algebra alg = ts::random_algebra(rng, 3, 6);
    const HermitianElement a = ts::random_element(alg, rng);
    const HermitianElement b = ts::random_element(alg, rng);
    const SpectrumProfile pa = spectrum_profile(a);
    const SpectrumProfile pb = spectrum_profile(b);
    double expected = 0.0;
    for (int j = 0; j < alg.num_blocks(); ++j) {
      expected = std::max(expected, ts::bisection_distance(pa.block(j), pb.block(j), false));
    }
    const auto got = submaj_distance(alg, a, b);
    ASSERT_NEAR(got.distance, expected, 1e-10) << "trial " << trial;
    EXPECT_LE(got.distance, orbit_distance(alg, a, b) + 1e-12);
  }
}

TEST(SubmajDistance, WitnessIsCloseAndSubmajorized) {
  Rng rng(707);
  for (int trial = 0; trial < 1000; ++trial) {
    const Algebra alg = ts::random_algebra(rng, 3, 5);
    const HermitianElement a = ts::random_element(alg, rng);
    const HermitianElement b = ts::random_element(alg, rng);
    const auto got = submaj_distance(alg, a, b);
    EXPECT_LE(ts::reference_norm(a - got.witness), got.distance + 1e-10);
    EXPECT_TRUE(submajorize(alg, got.witness, b).holds);
  }
}

TEST(ZeroInHull, Examples) {
  const Algebra m2 = Algebra::build({2});
  EXPECT_TRUE(zero_in_hull(m2, diag({{1.0, -1.0}})).holds);
  EXPECT_TRUE(zero_in_hull(m2, HermitianElement::zero(m2)).holds);
  const auto r = zero_in_hull(m2, diag({{1.0, 1.0}}));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.reason, "nonzero trace");
  EXPECT_EQ(r.block, 0);
}

TEST(ZeroInHull, AgreesWithMajorizingZero) {
  Rng rng(808);
  for (int trial = 0; trial < 1000; ++trial) {
    const Algebra alg = ts::random_algebra(rng);
    HermitianElement a = ts::random_element(alg, rng);
    if (trial % 2) {
      const CentralElement e = center_valued_trace(alg, a);
      a = a - HermitianElement::central(alg, e);
    }
    EXPECT_EQ(zero_in_hull(alg, a).holds, majorize(alg, HermitianElement::zero(alg), a).holds);
  }
}

TEST(CanonicalPair, Examples) {
  const Algebra m2 = Algebra::build({2});
  const auto cp = canonical_pair(m2, diag({{1.0, 0.0}}), diag({{0.5, 0.5}}));
  EXPECT_EQ(cp.terms, 2);
  EXPECT_EQ(cp.rank_profile, (std::vector<std::vector<int>>{{1}, {1}}));
  EXPECT_EQ(cp.alpha[0].values[0], 1.0);
  EXPECT_EQ(cp.alpha[1].values[0], 0.0);
  EXPECT_EQ(cp.beta[0].values[0], 0.5);
  EXPECT_EQ(cp.beta[1].values[0], 0.5);

  const auto same = canonical_pair(m2, diag({{0.4, 0.4}}), diag({{0.4, 0.4}}));
  EXPECT_EQ(same.terms, 1);
  EXPECT_EQ(same.alpha[0].values[0], 0.4);

  const Algebra m22 = Algebra::build({2, 2});
  const auto two = canonical_pair(m22, diag({{1.0, 1.0}, {0.0, 0.0}}), diag({{1.0, 0.0}, {1.0, 0.0}}));
  EXPECT_EQ(two.terms, 2);
  EXPECT_EQ(two.rank_profile, (std::vector<std::vector<int>>{{1, 1}, {1, 1}}));
  EXPECT_EQ(two.alpha[0].values, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(two.alpha[1].values, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(two.beta[0].values, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(two.beta[1].values, (std::vector<double>{0.0, 0.0}));
}

TEST(CanonicalPair, InvariantsOnRandomPairs) {
  Rng rng(909);
  for (int trial = 0; trial < 1000; ++trial) {
    const Algebra alg = ts::random_algebra(rng, 3, 5);
    const HermitianElement a = positive_part(ts::random_element(alg, rng));
    const HermitianElement b = positive_part(ts::random_element(alg, rng));
    const auto cp = canonical_pair(alg, a, b);
    ASSERT_EQ(static_cast<int>(cp.rank_profile.size()), cp.terms);
    for (int j = 0; j < alg.num_blocks(); ++j) {
      int sum = 0;
      for (int i = 0; i < cp.terms; ++i) sum += cp.rank_profile[i][j];
      EXPECT_EQ(sum, alg.block_dim(j));
      for (int i = 1; i < cp.terms; ++i) {
        EXPECT_GE(cp.alpha[i - 1].values[j], cp.alpha[i].values[j]);
        EXPECT_GE(cp.beta[i - 1].values[j], cp.beta[i].values[j]);
      }
    }
    const auto [ra, rb] = cp.reassembled();
    const auto pa = spectrum_profile(a);
    const auto pb = spectrum_profile(b);
    for (int j = 0; j < alg.num_blocks(); ++j) {
      for (int i = 0; i < alg.block_dim(j); ++i) {
        EXPECT_NEAR(ra.block(j)[i], pa.block(j)[i], 1e-10);
        EXPECT_NEAR(rb.block(j)[i], pb.block(j)[i], 1e-10);
      }
    }
  }
}

TEST(FiniteConditions, Examples) {
  const Algebra m2 = Algebra::build({2});
  EXPECT_TRUE(finite_conditions(canonical_pair(m2, diag({{0.5, 0.5}}), diag({{1.0, 0.0}})), 0.0));
  EXPECT_FALSE(finite_conditions(canonical_pair(m2, diag({{1.0, 0.0}}), diag({{0.5, 0.5}})), 0.0));
  EXPECT_TRUE(finite_conditions(canonical_pair(m2, diag({{1.0, 0.0}}), diag({{0.5, 0.5}})), 1.0));
  try {
    finite_conditions(canonical_pair(m2, diag({{1.5, 0.0}}), diag({{0.5, 0.5}})), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotContraction);
  }
}

TEST(FiniteConditions, ThresholdIsTheOrbitDistance) {
  Rng rng(111);
  for (int trial = 0; trial < 1000; ++trial) {
    const Algebra alg = ts::random_algebra(rng, 3, 5);
    const HermitianElement a = random_hermitian(alg, rng, 0.0, 1.0);
    const HermitianElement b = random_hermitian(alg, rng, 0.0, 1.0);
    const auto cp = canonical_pair(alg, a, b);
    const double r = orbit_distance(alg, a, b);
    EXPECT_TRUE(finite_conditions(cp, r + 1e-8));
    if (r > 1e-6) {
      EXPECT_FALSE(finite_conditions(cp, r - 1e-6));
    }
  }
}

TEST(SpectrumHull, Examples) {
  EXPECT_TRUE(spectrum_hull_check(diag({{0.2, 0.7}}), diag({{0.0, 1.0}})));
  EXPECT_TRUE(spectrum_hull_check(diag({{0.2, 0.7}}), diag({{0.2, 0.7}})));
  EXPECT_FALSE(spectrum_hull_check(diag({{1.1}}), diag({{1.0}})));
  EXPECT_FALSE(spectrum_hull_check(diag({{1.1, 0.0}}), diag({{0.0, 1.0}})));
}

TEST(QuotientNorm, Examples) {
  const Algebra m2 = Algebra::build({2});
  EXPECT_TRUE(quotient_norm_check(m2, diag({{0.5, 0.1}}), diag({{1.0, 0.0}})));
  EXPECT_TRUE(quotient_norm_check(m2, diag({{0.5, 0.1}}), diag({{0.5, 0.1}})));
  const Algebra m1 = Algebra::build({1});
  EXPECT_FALSE(quotient_norm_check(m1, diag({{1.0}}), diag({{0.5}})));
  EXPECT_THROW(quotient_norm_check(m1, diag({{-1.0}}), diag({{0.5}})), Error);
}

TEST(Tolerance, ScalesWithNorms) {
  const auto a = spectrum_profile(diag({{5.0, 0.0}}));
  const auto b = spectrum_profile(diag({{0.5, 0.0}}));
  EXPECT_DOUBLE_EQ(check_tolerance(a, b), 5e-9);
  EXPECT_DOUBLE_EQ(check_tolerance(b, b), 1e-9);
  EXPECT_DOUBLE_EQ(tail_trace({3.0, 1.0, -1.0}, 0.5), 3.0);
}
