#include <gtest/gtest.h>

#include "orbithull/algebra.hpp"
#include "orbithull/random.hpp"
#include "support.hpp"

using namespace orbithull;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Algebra, BuildValidates) {
  EXPECT_EQ(code_of([] { Algebra::build({}); }), ErrorCode::EmptyAlgebra);
  EXPECT_EQ(code_of([] { Algebra::build({2, 0}); }), ErrorCode::BadDimension);
  EXPECT_EQ(code_of([] { Algebra::build({-1}); }), ErrorCode::BadDimension);
  const Algebra alg = Algebra::build({1, 2, 3});
  EXPECT_EQ(alg.num_blocks(), 3);
  EXPECT_EQ(alg.total_dimension(), 14);
  EXPECT_EQ(alg.matrix_size(), 6);
}

TEST(Algebra, EmbedRejectsNonHermitian) {
  const Algebra alg = Algebra::build({2});
  Matrix m(2, 2);
  m << 1.0, 2.0, 0.0, 1.0;
  EXPECT_EQ(code_of([&] { HermitianElement::embed(alg, {m}); }), ErrorCode::NotHermitian);

  Matrix near(2, 2);
  near << 1.0, Complex(0.5, 1e-12), Complex(0.5, 0.0), -1.0;
  const HermitianElement x = HermitianElement::embed(alg, {near});
  EXPECT_EQ(x.block(0), x.block(0).adjoint());
}

TEST(Algebra, EmbedChecksShape) {
  const Algebra alg = Algebra::build({2, 3});
  EXPECT_EQ(code_of([&] { HermitianElement::embed(alg, {Matrix::Zero(2, 2)}); }),
            ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([&] { HermitianElement::embed(alg, {Matrix::Zero(2, 2), Matrix::Zero(2, 2)}); }),
            ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([&] { HermitianElement::embed(alg, {Matrix::Zero(2, 2), Matrix::Zero(3, 2)}); }),
            ErrorCode::ShapeMismatch);
}

TEST(Algebra, CenterValuedTraceIsBlockMean) {
  const Algebra alg = Algebra::build({2, 3});
  const HermitianElement x = HermitianElement::diagonal({{1.0, 3.0}, {0.0, 0.0, 6.0}});
  const CentralElement e = center_valued_trace(alg, x);
  ASSERT_EQ(e.values.size(), 2u);
  EXPECT_DOUBLE_EQ(e.values[0], 2.0);
  EXPECT_DOUBLE_EQ(e.values[1], 2.0);

  const auto traces = extremal_traces(alg);
  ASSERT_EQ(traces.size(), 2u);
  EXPECT_DOUBLE_EQ(evaluate_trace(traces[0], x), 4.0);
  EXPECT_DOUBLE_EQ(evaluate_trace(traces[1], x), 6.0);
}

TEST(Algebra, TraceInvariantUnderConjugation) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Algebra alg = testing_support::random_algebra(rng);
    const HermitianElement x = random_hermitian(alg, rng);
    const BlockMatrix u = random_unitary(alg, rng);
    const CentralElement e1 = center_valued_trace(alg, x);
    const CentralElement e2 = center_valued_trace(alg, x.conjugated(u));
    for (std::size_t j = 0; j < e1.values.size(); ++j) EXPECT_NEAR(e1.values[j], e2.values[j], 1e-12);
  }
}

TEST(Algebra, CentralElementsRoundTrip) {
  const Algebra alg = Algebra::build({1, 4});
  const CentralElement c{{-2.5, 0.75}};
  const HermitianElement x = HermitianElement::central(alg, c);
  EXPECT_EQ(center_valued_trace(alg, x), c);
  EXPECT_DOUBLE_EQ(x.max_abs_entry(), 2.5);
  EXPECT_EQ(x.shifted(1.0).block(1), HermitianElement::scalar(alg, 1.75).block(1));
}

TEST(Algebra, ArithmeticAndNorms) {
  const Algebra alg = Algebra::build({2});
  const HermitianElement a = HermitianElement::diagonal({{3.0, -4.0}});
  const HermitianElement b = HermitianElement::scalar(alg, 1.0);
  EXPECT_DOUBLE_EQ((a - b).frobenius_norm(), std::sqrt(4.0 + 25.0));
  EXPECT_DOUBLE_EQ((2.0 * a).max_abs_entry(), 8.0);
  EXPECT_DOUBLE_EQ((-a + a).frobenius_norm(), 0.0);
  EXPECT_THROW(a + HermitianElement::zero(Algebra::build({3})), Error);
}

TEST(Algebra, UnitaryHelpers) {
  Rng rng(5);
  const Algebra alg = Algebra::build({3, 1, 5});
  const BlockMatrix u = random_unitary(alg, rng);
  EXPECT_LT(unitarity_defect(u), 1e-13);
  const BlockMatrix id = multiply(u, adjoint(u));
  for (std::size_t j = 0; j < id.size(); ++j) {
    EXPECT_LT((id[j] - identity_blocks(alg)[j]).norm(), 1e-13);
  }
  EXPECT_THROW(require_shape(Algebra::build({3, 1}), u), Error);
}

TEST(Algebra, RandomContractionHasNormBelowOne) {
  Rng rng(9);
  const Algebra alg = Algebra::build({4, 2});
  for (int i = 0; i < 100; ++i) {
    for (const Matrix& d : random_contraction(alg, rng)) {
      Eigen::JacobiSVD<Matrix> svd(d);
      EXPECT_LE(svd.singularValues()(0), 1.0 + 1e-12);
    }
  }
}

TEST(Algebra, RandomWeightsSumToOne) {
  Rng rng(1);
  for (int k = 1; k < 20; ++k) {
    const auto w = random_weights(k, rng);
    double s = 0.0;
    for (double x : w) {
      EXPECT_GE(x, 0.0);
      s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-14);
  }
}

TEST(Algebra, SeedsAreReproducible) {
  Rng a(mix_seed({1, 2, 3}));
  Rng b(mix_seed({1, 2, 3}));
  Rng c(mix_seed({1, 3, 2}));
  const double x = a.uniform();
  EXPECT_EQ(x, b.uniform());
  EXPECT_NE(x, c.uniform());
}
