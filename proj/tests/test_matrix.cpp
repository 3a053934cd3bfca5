#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sigsym/matrix.hpp"
#include "sigsym/random.hpp"
#include "test_util.hpp"

using namespace sigsym;
using testutil::mat;

TEST(Matrix, RankExamples) {
  Field f2 = Field::prime(2);
  auto m = mat(f2, {"x", "y"}, {{1, 1}, {1, 1}});
  EXPECT_EQ(rank(m, m.all(), m.all()), 1u);
  EXPECT_EQ(rank(m, Subset{}, m.all()), 0u);
  EXPECT_EQ(rank(m, m.all(), Subset{}), 0u);
}

TEST(Matrix, RankMatchesSpanCount) {
  for (const Field& f : testutil::test_fields()) {
    for (std::uint64_t i = 0; i < 40; ++i) {
      Rng rng = Rng::stream(7, "rank", i);
      const std::size_t rows = 1 + rng.below(f.order() > 3 ? 4 : 6);
      const std::size_t cols = 1 + rng.below(6);
      Dense d(rows, cols);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) d(r, c) = rng.sparse_element(f, 0.4);
      EXPECT_EQ(rank(f, d), oracle::rank_by_span(f, d));
    }
  }
}

TEST(Matrix, DeterminantExamples) {
  Field f2 = Field::prime(2);
  LabeledMatrix empty(f2, {});
  EXPECT_EQ(det(empty), f2.one());
  auto p = mat(f2, {"x", "y"}, {{0, 1}, {1, 0}});
  EXPECT_EQ(det(p), f2.one());
  EXPECT_EQ(inverse(p), p);

  Field f3 = Field::prime(3);
  EXPECT_EQ(det(mat(f3, {"x", "y"}, {{1, 2}, {2, 2}})), f3.one());
}

TEST(Matrix, DeterminantMatchesPermutationExpansion) {
  for (const Field& f : testutil::test_fields()) {
    for (std::uint64_t i = 0; i < 60; ++i) {
      Rng rng = Rng::stream(11, "det", i);
      const std::size_t n = rng.below(6);
      Dense d(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) d(r, c) = rng.sparse_element(f, 0.3);
      EXPECT_EQ(det(f, d), oracle::leibniz_det(f, d));
    }
  }
}

TEST(Matrix, InverseRoundTrip) {
  Field f5 = Field::prime(5);
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = Rng::stream(3, "inv", i);
    const std::size_t n = 1 + rng.below(5);
    LabeledMatrix m(f5, LabeledMatrix::default_labels(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.element(f5);
    if (det(m) == f5.zero()) {
      try {
        inverse(m);
        FAIL();
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularMatrix);
      }
      continue;
    }
    auto prod = multiply(f5, m.dense(), inverse(m).dense());
    EXPECT_EQ(prod, Dense::identity(f5, n));
  }
}

TEST(Matrix, FromRowsSortsLabels) {
  Field f3 = Field::prime(3);
  auto m = mat(f3, {"y", "x"}, {{0, 1}, {2, 0}});
  EXPECT_EQ(m.labels(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(m.at("y", "x"), f3.one());
  EXPECT_EQ(m.at("x", "y"), Elem{2});
  EXPECT_THROW(mat(f3, {"x", "x"}, {{0, 0}, {0, 0}}), Error);
}

TEST(Matrix, SigmaEpsExamples) {
  Field f2 = Field::prime(2);
  auto path = mat(f2, {"x", "y", "z"}, {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  auto eps = sigma_eps_check(path, SesquiMorphism::identity(f2));
  ASSERT_TRUE(eps);
  EXPECT_TRUE(eps->negative.empty());

  Field f4 = Field::canonical(2, 2);
  auto s4 = SesquiMorphism::make(f4, 1, f4.one());
  auto arc = mat(f4, {"x", "y"}, {{0, 2}, {3, 0}});
  auto e4 = sigma_eps_check(arc, s4);
  ASSERT_TRUE(e4);
  EXPECT_TRUE(e4->negative.empty());
  EXPECT_FALSE(sigma_eps_check(arc, SesquiMorphism::identity(f4)));

  Field f3 = Field::prime(3);
  auto skewish = mat(f3, {"x", "y"}, {{0, 1}, {2, 0}});
  auto e3 = sigma_eps_check(skewish, SesquiMorphism::identity(f3));
  ASSERT_TRUE(e3);
  EXPECT_EQ(e3->sign(0), 1);
  EXPECT_EQ(e3->sign(1), -1);

  auto bad = mat(f3, {"x", "y"}, {{0, 1}, {0, 0}});
  EXPECT_FALSE(sigma_eps_check(bad, SesquiMorphism::identity(f3)));
}

TEST(Matrix, SigmaEpsCheckAcceptsGeneratedMatrices) {
  for (const Field& f : testutil::test_fields())
    for (const auto& s : enumerate_sesqui(f))
      for (std::uint64_t i = 0; i < 30; ++i) {
        Rng rng = Rng::stream(5, "gen", i);
        const std::size_t n = 1 + rng.below(6);
        const auto eps = random_epsilon(f, n, rng);
        auto m = random_sigma_eps_matrix(s, eps, n, rng);
        EXPECT_TRUE(is_sigma_eps_symmetric(m, s, eps));
        auto found = sigma_eps_check(m, s);
        ASSERT_TRUE(found);
        EXPECT_TRUE(is_sigma_eps_symmetric(m, s, *found));
      }
}

TEST(Matrix, SchurAndPptExamples) {
  Field f2 = Field::prime(2);
  auto m = mat(f2, {"x", "y"}, {{1, 1}, {1, 0}});
  EXPECT_EQ(schur_complement(m, Subset{}), m);
  auto s = schur_complement(m, Subset::single(0));
  EXPECT_EQ(s.labels(), (std::vector<std::string>{"y"}));
  EXPECT_EQ(s(0, 0), f2.one());

  EXPECT_EQ(ppt(m, Subset{}), m);
  EXPECT_EQ(ppt(m, Subset::single(0)), mat(f2, {"x", "y"}, {{1, 1}, {1, 1}}));
  EXPECT_EQ(ppt(m, m.all()), inverse(m));

  try {
    ppt(m, Subset::single(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularPivotBlock);
  }
}

TEST(Matrix, PptLowerBlockIsSchurComplement) {
  for (const Field& f : testutil::test_fields())
    for (std::uint64_t i = 0; i < 20; ++i) {
      Rng rng = Rng::stream(9, "schur", i);
      const std::size_t n = 1 + rng.below(6);
      LabeledMatrix m(f, LabeledMatrix::default_labels(n));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.sparse_element(f, 0.3);
      for (std::uint32_t b = 0; b < (1u << n); ++b) {
        const Subset x(b);
        if (!nonsingular_principal(m, x)) continue;
        auto p = ppt(m, x);
        auto s = schur_complement(m, x);
        const auto rest = x.complement(n).members();
        for (std::size_t a = 0; a < rest.size(); ++a)
          for (std::size_t c = 0; c < rest.size(); ++c) EXPECT_EQ(p(rest[a], rest[c]), s(a, c));
      }
    }
}

TEST(Matrix, TuckerExamples) {
  Field f2 = Field::prime(2);
  auto m = mat(f2, {"x", "y"}, {{1, 1}, {1, 0}});
  EXPECT_TRUE(tucker_check(m, Subset::single(0), Subset{}));
  EXPECT_TRUE(tucker_check(m, Subset::single(0), m.all()));
  EXPECT_THROW(tucker_check(m, Subset::single(1), Subset{}), Error);
}

TEST(Matrix, TuckerIdentityWithIndependentDeterminants) {
  for (const Field& f : testutil::test_fields())
    for (std::uint64_t i = 0; i < 15; ++i) {
      Rng rng = Rng::stream(13, "tucker", i);
      const std::size_t n = 1 + rng.below(5);
      const auto& sigmas = enumerate_sesqui(f);
      const auto s = sigmas[rng.below(sigmas.size())];
      auto m = random_sigma_eps_matrix(s, random_epsilon(f, n, rng), n, rng);
      for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
        const Subset x(xb);
        const Elem dx = oracle::leibniz_det(f, m.block(x, x));
        if (dx == f.zero()) continue;
        auto p = ppt(m, x);
        for (std::uint32_t zb = 0; zb < (1u << n); ++zb) {
          const Subset z(zb);
          const Elem lhs = oracle::leibniz_det(f, p.block(z, z));
          const Elem rhs = f.div(oracle::leibniz_det(f, m.block(z ^ x, z ^ x)), dx);
          EXPECT_TRUE(lhs == rhs || lhs == f.neg(rhs));
          EXPECT_TRUE(tucker_check(m, x, z));
        }
      }
    }
}

TEST(Matrix, CutRankExamples) {
  Field f2 = Field::prime(2);
  auto path = mat(f2, {"x", "y", "z"}, {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  EXPECT_EQ(cut_rank(path, Subset{}), 0u);
  EXPECT_EQ(cut_rank(path, path.all()), 0u);
  EXPECT_EQ(cut_rank(path, Subset::of({0, 2})), 1u);
}

TEST(Matrix, CutRankSymmetricSubmodular) {
  for (const Field& f : testutil::test_fields())
    for (const auto& s : enumerate_sesqui(f))
      for (std::uint64_t i = 0; i < 5; ++i) {
        Rng rng = Rng::stream(17, "cut", i);
        const std::size_t n = 1 + rng.below(6);
        auto m = random_sigma_eps_matrix(s, random_epsilon(f, n, rng), n, rng);
        std::vector<std::size_t> cr(1u << n);
        for (std::uint32_t b = 0; b < (1u << n); ++b) cr[b] = cut_rank(m, Subset(b));
        const std::uint32_t full = (1u << n) - 1;
        for (std::uint32_t a = 0; a <= full; ++a) {
          EXPECT_EQ(cr[a], cr[full ^ a]);
          for (std::uint32_t b = 0; b <= full; ++b) EXPECT_LE(cr[a | b] + cr[a & b], cr[a] + cr[b]);
        }
      }
}

TEST(Matrix, ApplyTransformExamples) {
  Field f3 = Field::prime(3);
  auto s3 = SesquiMorphism::identity(f3);
  auto m = mat(f3, {"x", "y"}, {{0, 1}, {1, 0}});
  EXPECT_EQ(apply_transform(m, s3, DiagonalTransform::none(), DiagonalTransform::none()), m);
  EXPECT_EQ(apply_transform(m, s3, DiagonalTransform::sign(Subset::single(0)), DiagonalTransform::none()),
            mat(f3, {"x", "y"}, {{0, 2}, {1, 0}}));

  Field f4 = Field::canonical(2, 2);
  auto s4 = SesquiMorphism::make(f4, 1, f4.one());
  const Elem a = f4.parse("a");
  EXPECT_EQ(ScalingPair::partner(s4, a), a);
  ScalingPair pair{{a, a}, {a, a}};
  EXPECT_TRUE(pair.is_compatible(s4));
  ScalingPair bad{{a, a}, {f4.one(), f4.one()}};
  EXPECT_FALSE(bad.is_compatible(s4));
  auto m4 = mat(f4, {"x", "y"}, {{0, 2}, {3, 0}});
  try {
    apply_transform(m4, s4, DiagonalTransform::scale(bad), DiagonalTransform::scale(bad));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompatibleScalingPair);
  }
  EXPECT_EQ(apply_transform(m4, s4, DiagonalTransform::scale(pair), DiagonalTransform::scale(pair)), m4);
}

TEST(Matrix, LoopPivotPreservesSymmetryClass) {
  for (const Field& f : testutil::test_fields())
    for (const auto& s : enumerate_sesqui(f))
      for (std::uint64_t i = 0; i < 8; ++i) {
        Rng rng = Rng::stream(19, "lp", i);
        const std::size_t n = 1 + rng.below(5);
        auto m = random_sigma_eps_matrix(s, random_epsilon(f, n, rng), n, rng);
        for (std::uint32_t b = 0; b < (1u << n); ++b) {
          const Subset x(b);
          if (!nonsingular_principal(m, x)) continue;
          LoopPivotParams params{x, rng.subset(n), rng.subset(n), random_scaling_pair(s, n, rng)};
          EXPECT_TRUE(sigma_eps_check(loop_pivot_matrix(m, s, params), s));
        }
      }
}

TEST(Matrix, IsomorphismExamples) {
  Field f2 = Field::prime(2);
  auto e = mat(f2, {"x", "y"}, {{0, 1}, {1, 0}});
  auto z = mat(f2, {"x", "y"}, {{0, 0}, {0, 0}});
  EXPECT_FALSE(matrix_isomorphic(e, z));
  auto id = matrix_isomorphic(e, e);
  ASSERT_TRUE(id);
  EXPECT_EQ(*id, (std::vector<std::size_t>{0, 1}));
}

TEST(Matrix, IsomorphismOfPermutedCopies) {
  Field f4 = Field::canonical(2, 2);
  auto s4 = SesquiMorphism::make(f4, 1, f4.one());
  for (std::uint64_t i = 0; i < 30; ++i) {
    Rng rng = Rng::stream(23, "iso", i);
    const std::size_t n = 1 + rng.below(7);
    auto m = random_sigma_eps_matrix(s4, {}, n, rng);
    std::vector<std::size_t> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::shuffle(pi.begin(), pi.end(), rng.engine());
    LabeledMatrix p(f4, LabeledMatrix::default_labels(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) p(pi[x], pi[y]) = m(x, y);
    auto h = matrix_isomorphic(m, p);
    ASSERT_TRUE(h);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) EXPECT_EQ(m(x, y), p((*h)[x], (*h)[y]));
    auto back = matrix_isomorphic(p, m);
    ASSERT_TRUE(back);
    std::vector<std::size_t> inv(n);
    for (std::size_t x = 0; x < n; ++x) inv[(*h)[x]] = x;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) EXPECT_EQ(p(x, y), m(inv[x], inv[y]));
  }
  LabeledMatrix big(f4, LabeledMatrix::default_labels(11));
  EXPECT_THROW(matrix_isomorphic(big, big), Error);
}
