#include <gtest/gtest.h>

#include <set>

#include "mdsrepair/error.hpp"
#include "mdsrepair/linalg.hpp"
#include "support.hpp"

using namespace mdsrepair;
using namespace testing_support;

namespace {

// q-Pascal: [a, s] = [a−1, s−1] + q^s [a−1, s].
std::uint64_t pascal(std::uint64_t a, std::uint64_t s, std::uint64_t q) {
  if (s == 0) return 1;
  if (a < s) return 0;
  std::uint64_t qs = 1;
  for (std::uint64_t k = 0; k < s; ++k) qs *= q;
  return pascal(a - 1, s - 1, q) + qs * pascal(a - 1, s, q);
}

Vec unit(std::size_t d, std::size_t k) {
  Vec v(d, 0);
  v[k] = 1;
  return v;
}

}  // namespace

TEST(Rref, TrivialCases) {
  const BaseField f(5);
  const auto id = rref(f, Matrix::identity(4));
  EXPECT_EQ(id.reduced, Matrix::identity(4));
  EXPECT_EQ(id.rank, 4u);
  const auto zero = rref(f, Matrix(3, 4));
  EXPECT_TRUE(zero.reduced.is_zero());
  EXPECT_EQ(zero.rank, 0u);
  EXPECT_TRUE(zero.pivots.empty());
}

TEST(Rref, F3Example) {
  const BaseField f(3);
  const Matrix a(2, 2, {1, 2, 2, 1});
  // The second row is twice the first, so the row space has 3 vectors.
  EXPECT_EQ(row_space(f, a).size(), 3u);
  EXPECT_EQ(rank(f, a), 1u);
  const Matrix b(2, 2, {1, 2, 1, 1});
  EXPECT_EQ(row_space(f, b).size(), 9u);
  EXPECT_EQ(rank(f, b), 2u);
}

TEST(Rref, InvariantUnderInvertibleRowOperations) {
  Gen g(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t q = std::vector<std::uint32_t>{2, 3, 5}[g.uniform(0, 2)];
    const BaseField f(q);
    const std::size_t rows = g.uniform(1, 5);
    const std::size_t cols = g.uniform(1, 6);
    const Matrix a = g.matrix(q, rows, cols);
    const Matrix p = g.full_rank(f, rows, rows);
    const auto ra = rref(f, a);
    const auto rpa = rref(f, multiply(f, p, a));
    ASSERT_EQ(ra.reduced, rpa.reduced);
    ASSERT_EQ(ra.pivots, rpa.pivots);
  }
}

TEST(Rref, RankAgreesWithRowSpaceSize) {
  Gen g(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t q = g.uniform(0, 1) ? 2 : 3;
    const BaseField f(q);
    const Matrix a = g.matrix(q, g.uniform(1, 4), g.uniform(1, 5));
    ASSERT_EQ(rank(f, a), oracle_rank(f, a));
    std::vector<Symbol> buf = a.entries();
    ASSERT_EQ(rank_in_place(f, buf, a.rows(), a.cols()), oracle_rank(f, a));
  }
}

TEST(Inverse, RoundTrip) {
  Gen g(13);
  const BaseField f(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = g.uniform(1, 5);
    const Matrix a = g.matrix(5, n, n);
    const auto inv = inverse(f, a);
    ASSERT_EQ(inv.has_value(), rank(f, a) == n);
    if (inv) {
      ASSERT_EQ(multiply(f, a, *inv), Matrix::identity(n));
    }
  }
}

TEST(Kernel, TrivialCases) {
  const BaseField f(3);
  EXPECT_EQ(kernel(f, Matrix::identity(4)).dim(), 0u);
  EXPECT_EQ(kernel(f, Matrix(1, 5)).dim(), 5u);
  Gen g(14);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = g.full_rank(f, 2, 6);
    EXPECT_EQ(kernel(f, m).dim(), 4u);
  }
}

TEST(Kernel, ContainsAgreesWithDirectMultiplication) {
  Gen g(15);
  const BaseField f(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t cols = g.uniform(2, 5);
    const Matrix m = g.matrix(5, g.uniform(1, 3), cols);
    const Subspace ker = kernel(f, m);
    // Half the probes are drawn from the kernel itself.
    Vec v = g.vec(5, cols);
    if (trial % 2 && ker.dim() > 0) {
      const Vec coeffs = g.vec(5, ker.dim());
      v.assign(cols, 0);
      for (std::size_t k = 0; k < ker.dim(); ++k)
        for (std::size_t c = 0; c < cols; ++c) v[c] = f.add(v[c], f.mul(coeffs[k], ker.basis()(k, c)));
    }
    const Vec image = apply(f, m, v);
    const bool zero = std::all_of(image.begin(), image.end(), [](Symbol s) { return s == 0; });
    ASSERT_EQ(contains(f, ker, v), zero);
  }
}

TEST(Subspace, ContainsTrivial) {
  const BaseField f(3);
  Gen g(16);
  const Subspace s = g.subspace(f, 4, 2);
  EXPECT_TRUE(contains(f, s, Vec(4, 0)));
  EXPECT_FALSE(contains(f, Subspace(4), unit(4, 2)));
  try {
    contains(f, s, Vec(3, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AmbientMismatch);
  }
}

TEST(Subspace, IntersectDimExamples) {
  const BaseField f(3);
  const auto span_of = [&](std::vector<Vec> rows) { return Subspace::span(f, Matrix::from_rows(rows, 4)); };
  const Subspace a = span_of({unit(4, 0), unit(4, 1)});
  const Subspace b = span_of({unit(4, 1), unit(4, 2)});
  const Subspace c = span_of({unit(4, 2), unit(4, 3)});
  EXPECT_EQ(intersect_dim(f, a, a), 2u);
  EXPECT_EQ(intersect_dim(f, a, c), 0u);
  EXPECT_EQ(intersect_dim(f, a, b), 1u);
  EXPECT_EQ(intersection(f, a, b), span_of({unit(4, 1)}));
  EXPECT_EQ(sum(f, a, c), Subspace::full(4));
  try {
    intersect_dim(f, a, Subspace(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AmbientMismatch);
  }
}

TEST(Subspace, IntersectionMatchesExhaustiveMembership) {
  Gen g(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t q = std::vector<std::uint32_t>{2, 3, 5}[g.uniform(0, 2)];
    const BaseField f(q);
    const std::size_t d = g.uniform(2, 5);
    const Subspace a = Subspace::span(f, g.matrix(q, g.uniform(1, d), d));
    const Subspace b = Subspace::span(f, g.matrix(q, g.uniform(1, d), d));
    const auto sa = row_space(f, a.basis());
    if (sa.size() > 10000) continue;
    const std::size_t shared = common(sa, row_space(f, b.basis()));
    ASSERT_EQ(log_q(shared, q), intersect_dim(f, a, b));
    ASSERT_EQ(intersection(f, a, b).dim(), intersect_dim(f, a, b));
  }
}

TEST(Subspace, AnnihilatorDuality) {
  Gen g(18);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t q = g.uniform(0, 1) ? 3 : 5;
    const BaseField f(q);
    const std::size_t d = g.uniform(1, 6);
    const Subspace s = Subspace::span(f, g.matrix(q, g.uniform(1, d), d));
    const Subspace ann = annihilator(f, s);
    ASSERT_EQ(ann.dim() + s.dim(), d);
    ASSERT_EQ(annihilator(f, ann), s);
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < ann.dim(); ++j) ASSERT_EQ(dot(f, s.basis().row(i), ann.basis().row(j)), 0u);
  }
}

TEST(Subspace, EqualSubspacesShareBasis) {
  Gen g(19);
  const BaseField f(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix gens = g.full_rank(f, 3, 5);
    const Matrix p = g.full_rank(f, 3, 3);
    ASSERT_EQ(Subspace::span(f, gens), Subspace::span(f, multiply(f, p, gens)));
  }
}

TEST(GaussianBinomial, Values) {
  EXPECT_EQ(gaussian_binomial(2, 1, 3), 4u);
  EXPECT_EQ(gaussian_binomial(1, 2, 3), 0u);
  EXPECT_EQ(gaussian_binomial(4, 2, 3), 130u);
  EXPECT_EQ(gaussian_binomial(6, 2, 5), 508431u);
  EXPECT_EQ(gaussian_binomial(5, 0, 7), 1u);
  for (std::uint64_t q : {2, 3, 4, 5, 7})
    for (std::uint64_t a = 0; a <= 7; ++a)
      for (std::uint64_t s = 0; s <= a + 1; ++s) ASSERT_EQ(gaussian_binomial(a, s, q), pascal(a, s, q));
  EXPECT_THROW(gaussian_binomial(200, 100, 7), Error);
}

TEST(GaussianBinomial, CountsSubspacesByClosure) {
  EXPECT_EQ(all_subspaces(BaseField(3), 4, 2).size(), 130u);
  EXPECT_EQ(all_subspaces(BaseField(2), 4, 2).size(), gaussian_binomial(4, 2, 2));
  EXPECT_EQ(all_subspaces(BaseField(2), 5, 3).size(), gaussian_binomial(5, 3, 2));
}

TEST(RrefEnumerator, SquareGivesIdentity) {
  const RrefEnumerator en(3, 3, 5);
  ASSERT_EQ(en.size(), 1u);
  EXPECT_EQ(en.at(0), Matrix::identity(3));
  EXPECT_THROW(RrefEnumerator(4, 3, 2), Error);
}

TEST(RrefEnumerator, StreamsAreCanonicalDistinctAndComplete) {
  for (auto [k, d, q] : {std::tuple{2u, 4u, 3u}, {1u, 4u, 5u}, {2u, 5u, 2u}, {3u, 5u, 2u}, {2u, 4u, 4u}}) {
    const BaseField f = q == 4 ? FieldTower::build(2, 2, 1).base() : BaseField(q);
    const RrefEnumerator en(k, d, q);
    ASSERT_EQ(en.size(), gaussian_binomial(d, k, q));
    std::set<std::vector<Symbol>> seen;
    std::set<std::set<Vec>> spaces;
    std::uint64_t count = 0;
    en.for_each(0, en.size(), [&](std::uint64_t index, const Matrix& m) {
      ASSERT_EQ(index, count++);
      ASSERT_EQ(rref(f, m).reduced, m);
      ASSERT_EQ(rank(f, m), k);
      ASSERT_EQ(kernel(f, m).dim(), d - k);
      ASSERT_EQ(en.at(index), m);
      seen.insert(m.entries());
      spaces.insert(row_space(f, m));
    });
    EXPECT_EQ(count, en.size());
    EXPECT_EQ(seen.size(), en.size());
    EXPECT_EQ(spaces.size(), en.size());
  }
}

TEST(RrefEnumerator, LargeCountAndResumableRanges) {
  const RrefEnumerator en(2, 6, 5);
  EXPECT_EQ(en.size(), 508431u);
  std::uint64_t count = 0;
  en.for_each(0, en.size(), [&](std::uint64_t, const Matrix&) { ++count; });
  EXPECT_EQ(count, 508431u);

  // Arbitrary sub-ranges reproduce the full stream.
  std::vector<std::vector<Symbol>> whole;
  const RrefEnumerator small(2, 4, 3);
  small.for_each(0, small.size(), [&](std::uint64_t, const Matrix& m) { whole.push_back(m.entries()); });
  std::vector<std::vector<Symbol>> pieces;
  for (std::uint64_t b = 0; b < small.size(); b += 17)
    small.for_each(b, b + 17, [&](std::uint64_t, const Matrix& m) { pieces.push_back(m.entries()); });
  EXPECT_EQ(pieces, whole);
}
