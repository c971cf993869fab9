#include <gtest/gtest.h>

#include <set>

#include "mdsrepair/error.hpp"
#include "mdsrepair/gf.hpp"
#include "support.hpp"

using namespace mdsrepair;
using testing_support::tower;

namespace {

std::vector<Symbol> digits(std::uint64_t code, std::uint32_t radix, std::size_t len) {
  std::vector<Symbol> d(len);
  for (auto& x : d) {
    x = static_cast<Symbol>(code % radix);
    code /= radix;
  }
  return d;
}

std::uint64_t undigits(const std::vector<Symbol>& d, std::uint32_t radix) {
  std::uint64_t code = 0;
  for (std::size_t k = d.size(); k-- > 0;) code = code * radix + d[k];
  return code;
}

// Schoolbook product of polynomials given as coefficient vectors, reduced
// modulo a monic modulus, with coefficient arithmetic supplied by the caller.
template <class Add, class Mul, class Neg>
std::vector<Symbol> polymulmod(const std::vector<Symbol>& a, const std::vector<Symbol>& b,
                               const std::vector<Symbol>& modulus, Add add, Mul mul, Neg neg) {
  const std::size_t deg = modulus.size() - 1;
  std::vector<Symbol> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = add(prod[i + j], mul(a[i], b[j]));
  for (std::size_t k = prod.size(); k-- > deg;) {
    const Symbol lead = prod[k];
    if (lead == 0) continue;
    for (std::size_t t = 0; t <= deg; ++t) prod[k - deg + t] = add(prod[k - deg + t], neg(mul(lead, modulus[t])));
  }
  prod.resize(deg);
  return prod;
}

Symbol naive_base_mul(const FieldTower& t, Symbol a, Symbol b) {
  const std::uint32_t p = t.p();
  if (t.m() == 1) return static_cast<Symbol>((std::uint64_t{a} * b) % p);
  auto add = [p](Symbol x, Symbol y) { return static_cast<Symbol>((x + y) % p); };
  auto mul = [p](Symbol x, Symbol y) { return static_cast<Symbol>((std::uint64_t{x} * y) % p); };
  auto neg = [p](Symbol x) { return static_cast<Symbol>((p - x) % p); };
  return static_cast<Symbol>(
      undigits(polymulmod(digits(a, p, t.m()), digits(b, p, t.m()), t.base_poly(), add, mul, neg), p));
}

Symbol naive_base_add(const FieldTower& t, Symbol a, Symbol b) {
  auto da = digits(a, t.p(), t.m());
  auto db = digits(b, t.p(), t.m());
  for (std::size_t k = 0; k < da.size(); ++k) da[k] = (da[k] + db[k]) % t.p();
  return static_cast<Symbol>(undigits(da, t.p()));
}

Symbol naive_top_mul(const FieldTower& t, Symbol a, Symbol b) {
  auto add = [&](Symbol x, Symbol y) { return naive_base_add(t, x, y); };
  auto mul = [&](Symbol x, Symbol y) { return naive_base_mul(t, x, y); };
  auto neg = [&](Symbol x) { return t.base().neg(x); };
  return static_cast<Symbol>(
      undigits(polymulmod(digits(a, t.q(), t.ell()), digits(b, t.q(), t.ell()), t.ext_poly(), add, mul, neg),
               t.q()));
}

}  // namespace

TEST(Tower, F9WithDefaultPolynomial) {
  const auto t = FieldTower::build(3, 1, 2);
  EXPECT_EQ(t.ext_poly(), (std::vector<Symbol>{1, 0, 1}));
  EXPECT_EQ(t.q(), 3u);
  EXPECT_EQ(t.top_order(), 9u);
  EXPECT_EQ(t.points_count(), 4u);
}

TEST(Tower, ExplicitPolynomialAccepted) {
  const auto t = FieldTower::build(3, 1, 2, std::nullopt, std::vector<Symbol>{1, 0, 1});
  EXPECT_EQ(t.ext_poly(), (std::vector<Symbol>{1, 0, 1}));
}

TEST(Tower, DegenerateEllOne) {
  const auto t = FieldTower::build(2, 1, 1);
  EXPECT_EQ(t.top_order(), 2u);
  EXPECT_EQ(t.top_mul(1, 1), 1u);
  EXPECT_EQ(t.points_count(), 1u);
}

TEST(Tower, CompositeCharacteristicRejected) {
  try {
    FieldTower::build(4, 1, 2);
    FAIL() << "expected NonPrime";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPrime);
  }
}

TEST(Tower, ReducibleAndMalformedPolynomials) {
  // z² + 2 = (z + 1)(z + 2) over F_3.
  try {
    FieldTower::build(3, 1, 2, std::nullopt, std::vector<Symbol>{2, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ReduciblePolynomial);
  }
  try {
    FieldTower::build(3, 1, 2, std::nullopt, std::vector<Symbol>{1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeMismatch);
  }
  try {
    FieldTower::build(3, 1, 2, std::nullopt, std::vector<Symbol>{1, 0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeMismatch);
  }
}

TEST(Tower, DefaultPolynomialsAreIrreducibleByRootSearch) {
  // Degree ≤ 3 polynomials are irreducible iff they have no root.
  for (auto [p, m, ell] : {std::tuple{2u, 1u, 2u}, {2u, 1u, 3u}, {3u, 1u, 2u}, {3u, 1u, 3u}, {5u, 1u, 2u},
                           {7u, 1u, 2u}, {2u, 2u, 2u}, {3u, 2u, 2u}}) {
    const auto t = FieldTower::build(p, m, ell);
    for (Symbol x = 0; x < t.q(); ++x) {
      Symbol acc = 0;
      for (std::size_t k = t.ext_poly().size(); k-- > 0;) acc = t.base().add(t.base().mul(acc, x), t.ext_poly()[k]);
      EXPECT_NE(acc, 0u) << "root " << x << " for p=" << p << " m=" << m << " ell=" << ell;
    }
  }
}

TEST(Arith, F9Facts) {
  const auto t = FieldTower::build(3, 1, 2);
  const Symbol z = 3;
  EXPECT_EQ(element_arith(t, ArithOp::mul, Elt::top(z), Elt::top(z)), Elt::top(2));
  EXPECT_EQ(frobenius(t, Elt::top(z)), Elt::top(6));  // 2z
  EXPECT_EQ(norm_to_base(t, Elt::top(z)), Elt::base(1));
  EXPECT_EQ(norm_to_base(t, Elt::top(1)), Elt::base(1));
  EXPECT_EQ(field_reduce(t, Elt::top(2 + 3)), (Vec{2, 1}));
  EXPECT_EQ(field_reduce(t, Elt::top(0)), (Vec{0, 0}));
}

TEST(Arith, ErrorsAndLevels) {
  const auto t = FieldTower::build(3, 1, 2);
  try {
    element_arith(t, ArithOp::inv, Elt::top(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
  try {
    element_arith(t, ArithOp::add, Elt::top(1), Elt::base(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LevelMismatch);
  }
  try {
    norm_to_base(t, Elt::base(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LevelMismatch);
  }
  for (Symbol x = 0; x < 9; ++x) EXPECT_EQ(element_arith(t, ArithOp::add, Elt::top(x), Elt::top(0)), Elt::top(x));
  EXPECT_EQ(element_arith(t, ArithOp::pow, Elt::top(3), std::uint64_t{4}), Elt::top(1));
}

TEST(Arith, MatchesSchoolbookProductExhaustively) {
  for (auto [p, m, ell] : {std::tuple{2u, 1u, 3u}, {3u, 1u, 2u}, {3u, 1u, 3u}, {5u, 1u, 2u}, {2u, 2u, 2u},
                           {2u, 3u, 2u}, {3u, 2u, 2u}, {7u, 1u, 2u}}) {
    const auto t = FieldTower::build(p, m, ell);
    for (Symbol a = 0; a < t.q(); ++a)
      for (Symbol b = 0; b < t.q(); ++b) ASSERT_EQ(t.base().mul(a, b), naive_base_mul(t, a, b));
    for (Symbol a = 0; a < t.top_order(); ++a) {
      for (Symbol b = 0; b < t.top_order(); ++b) ASSERT_EQ(t.top_mul(a, b), naive_top_mul(t, a, b));
      if (a) {
        ASSERT_EQ(t.top_mul(a, t.top_inv(a)), 1u);
      }
      ASSERT_EQ(t.top_add(a, t.top_neg(a)), 0u);
    }
  }
}

TEST(Arith, MultiplicativeGroupIsCyclic) {
  for (auto [p, m, ell] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 2u}, {2u, 2u, 2u}, {2u, 1u, 4u}}) {
    const auto t = FieldTower::build(p, m, ell);
    bool found = false;
    for (Symbol g = 1; g < t.top_order() && !found; ++g) {
      std::set<Symbol> seen;
      Symbol x = 1;
      for (std::uint32_t k = 0; k + 1 < t.top_order(); ++k) {
        seen.insert(x);
        x = t.top_mul(x, g);
      }
      found = seen.size() + 1 == t.top_order();
    }
    EXPECT_TRUE(found);
  }
}

TEST(Frobenius, HomomorphismWithSubfieldFixedSet) {
  for (auto [p, m, ell] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 2u}, {2u, 2u, 2u}, {3u, 1u, 3u}, {2u, 1u, 4u}}) {
    const auto t = FieldTower::build(p, m, ell);
    std::set<Symbol> fixed;
    for (Symbol a = 0; a < t.top_order(); ++a) {
      Symbol it = a;
      for (std::uint32_t k = 0; k < t.ell(); ++k) it = t.frobenius(it);
      ASSERT_EQ(it, a);
      if (t.frobenius(a) == a) fixed.insert(a);
      for (Symbol b = 0; b < t.top_order(); b += 1 + b / 3) {
        ASSERT_EQ(t.frobenius(t.top_add(a, b)), t.top_add(t.frobenius(a), t.frobenius(b)));
        ASSERT_EQ(t.frobenius(t.top_mul(a, b)), t.top_mul(t.frobenius(a), t.frobenius(b)));
      }
    }
    std::set<Symbol> subfield;
    for (Symbol c = 0; c < t.q(); ++c) subfield.insert(c);
    EXPECT_EQ(fixed, subfield);
  }
}

TEST(Norm, MultiplicativeWithEqualFibers) {
  for (auto [p, m, ell] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 2u}, {2u, 2u, 2u}, {3u, 1u, 3u}, {7u, 1u, 2u}}) {
    const auto t = FieldTower::build(p, m, ell);
    std::vector<std::uint64_t> fiber(t.q(), 0);
    for (Symbol a = 1; a < t.top_order(); ++a) {
      const Symbol na = t.norm(a);
      ASSERT_LT(na, t.q());
      ++fiber[na];
      for (Symbol b = 1; b < t.top_order(); b += 1 + b / 2)
        ASSERT_EQ(t.norm(t.top_mul(a, b)), t.base().mul(na, t.norm(b)));
    }
    EXPECT_EQ(fiber[0], 0u);
    for (Symbol c = 1; c < t.q(); ++c) EXPECT_EQ(fiber[c], t.points_count());
  }
}

TEST(FieldReduce, RoundTripAndLinearity) {
  const auto t = FieldTower::build(3, 1, 4);
  ASSERT_EQ(t.top_order(), 81u);
  for (Symbol x = 0; x < 81; ++x) {
    const Vec v = field_reduce(t, Elt::top(x));
    EXPECT_EQ(field_lift(t, v), Elt::top(x));
    for (Symbol y = 0; y < 81; y += 7) {
      const Vec w = field_reduce(t, Elt::top(y));
      const Vec s = field_reduce(t, Elt::top(t.top_add(x, y)));
      for (std::size_t k = 0; k < 4; ++k) ASSERT_EQ(s[k], t.base().add(v[k], w[k]));
    }
  }
}

TEST(LinearMap, MultiplyByMatrices) {
  const auto t = FieldTower::build(3, 1, 2);
  EXPECT_EQ(linear_map_matrix(t, MultiplyBy{Elt::top(1)}), Matrix::identity(2));
  EXPECT_TRUE(linear_map_matrix(t, MultiplyBy{Elt::top(0)}).is_zero());
  // Columns (0,1) and (2,0).
  EXPECT_EQ(linear_map_matrix(t, MultiplyBy{Elt::top(3)}), Matrix(2, 2, {0, 2, 1, 0}));
  try {
    linear_map_matrix(t, MultiplyBy{Elt::base(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LevelMismatch);
  }
}

TEST(LinearMap, CompositionAndFrobenius) {
  for (auto [p, m, ell] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 2u}, {2u, 2u, 2u}}) {
    const auto t = FieldTower::build(p, m, ell);
    const BaseField& f = t.base();
    const Matrix frob = linear_map_matrix(t, FrobeniusMap{});
    for (Symbol a = 0; a < t.top_order(); ++a) {
      const Matrix ma = linear_map_matrix(t, MultiplyBy{Elt::top(a)});
      for (Symbol b = 0; b < t.top_order(); ++b) {
        const Matrix mb = linear_map_matrix(t, MultiplyBy{Elt::top(b)});
        ASSERT_EQ(multiply(f, ma, mb), linear_map_matrix(t, MultiplyBy{Elt::top(t.top_mul(a, b))}));
      }
      ASSERT_EQ(apply(f, frob, t.reduce(a)), t.reduce(t.frobenius(a)));
    }
  }
}

TEST(PrimeHelpers, Basics) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(65521));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_power(8), (std::pair<std::uint32_t, std::uint32_t>{2, 3}));
  EXPECT_EQ(prime_power(25), (std::pair<std::uint32_t, std::uint32_t>{5, 2}));
  EXPECT_FALSE(prime_power(12));
  EXPECT_FALSE(prime_power(1));
}
