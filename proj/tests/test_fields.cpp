#include <gtest/gtest.h>

#include <random>
#include <set>

#include "clustercrypt/fields.hpp"

using namespace clustercrypt;

namespace {

FieldParams gf32() { return FieldParams::make(2, {1, 0, 1, 0, 0, 1}); }
FieldParams gf101_7() { return FieldParams::make(101, {46, 0, 1, 1, 0, 74, 0, 1}); }

FieldElement elem(std::vector<Residue> c) { return FieldElement{std::move(c)}; }

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible_by_trial_division(const std::vector<Residue>& f, Residue p) {
  const int r = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= r / 2; ++d) {
    std::vector<Residue> g(d + 1, 0);
    g[d] = 1;
    while (true) {
      if (upoly::mod(f, g, p).empty()) return false;
      int i = 0;
      while (i < d && ++g[i] == p) g[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

FieldElement random_element(std::mt19937_64& rng, const FieldParams& params) {
  FieldElement a{std::vector<Residue>(params.r)};
  for (auto& c : a.coords) c = rng() % params.p;
  return a;
}

}  // namespace

TEST(PrimeField, Inverse) {
  EXPECT_EQ(fp_inv(1, 2), 1u);
  EXPECT_EQ(fp_inv(2, 101), 51u);
  try {
    fp_inv(0, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonInvertible);
  }
  for (Residue a = 1; a < 101; ++a) EXPECT_EQ(mul_mod(a, fp_inv(a, 101), 101), 1u);
}

TEST(Irreducibility, PublishedPolynomials) {
  EXPECT_TRUE(is_irreducible({1, 0, 1, 0, 0, 1}, 2));
  EXPECT_TRUE(is_irreducible({46, 0, 1, 1, 0, 74, 0, 1}, 101));
  EXPECT_FALSE(is_irreducible({1, 0, 1}, 2));
  EXPECT_TRUE(irreducible_by_trial_division({1, 0, 1, 0, 0, 1}, 2));
  EXPECT_TRUE(irreducible_by_trial_division({46, 0, 1, 1, 0, 74, 0, 1}, 101));
}

TEST(Irreducibility, ConstantRejected) {
  try {
    is_irreducible({3}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidDegree);
  }
}

TEST(Irreducibility, AgreesWithTrialDivision) {
  for (Residue p : {2, 3, 5}) {
    for (int r = 1; r <= 5; ++r) {
      std::vector<Residue> f(r + 1, 0);
      f[r] = 1;
      while (true) {
        EXPECT_EQ(is_irreducible(f, p), irreducible_by_trial_division(f, p)) << "p=" << p << " r=" << r;
        int i = 0;
        while (i < r && ++f[i] == p) f[i++] = 0;
        if (i == r) break;
      }
    }
  }
}

TEST(FieldParams, RejectsBadInput) {
  EXPECT_THROW(FieldParams::make(4, {1, 1, 1}), Error);
  EXPECT_THROW(FieldParams::make(2, {1, 0, 1}), Error);
  EXPECT_THROW(FieldParams::make(5, {1, 7, 1}), Error);
  EXPECT_THROW(FieldParams::make(5, {1, 1, 2}), Error);
}

TEST(ExtensionField, Multiplication) {
  const auto f = gf32();
  EXPECT_EQ(ext_mul(elem({0, 0, 0, 0, 1}), elem({0, 1, 0, 0, 0}), f), elem({1, 0, 1, 0, 0}));
  EXPECT_EQ(ext_mul(elem({0, 1, 0, 0, 0}), elem({0, 1, 0, 0, 0}), f), elem({0, 0, 1, 0, 0}));
  const auto g = gf101_7();
  EXPECT_EQ(ext_mul(elem({0, 0, 0, 0, 0, 0, 1}), elem({0, 1, 0, 0, 0, 0, 0}), g), elem({55, 0, 100, 100, 0, 27, 0}));
}

TEST(ExtensionField, Inverse) {
  const auto f = gf32();
  EXPECT_EQ(ext_inv(ext_one(f), f), ext_one(f));
  EXPECT_EQ(ext_inv(elem({0, 1, 0, 0, 0}), f), elem({0, 1, 0, 0, 1}));
  // (1 + alpha) / (alpha + alpha^2)
  EXPECT_EQ(ext_mul(ext_inv(elem({0, 1, 1, 0, 0}), f), elem({1, 1, 0, 0, 0}), f), elem({0, 1, 0, 0, 1}));
  try {
    ext_inv(ext_zero(f), f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonInvertible);
  }
}

TEST(ExtensionField, AlphaPowersCycleWithGroupOrder) {
  // alpha generates GF(32)^* because 31 is prime.
  const auto f = gf32();
  FieldElement x = ext_one(f);
  std::set<std::vector<Residue>> seen;
  for (int i = 0; i < 31; ++i) {
    EXPECT_EQ(x, ext_alpha_pow(i, f));
    seen.insert(x.coords);
    x = ext_mul(x, ext_alpha_pow(1, f), f);
  }
  EXPECT_EQ(x, ext_one(f));
  EXPECT_EQ(seen.size(), 31u);
}

TEST(ExtensionField, FieldAxiomsRandomized) {
  std::mt19937_64 rng(7);
  for (const auto& params : {gf32(), gf101_7(), FieldParams::make(3, find_irreducible(3, 4))}) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto a = random_element(rng, params), b = random_element(rng, params), c = random_element(rng, params);
      EXPECT_EQ(ext_mul(a, b, params), ext_mul(b, a, params));
      EXPECT_EQ(ext_mul(ext_mul(a, b, params), c, params), ext_mul(a, ext_mul(b, c, params), params));
      EXPECT_EQ(ext_mul(a, ext_add(b, c, params), params),
                ext_add(ext_mul(a, b, params), ext_mul(a, c, params), params));
      EXPECT_EQ(ext_add(ext_sub(a, b, params), b, params), a);
      if (!is_zero(a)) EXPECT_EQ(ext_mul(a, ext_inv(a, params), params), ext_one(params));
    }
  }
}

TEST(ExtensionField, Frobenius) {
  std::mt19937_64 rng(11);
  for (const auto& params : {gf32(), gf101_7()}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_element(rng, params);
      EXPECT_EQ(ext_pow(a, params.order(), params), a);
    }
  }
}

TEST(Codec, PublishedValues) {
  const auto g = gf101_7();
  EXPECT_EQ(element_to_decimal(elem({42, 82, 3, 0, 0, 0, 0}), g), "38927");
  EXPECT_EQ(element_to_decimal(elem({0, 0, 0, 0, 0, 1, 0}), g), "10510100501");
  EXPECT_EQ(element_to_decimal(elem({1, 1, 0, 1, 0}), gf32()), "11");
  EXPECT_EQ(int_to_element(mpz_class("12799379480831"), g), elem({18, 100, 62, 52, 82, 5, 12}));
}

TEST(Codec, RoundTripAndRange) {
  const auto f = gf32();
  for (int n = 0; n < 32; ++n) EXPECT_EQ(element_to_int(int_to_element(n, f), f), n);
  try {
    int_to_element(32, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
  const auto g = gf101_7();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_element(rng, g);
    EXPECT_EQ(int_to_element(element_to_int(a, g), g), a);
  }
}
