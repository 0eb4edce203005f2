#include <gtest/gtest.h>

#include <random>

#include "clustercrypt/dynkin.hpp"
#include "clustercrypt/seed.hpp"

using namespace clustercrypt;

namespace {

using Rows = std::vector<std::vector<long>>;

const Rows kA5 = {{0, 1, 0, 0, 0}, {-1, 0, -1, 0, 0}, {0, 1, 0, 1, 0}, {0, 0, -1, 0, -1}, {0, 0, 0, 1, 0}};
const Rows kA5Encrypted = {{0, -1, 1, 0, 0}, {1, 0, -1, 0, 0}, {-1, 1, 0, -1, 1}, {0, 0, 1, 0, -1}, {0, 0, -1, 1, 0}};
const Rows kD7 = {{0, 1, 0, 0, 0, 0, 0},  {-1, 0, -1, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 0, 0},  {0, 0, -1, 0, -1, 0, 0},
                  {0, 0, 0, 1, 0, 1, 1},  {0, 0, 0, 0, -1, 0, 0},  {0, 0, 0, 0, -1, 0, 0}};

ExchangeMatrix dynkin(Family f, int r) { return dynkin_exchange_matrix({f, r, std::nullopt}); }

FieldParams gf32() { return FieldParams::make(2, {1, 0, 1, 0, 0, 1}); }

NumericSeed alpha_seed(const ExchangeMatrix& b, const FieldParams& params) {
  NumericSeed s{{}, b};
  for (int i = 0; i < b.rank(); ++i) s.values.push_back(ext_alpha_pow(i, params));
  return s;
}

// Entry-wise mutation formula written independently of matrix_mutate.
long mutated_entry(const ExchangeMatrix& b, int k, int i, int j) {
  if (i == k || j == k) return -b(i, j);
  const long bik = b(i, k), bkj = b(k, j);
  if (bik > 0 && bkj > 0) return b(i, j) + bik * bkj;
  if (bik < 0 && bkj < 0) return b(i, j) - bik * bkj;
  return b(i, j);
}

}  // namespace

TEST(Dynkin, PublishedMatrices) {
  EXPECT_EQ(dynkin(Family::A, 5), ExchangeMatrix::from_rows(kA5));
  EXPECT_EQ(dynkin(Family::D, 7), ExchangeMatrix::from_rows(kD7));
  EXPECT_EQ(dynkin(Family::A, 1), ExchangeMatrix(1));
}

TEST(Dynkin, CartanCounterpartIsStandardForEveryType) {
  std::vector<DynkinType> all;
  for (int r = 1; r <= 8; ++r) all.push_back({Family::A, r});
  for (int r = 2; r <= 8; ++r) all.push_back({Family::B, r});
  for (int r = 2; r <= 8; ++r) all.push_back({Family::C, r});
  for (int r = 4; r <= 8; ++r) all.push_back({Family::D, r});
  for (int r = 6; r <= 8; ++r) all.push_back({Family::E, r});
  all.push_back({Family::F, 4});
  all.push_back({Family::G, 2});
  for (const auto& t : all) {
    const auto b = dynkin(t.family, t.rank);
    EXPECT_EQ(cartan_counterpart(b), standard_cartan(t.family, t.rank)) << t.name();
    auto cls = classify_cartan(cartan_counterpart(b));
    ASSERT_TRUE(cls) << t.name();
    ASSERT_EQ(cls->size(), 1u);
    // C_2 and B_2 coincide; the classifier names it B_2.
    const DynkinType expected = t.family == Family::C && t.rank == 2 ? DynkinType{Family::B, 2} : t;
    EXPECT_EQ(cls->front(), expected) << t.name();
  }
}

TEST(Dynkin, InvalidRanks) {
  for (auto [f, r] : std::vector<std::pair<Family, int>>{
           {Family::A, 0}, {Family::B, 1}, {Family::D, 3}, {Family::E, 5}, {Family::E, 9}, {Family::F, 3}, {Family::G, 3}}) {
    try {
      dynkin(f, r);
      FAIL() << family_letter(f) << r;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidSpec);
    }
  }
}

TEST(Dynkin, ExplicitOrientation) {
  DynkinSpec linear{Family::A, 3, std::vector<Arrow>{{0, 1}, {1, 2}}};
  EXPECT_EQ(dynkin_exchange_matrix(linear), ExchangeMatrix::from_rows({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}));
  DynkinSpec wrong{Family::A, 3, std::vector<Arrow>{{0, 2}, {1, 2}}};
  EXPECT_THROW(dynkin_exchange_matrix(wrong), Error);
}

TEST(Cartan, Counterpart) {
  const Rows a3 = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  EXPECT_EQ(cartan_counterpart(dynkin(Family::A, 3)), a3);
  EXPECT_EQ(cartan_counterpart(ExchangeMatrix(2)), (Rows{{2, 0}, {0, 2}}));
  EXPECT_EQ(cartan_counterpart(ExchangeMatrix::from_rows({{0, 2}, {-1, 0}})), (Rows{{2, -2}, {-1, 2}}));
  EXPECT_EQ(dynkin(Family::B, 2), ExchangeMatrix::from_rows({{0, 2}, {-1, 0}}));
}

TEST(MatrixMutation, PublishedSequences) {
  // Each step of the displayed A_5 and D_7 sequences.
  const std::vector<Rows> a5_steps = {
      {{0, -1, 0, 0, 0}, {1, 0, 1, 0, 0}, {0, -1, 0, 1, 0}, {0, 0, -1, 0, -1}, {0, 0, 0, 1, 0}},
      {{0, -1, 0, 0, 0}, {1, 0, 1, 0, 0}, {0, -1, 0, 1, 0}, {0, 0, -1, 0, 1}, {0, 0, 0, -1, 0}},
      {{0, 1, 0, 0, 0}, {-1, 0, 1, 0, 0}, {0, -1, 0, 1, 0}, {0, 0, -1, 0, 1}, {0, 0, 0, -1, 0}},
      {{0, 1, 0, 0, 0}, {-1, 0, 1, 0, 0}, {0, -1, 0, -1, 1}, {0, 0, 1, 0, -1}, {0, 0, -1, 1, 0}},
      kA5Encrypted};
  ExchangeMatrix b = ExchangeMatrix::from_rows(kA5);
  const int a5_seq[] = {1, 4, 0, 3, 1};
  for (int i = 0; i < 5; ++i) {
    b = matrix_mutate(b, a5_seq[i]);
    EXPECT_EQ(b, ExchangeMatrix::from_rows(a5_steps[i])) << "step " << i;
  }
  const std::vector<Rows> d7_steps = {
      {{0, 1, 0, 0, 0, 0, 0}, {-1, 0, 1, 0, 0, 0, 0}, {0, -1, 0, -1, 0, 0, 0}, {0, 0, 1, 0, -1, 0, 0},
       {0, 0, 0, 1, 0, 1, 1}, {0, 0, 0, 0, -1, 0, 0}, {0, 0, 0, 0, -1, 0, 0}},
      {{0, 1, 0, 0, 0, 0, 0}, {-1, 0, 1, 0, 0, 0, 0}, {0, -1, 0, 1, -1, 0, 0}, {0, 0, -1, 0, 1, 0, 0},
       {0, 0, 1, -1, 0, 1, 1}, {0, 0, 0, 0, -1, 0, 0}, {0, 0, 0, 0, -1, 0, 0}},
      {{0, 1, 0, 0, 0, 0, 0}, {-1, 0, 1, 0, 0, 0, 0}, {0, -1, 0, 0, 1, 0, 0}, {0, 0, 0, 0, -1, 1, 1},
       {0, 0, -1, 1, 0, -1, -1}, {0, 0, 0, -1, 1, 0, 0}, {0, 0, 0, -1, 1, 0, 0}},
      {{0, 1, 0, 0, 0, 0, 0}, {-1, 0, 1, 0, 0, 0, 0}, {0, -1, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, -1, -1},
       {0, 0, -1, -1, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0}}};
  b = ExchangeMatrix::from_rows(kD7);
  const int d7_seq[] = {2, 3, 4, 3};
  for (int i = 0; i < 4; ++i) {
    b = matrix_mutate(b, d7_seq[i]);
    EXPECT_EQ(b, ExchangeMatrix::from_rows(d7_steps[i])) << "step " << i;
  }
}

TEST(MatrixMutation, InvalidVertex) {
  try {
    matrix_mutate(dynkin(Family::A, 3), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidVertex);
  }
}

TEST(MatrixMutation, RandomWalksAgreeWithEntryFormulaAndInvolution) {
  std::mt19937_64 rng(2024);
  const std::vector<std::pair<Family, int>> specs = {{Family::A, 4}, {Family::B, 5}, {Family::C, 6},
                                                     {Family::D, 6}, {Family::E, 7}, {Family::G, 2}};
  for (const auto& [f, r] : specs) {
    ExchangeMatrix b = dynkin(f, r);
    for (int step = 0; step < 150; ++step) {
      const int k = static_cast<int>(rng() % r);
      const ExchangeMatrix m = matrix_mutate(b, k);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) ASSERT_EQ(m(i, j), mutated_entry(b, k, i, j));
      EXPECT_NO_THROW(m.validate());
      ASSERT_EQ(matrix_mutate(m, k), b);
      b = m;
    }
  }
}

TEST(QuiverMutation, SmallCases) {
  auto q = Quiver::from_matrix(ExchangeMatrix::from_rows({{0, 1, 0}, {-1, 0, -1}, {0, 1, 0}}));
  EXPECT_EQ(quiver_mutate(q, 1).to_matrix(), ExchangeMatrix::from_rows({{0, -1, 0}, {1, 0, 1}, {0, -1, 0}}));

  Quiver line(3);
  line.add_arrows(0, 1, 1);
  line.add_arrows(1, 2, 1);
  const Quiver m = quiver_mutate(line, 1);
  EXPECT_EQ(m.arrows(1, 0), 1);
  EXPECT_EQ(m.arrows(2, 1), 1);
  EXPECT_EQ(m.arrows(0, 2), 1);
  EXPECT_EQ(m.arrows(0, 1) + m.arrows(1, 2) + m.arrows(2, 0), 0);

  Quiver dbl(2);
  dbl.add_arrows(0, 1, 2);
  const Quiver d = quiver_mutate(dbl, 1);
  EXPECT_EQ(d.arrows(1, 0), 2);
  EXPECT_EQ(d.arrows(0, 1), 0);
}

TEST(QuiverMutation, CommutesWithMatrixMutation) {
  std::mt19937_64 rng(5);
  for (const auto& [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 6}, {Family::D, 5}, {Family::E, 8}}) {
    ExchangeMatrix b = dynkin(f, r);
    for (int step = 0; step < 100; ++step) {
      const int k = static_cast<int>(rng() % r);
      EXPECT_EQ(quiver_mutate(Quiver::from_matrix(b), k).to_matrix(), matrix_mutate(b, k));
      b = matrix_mutate(b, k);
    }
  }
}

TEST(Quiver, DotExport) {
  const std::string dot = Quiver::from_matrix(dynkin(Family::A, 3)).to_dot();
  EXPECT_NE(dot.find("x0 -> x1;"), std::string::npos);
  EXPECT_NE(dot.find("x2 -> x1;"), std::string::npos);
}

TEST(NumericMutation, HandComputed) {
  const auto gf5 = FieldParams::make(5, {0, 1});
  NumericSeed s{{FieldElement{{2}}, FieldElement{{3}}}, ExchangeMatrix::from_rows({{0, 1}, {-1, 0}})};
  const auto m = numeric_mutate(s, 0, gf5);
  EXPECT_EQ(m.values[0], FieldElement{{2}});
  EXPECT_EQ(m.values[1], FieldElement{{3}});
}

TEST(NumericMutation, ZeroEntryReportsVertexAndStep) {
  const auto f = gf32();
  NumericSeed s = alpha_seed(dynkin(Family::A, 5), f);
  s.values[2] = ext_zero(f);
  const int seq[] = {1, 2};
  try {
    apply_sequence(s, std::span<const int>(seq), ExtensionField(f));
    FAIL();
  } catch (const MutationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
    EXPECT_EQ(e.vertex(), 2);
    EXPECT_EQ(e.step(), 1);
  }
}

TEST(NumericMutation, ExampleOneLastPosition) {
  const auto f = gf32();
  const int seq[] = {1, 4, 0, 3, 1};
  const auto out = apply_sequence(alpha_seed(dynkin(Family::A, 5), f), std::span<const int>(seq), ExtensionField(f));
  EXPECT_EQ(element_to_decimal(out.values[4], f), "25");
  EXPECT_EQ(out.matrix, ExchangeMatrix::from_rows(kA5Encrypted));
}

TEST(NumericMutation, EmptyAndRepeatedSequence) {
  const auto f = gf32();
  const auto s = alpha_seed(dynkin(Family::A, 5), f);
  EXPECT_EQ(apply_sequence(s, std::span<const int>(), ExtensionField(f)), s);
  for (int k = 0; k < 5; ++k) {
    const int twice[] = {k, k};
    EXPECT_EQ(apply_sequence(s, std::span<const int>(twice), ExtensionField(f)), s);
  }
}

TEST(SeedEquivalence, Basic) {
  const auto f = gf32();
  const auto s = alpha_seed(dynkin(Family::A, 3), f);
  auto pi = seeds_equivalent(s, s);
  ASSERT_TRUE(pi);
  EXPECT_EQ(*pi, (std::vector<int>{0, 1, 2}));

  // Reverse the labels of a path quiver: values and matrix both permute.
  const std::vector<int> rev = {2, 1, 0};
  NumericSeed r{{s.values[2], s.values[1], s.values[0]}, s.matrix.permuted(rev)};
  pi = seeds_equivalent(s, r);
  ASSERT_TRUE(pi);
  EXPECT_EQ(*pi, rev);

  NumericSeed other = s;
  other.values[0] = ext_alpha_pow(7, f);
  EXPECT_FALSE(seeds_equivalent(s, other));
  EXPECT_THROW(seeds_equivalent(s, alpha_seed(dynkin(Family::A, 2), f)), Error);
}

TEST(FiniteType, Detection) {
  EXPECT_EQ(is_finite_type(dynkin(Family::A, 3)).name(), "A3");
  EXPECT_EQ(is_finite_type(ExchangeMatrix::from_rows(kA5Encrypted)).name(), "A5");
  EXPECT_EQ(is_finite_type(ExchangeMatrix::from_rows({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}})).status,
            FiniteTypeVerdict::Status::NotFinite);
  // Oriented 3-cycle is mutation equivalent to A_3.
  EXPECT_EQ(is_finite_type(ExchangeMatrix::from_rows({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}})).name(), "A3");
  // Affine A_2^(1): acyclic triangle, infinite type.
  EXPECT_EQ(is_finite_type(ExchangeMatrix::from_rows({{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}})).status,
            FiniteTypeVerdict::Status::NotFinite);
  EXPECT_EQ(is_finite_type(ExchangeMatrix(3)).name(), "A1+A1+A1");
  EXPECT_EQ(is_finite_type(dynkin(Family::C, 4)).name(), "C4");
  EXPECT_EQ(is_finite_type(dynkin(Family::E, 8)).name(), "E8");
}
