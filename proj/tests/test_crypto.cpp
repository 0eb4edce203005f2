#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <set>

#include "clustercrypt/crypto.hpp"

using namespace clustercrypt;

namespace {

SystemParams example1() {
  return SystemParams::make(FieldParams::make(2, {1, 0, 1, 0, 0, 1}), {Family::A, 5, std::nullopt});
}
SystemParams example2() {
  return SystemParams::make(FieldParams::make(101, {46, 0, 1, 1, 0, 74, 0, 1}), {Family::D, 7, std::nullopt});
}
const SecretKey kKey1{0, {1, 4, 0, 3, 1}};
const SecretKey kKey2{3, {2, 3, 4, 3}};

std::vector<std::string> as_decimal(const CiphertextSeed& ct, const FieldParams& f) {
  std::vector<std::string> out;
  for (const auto& v : ct.values) out.push_back(element_to_decimal(v, f));
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST(Alphabet, Tables) {
  EXPECT_EQ(Alphabet::letter_to_number('F'), 6);
  EXPECT_EQ(Alphabet::letter_to_number('Z'), 26);
  EXPECT_FALSE(Alphabet::letter_to_number('?'));
  EXPECT_EQ(Alphabet::number_to_letter(11), 'K');
  EXPECT_EQ(Alphabet::number_to_letter(27), 'X');
  EXPECT_EQ(Alphabet::number_to_letter(31), 'Y');
  EXPECT_FALSE(Alphabet::number_to_letter(32));
  EXPECT_FALSE(Alphabet::number_to_letter(0));
}

TEST(Encoding, Messages) {
  const auto p1 = example1(), p2 = example2();
  EXPECT_EQ(encode_message("F", p1.field), (FieldElement{{0, 1, 1, 0, 0}}));
  EXPECT_EQ(encode_message("38927", p2.field), (FieldElement{{42, 82, 3, 0, 0, 0, 0}}));
  EXPECT_EQ(code_of([&] { encode_message("0", p1.field); }), ErrorCode::ZeroMessage);
  EXPECT_EQ(code_of([&] { encode_message("?", p1.field); }), ErrorCode::UnknownSymbol);
  EXPECT_EQ(code_of([&] { encode_message("32", p1.field); }), ErrorCode::OutOfRange);

  EXPECT_EQ(decode_message(FieldElement{{0, 1, 1, 0, 0}}, p1.field).to_string(), "6 (F)");
  EXPECT_EQ(decode_message(FieldElement{{1, 1, 0, 1, 0}}, p1.field).to_string(), "11 (K)");
  EXPECT_EQ(decode_message(FieldElement{{42, 82, 3, 0, 0, 0, 0}}, p2.field).to_string(), "38927");
  EXPECT_EQ(code_of([&] { decode_message(ext_zero(p1.field), p1.field); }), ErrorCode::ZeroMessage);
}

TEST(SystemParams, Validation) {
  EXPECT_EQ(code_of([] { SystemParams::make(FieldParams::make(2, {1, 0, 1, 0, 0, 1}), {Family::A, 4, std::nullopt}); }),
            ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { SystemParams::make(FieldParams::make(5, {2, 0, 1}), {Family::A, 2, std::nullopt}); }),
            ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { SystemParams::make(FieldParams::make(3, {1, 2, 0, 1}), {Family::D, 3, std::nullopt}); }),
            ErrorCode::InvalidSpec);
}

TEST(KeyValidation, PublishedKeysAndViolations) {
  const auto a5 = example1().matrix();
  EXPECT_TRUE(validate_key(kKey1, a5).empty());
  EXPECT_TRUE(validate_key(kKey2, example2().matrix()).empty());
  EXPECT_EQ(validate_key({2, {1, 3, 1}}, a5), std::vector<KeyViolation>{KeyViolation::HideVertexAbsent});
  EXPECT_EQ(validate_key({0, {}}, a5),
            (std::vector<KeyViolation>{KeyViolation::EmptySequence, KeyViolation::HideVertexAbsent}));
  EXPECT_EQ(validate_key({0, {1, 1, 0}}, a5), std::vector<KeyViolation>{KeyViolation::ConsecutiveRepeat});
  EXPECT_EQ(validate_key({0, {3, 0, 1}}, a5), std::vector<KeyViolation>{KeyViolation::NoAdjacentBeforeHide});
  EXPECT_EQ(validate_key({0, {0, 1, 0}}, a5), std::vector<KeyViolation>{KeyViolation::NoAdjacentBeforeHide});
  EXPECT_EQ(validate_key({0, {1, 7, 0}}, a5), std::vector<KeyViolation>{KeyViolation::VertexOutOfRange});
  EXPECT_EQ(validate_key({9, {1, 2}}, a5),
            (std::vector<KeyViolation>{KeyViolation::VertexOutOfRange, KeyViolation::HideVertexAbsent}));
}

TEST(KeyGeneration, ValidDeterministicAndInfeasible) {
  const auto p = example1();
  const auto key = keygen(42, p, 6);
  EXPECT_TRUE(validate_key(key, p.matrix()).empty());
  EXPECT_EQ(key.seq.size(), 6u);
  EXPECT_EQ(keygen(42, p, 6), key);
  EXPECT_EQ(code_of([&] { keygen(1, p, 0); }), ErrorCode::Infeasible);
  EXPECT_EQ(code_of([&] { keygen(1, p, 1); }), ErrorCode::Infeasible);
  for (std::uint64_t s = 0; s < 200; ++s) EXPECT_TRUE(validate_key(keygen(s, p, 2 + s % 10), p.matrix()).empty());
}

TEST(KeyGeneration, CoversEveryValidShortKey) {
  // Brute-force oracle: all valid keys of length 3 on A_3 appear.
  const auto p = SystemParams::make(FieldParams::make(3, {1, 2, 0, 1}), {Family::A, 3, std::nullopt});
  std::set<std::vector<int>> valid;
  for (int k0 = 0; k0 < 3; ++k0)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          if (validate_key({k0, {a, b, c}}, p.matrix()).empty()) valid.insert({k0, a, b, c});
  std::set<std::vector<int>> seen;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const auto k = keygen(s, p, 3);
    seen.insert({k.k0, k.seq[0], k.seq[1], k.seq[2]});
  }
  EXPECT_EQ(seen, valid);
}

TEST(Encryption, ExampleOne) {
  const auto p = example1();
  const auto start = std::chrono::steady_clock::now();
  const auto ct = encrypt(p, kKey1, encode_message("F", p.field));
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_EQ(as_decimal(ct, p.field), (std::vector<std::string>{"11", "18", "4", "7", "25"}));
  EXPECT_EQ(ct.matrix, ExchangeMatrix::from_rows({{0, -1, 1, 0, 0},
                                                  {1, 0, -1, 0, 0},
                                                  {-1, 1, 0, -1, 1},
                                                  {0, 0, 1, 0, -1},
                                                  {0, 0, -1, 1, 0}}));
  const double ms = std::chrono::duration<double, std::milli>(elapsed).count();
  EXPECT_LT(ms, 10.0);
  EXPECT_EQ(encrypt_reference(p, kKey1, encode_message("F", p.field)), ct);
  EXPECT_EQ(decode_message(decrypt(p, kKey1, ct), p.field).to_string(), "6 (F)");
  EXPECT_EQ(code_of([&] { encrypt(p, kKey1, ext_zero(p.field)); }), ErrorCode::ZeroMessage);
}

TEST(Encryption, ExampleTwo) {
  const auto p = example2();
  const auto ct = encrypt(p, kKey2, encode_message("38927", p.field));
  EXPECT_EQ(as_decimal(ct, p.field),
            (std::vector<std::string>{"1", "101", "46596680922228", "12799379480831", "58938867466645", "10510100501",
                                      "1061520150601"}));
  EXPECT_EQ(ct.values[2], (FieldElement{{71, 35, 43, 95, 51, 90, 43}}));
  EXPECT_EQ(ct.values[4], (FieldElement{{11, 41, 9, 94, 83, 52, 55}}));
  EXPECT_EQ(ct.matrix, ExchangeMatrix::from_rows({{0, 1, 0, 0, 0, 0, 0},
                                                  {-1, 0, 1, 0, 0, 0, 0},
                                                  {0, -1, 0, 0, 1, 0, 0},
                                                  {0, 0, 0, 0, 1, -1, -1},
                                                  {0, 0, -1, -1, 0, 0, 0},
                                                  {0, 0, 0, 1, 0, 0, 0},
                                                  {0, 0, 0, 1, 0, 0, 0}}));
  EXPECT_EQ(encrypt_reference(p, kKey2, encode_message("38927", p.field)), ct);
  EXPECT_EQ(element_to_decimal(decrypt(p, kKey2, ct), p.field), "38927");
}

TEST(Decryption, TamperedAndWrongKey) {
  const auto p = example1();
  const auto ct = encrypt(p, kKey1, encode_message("F", p.field));
  auto tampered = ct;
  tampered.values[2].coords[0] ^= 1;
  EXPECT_EQ(code_of([&] { decrypt(p, kKey1, tampered); }), ErrorCode::CorruptOrWrongKey);
  EXPECT_EQ(code_of([&] { decrypt(p, SecretKey{1, {0, 2, 1}}, ct); }), ErrorCode::CorruptOrWrongKey);
}

TEST(Encryption, ZeroValueIsReportedWithStep) {
  // m = 1 makes the first exchange relation (x1 + 1)/x0 vanish in characteristic 2.
  const auto p = example1();
  try {
    encrypt(p, SecretKey{1, {0, 1}}, ext_one(p.field));
    FAIL();
  } catch (const MutationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::EncryptionFailed);
    EXPECT_EQ(e.step(), 0);
    EXPECT_EQ(e.vertex(), 0);
  }
  // Later in the sequence: the step index is reported, not just the vertex.
  try {
    encrypt(p, SecretKey{1, {2, 0, 1}}, ext_one(p.field));
    FAIL();
  } catch (const MutationError& e) {
    EXPECT_EQ(e.step(), 1);
  }
}

TEST(RoundTrip, RandomParameters) {
  std::mt19937_64 rng(12345);
  const Family families[] = {Family::A, Family::B, Family::C, Family::D};
  int ok = 0, failed = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Family fam = families[rng() % 4];
    const int r = (fam == Family::D ? 4 : 2) + static_cast<int>(rng() % (fam == Family::D ? 5 : 7));
    const Residue p = r <= 2 ? 11 : (r <= 4 ? 5 : 3);
    const auto params = SystemParams::make(FieldParams::make(p, find_irreducible(p, r)), {fam, r, std::nullopt});
    const auto key = keygen(rng(), params, 2 + static_cast<int>(rng() % 11));
    FieldElement m = ext_zero(params.field);
    while (is_zero(m))
      for (auto& c : m.coords) c = rng() % p;
    try {
      const auto ct = encrypt(params, key, m);
      EXPECT_EQ(decrypt(params, key, ct), m);
      ++ok;
    } catch (const MutationError& e) {
      EXPECT_EQ(e.code(), ErrorCode::EncryptionFailed);
      ++failed;
    }
  }
  EXPECT_GT(ok, 300);
}
