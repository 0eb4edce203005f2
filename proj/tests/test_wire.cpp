#include <gtest/gtest.h>

#include "clustercrypt/wire.hpp"

using namespace clustercrypt;

namespace {

SystemParams example1() {
  return SystemParams::make(FieldParams::make(2, {1, 0, 1, 0, 0, 1}), {Family::A, 5, std::nullopt});
}
SystemParams example2() {
  return SystemParams::make(FieldParams::make(101, {46, 0, 1, 1, 0, 74, 0, 1}), {Family::D, 7, std::nullopt});
}

std::string position_of(const std::string& text) {
  try {
    deserialize(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return "no error";
}

}  // namespace

TEST(Wire, ExampleOneRoundTripIsByteExact) {
  const auto p = example1();
  const auto ct = encrypt(p, {0, {1, 4, 0, 3, 1}}, encode_message("F", p.field));
  const std::string bytes = serialize(p, ct);
  EXPECT_EQ(bytes,
            "{\"diagram\":{\"family\":\"A\",\"rank\":5},\"f\":[1,0,1,0,0,1],"
            "\"matrix\":[[0,-1,1,0,0],[1,0,-1,0,0],[-1,1,0,-1,1],[0,0,1,0,-1],[0,0,-1,1,0]],"
            "\"p\":2,\"r\":5,\"v\":1,"
            "\"values\":[[1,1,0,1,0],[0,1,0,0,1],[0,0,1,0,0],[1,1,1,0,0],[1,0,0,1,1]]}\n");
  const auto back = deserialize(bytes);
  EXPECT_EQ(back.seed, ct);
  EXPECT_EQ(serialize(back.params, back.seed), bytes);
}

TEST(Wire, ExampleTwoKeepsLargeValuesExact) {
  const auto p = example2();
  const auto ct = encrypt(p, {3, {2, 3, 4, 3}}, encode_message("38927", p.field));
  const std::string bytes = serialize(p, ct);
  EXPECT_NE(bytes.find("[18,100,62,52,82,5,12]"), std::string::npos);
  EXPECT_EQ(bytes.find('.'), std::string::npos);
  const auto back = deserialize(bytes);
  EXPECT_EQ(element_to_decimal(back.seed.values[3], back.params.field), "12799379480831");
  EXPECT_EQ(serialize(back.params, back.seed), bytes);
}

TEST(Wire, MalformedInput) {
  const auto p = example1();
  const std::string bytes = serialize(p, encrypt(p, {0, {1, 4, 0, 3, 1}}, encode_message("F", p.field)));
  EXPECT_EQ(position_of(bytes.substr(0, 40)), "byte 41");
  EXPECT_EQ(position_of("{\"v\":2}"), "/v");
  std::string flt = bytes;
  flt.replace(flt.find("\"p\":2"), 5, "\"p\":2.0");
  EXPECT_EQ(position_of(flt), "/p");
  std::string digit = bytes;
  digit.replace(digit.find("[1,1,0,1,0]"), 11, "[1,1,0,1,2]");
  EXPECT_EQ(position_of(digit), "/values/0");
  std::string skew = bytes;
  skew.replace(skew.find("[0,-1,1,0,0]"), 12, "[0,1,1,0,0]");
  EXPECT_EQ(position_of(skew), "/matrix");
  std::string missing = bytes;
  missing.replace(missing.find("\"r\":5,"), 6, "");
  EXPECT_EQ(position_of(missing), "/r");
}

TEST(Wire, ParamsAndKeys) {
  const auto p = example2();
  const auto text = serialize_params(p);
  EXPECT_EQ(text, "{\"diagram\":{\"family\":\"D\",\"rank\":7},\"f\":[46,0,1,1,0,74,0,1],\"p\":101,\"r\":7}\n");
  const auto back = deserialize_params(text);
  EXPECT_EQ(back.field, p.field);
  EXPECT_EQ(back.matrix(), p.matrix());

  const SecretKey key{3, {2, 3, 4, 3}};
  EXPECT_EQ(serialize_key(key), "{\"k0\":3,\"seq\":[2,3,4,3]}\n");
  EXPECT_EQ(deserialize_key(serialize_key(key)), key);

  SystemParams oriented = p;
  oriented.diagram.orientation = std::vector<Arrow>{{1, 0}, {1, 2}, {3, 2}, {3, 4}, {5, 4}, {6, 4}};
  const auto o = deserialize_params(serialize_params(oriented));
  EXPECT_EQ(o.diagram.orientation, oriented.diagram.orientation);
  EXPECT_THROW(deserialize_params("{\"p\":4,\"r\":1,\"f\":[0,1],\"diagram\":{\"family\":\"A\",\"rank\":1}}"), ParseError);
}

TEST(Wire, BatchRecords) {
  const auto p = example1();
  const SecretKey key{0, {1, 4, 0, 3, 1}};
  std::string text;
  for (char c : std::string("FED")) text += serialize(p, encrypt(p, key, encode_message(std::string(1, c), p.field)));
  const auto records = deserialize_all(text);
  ASSERT_EQ(records.size(), 3u);
  std::string letters;
  for (const auto& r : records) letters += *decode_message(decrypt(r.params, key, r.seed), r.params.field).letter;
  EXPECT_EQ(letters, "FED");
  try {
    deserialize_all(text + "{\"v\":1}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), "record 3 /p");
  }
}
