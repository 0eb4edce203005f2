#pragma once

// JSON file formats. Objects are dumped with sorted keys and no whitespace,
// so equal values always produce identical bytes. Integers only; any float
// is rejected on input.
//
//   params     {"diagram":{"family":"A","rank":5},"f":[1,0,1,0,0,1],"p":2,"r":5}
//   key        {"k0":0,"seq":[1,4,0,3,1]}
//   ciphertext {"diagram":{...},"f":[...],"matrix":[[...]],"p":2,"r":5,"v":1,"values":[[digits]...]}
//
// An explicit orientation is stored as "orientation":[[from,to],...] inside
// "diagram". Ciphertext values are coordinate digit arrays, ascending powers.

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "clustercrypt/crypto.hpp"

namespace clustercrypt {

using Json = nlohmann::json;

inline constexpr int kCiphertextVersion = 1;

namespace wire {

inline std::string pointer_child(const std::string& base, const std::string& key) { return base + "/" + key; }
inline std::string pointer_child(const std::string& base, std::size_t index) {
  return base + "/" + std::to_string(index);
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
}

inline const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(pointer_child(where, key), "missing field");
  return *it;
}

inline std::int64_t integer(const Json& v, const std::string& where) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      throw ParseError(where, "integer too large");
    }
    return static_cast<std::int64_t>(u);
  }
  if (v.is_number_integer()) return v.get<std::int64_t>();
  throw ParseError(where, "expected an integer");
}

inline const Json& array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array");
  return v;
}

inline std::vector<std::int64_t> integers(const Json& v, const std::string& where) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < array(v, where).size(); ++i) out.push_back(integer(v[i], pointer_child(where, i)));
  return out;
}

inline Residue residue(std::int64_t v, const std::string& where) {
  if (v < 0) throw ParseError(where, "expected a nonnegative integer");
  return static_cast<Residue>(v);
}

/// Runs a library constructor, reporting its failure at `where`.
template <class F>
auto checked(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where.empty() ? "/" : where, e.what());
  }
}

inline Json diagram_to_json(const DynkinSpec& d) {
  Json out = {{"family", std::string(1, family_letter(d.family))}, {"rank", d.rank}};
  if (d.orientation) {
    Json arrows = Json::array();
    for (const auto& a : *d.orientation) arrows.push_back({a.from, a.to});
    out["orientation"] = arrows;
  }
  return out;
}

inline DynkinSpec diagram_from_json(const Json& j, const std::string& where) {
  DynkinSpec d;
  const Json& fam = field(j, "family", where);
  if (!fam.is_string()) throw ParseError(pointer_child(where, "family"), "expected a string");
  d.family = checked(pointer_child(where, "family"), [&] { return parse_family(fam.get<std::string>()); });
  d.rank = static_cast<int>(integer(field(j, "rank", where), pointer_child(where, "rank")));
  if (j.contains("orientation")) {
    const std::string ow = pointer_child(where, "orientation");
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < array(j["orientation"], ow).size(); ++i) {
      const auto pair = integers(j["orientation"][i], pointer_child(ow, i));
      if (pair.size() != 2) throw ParseError(pointer_child(ow, i), "expected [from, to]");
      arrows.push_back({static_cast<int>(pair[0]), static_cast<int>(pair[1])});
    }
    d.orientation = std::move(arrows);
  }
  return d;
}

inline void params_into(Json& out, const SystemParams& params) {
  out["p"] = params.field.p;
  out["r"] = params.field.r;
  out["f"] = params.field.f;
  out["diagram"] = diagram_to_json(params.diagram);
}

inline SystemParams params_from(const Json& j, const std::string& where) {
  const Residue p = residue(integer(field(j, "p", where), pointer_child(where, "p")), pointer_child(where, "p"));
  const auto r = integer(field(j, "r", where), pointer_child(where, "r"));
  std::vector<Residue> f;
  const std::string fw = pointer_child(where, "f");
  const auto raw = integers(field(j, "f", where), fw);
  for (std::size_t i = 0; i < raw.size(); ++i) f.push_back(residue(raw[i], pointer_child(fw, i)));
  if (static_cast<std::int64_t>(f.size()) != r + 1) throw ParseError(fw, "length must be r + 1");
  FieldParams field_params = checked(fw, [&] { return FieldParams::make(p, f); });
  DynkinSpec diagram = diagram_from_json(field(j, "diagram", where), pointer_child(where, "diagram"));
  return checked(pointer_child(where, "diagram"), [&] { return SystemParams::make(field_params, diagram); });
}

}  // namespace wire

inline std::string serialize_params(const SystemParams& params) {
  Json out = Json::object();
  wire::params_into(out, params);
  return out.dump() + "\n";
}

inline SystemParams deserialize_params(const std::string& text) {
  return wire::params_from(wire::parse_text(text), "");
}

inline std::string serialize_key(const SecretKey& key) {
  return Json{{"k0", key.k0}, {"seq", key.seq}}.dump() + "\n";
}

inline SecretKey deserialize_key(const std::string& text) {
  const Json j = wire::parse_text(text);
  SecretKey key;
  key.k0 = static_cast<int>(wire::integer(wire::field(j, "k0", ""), "/k0"));
  for (auto v : wire::integers(wire::field(j, "seq", ""), "/seq")) key.seq.push_back(static_cast<int>(v));
  return key;
}

/// One ciphertext record as a single line of canonical JSON.
inline std::string serialize(const SystemParams& params, const CiphertextSeed& ct) {
  Json out = Json::object();
  out["v"] = kCiphertextVersion;
  wire::params_into(out, params);
  out["matrix"] = ct.matrix.rows();
  Json values = Json::array();
  for (const auto& v : ct.values) values.push_back(v.coords);
  out["values"] = values;
  return out.dump() + "\n";
}

struct CiphertextRecord {
  SystemParams params;
  CiphertextSeed seed;
};

namespace wire {

inline CiphertextRecord record_from(const Json& j, const std::string& where) {
  const std::string vw = pointer_child(where, "v");
  if (integer(field(j, "v", where), vw) != kCiphertextVersion) throw ParseError(vw, "unsupported version");
  CiphertextRecord rec{params_from(j, where), {}};
  const int n = rec.params.rank();

  const std::string mw = pointer_child(where, "matrix");
  const Json& m = array(field(j, "matrix", where), mw);
  std::vector<std::vector<long>> rows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<long> row;
    for (auto v : integers(m[i], pointer_child(mw, i))) row.push_back(static_cast<long>(v));
    rows.push_back(std::move(row));
  }
  if (static_cast<int>(rows.size()) != n) throw ParseError(mw, "matrix rank differs from r");
  rec.seed.matrix = checked(mw, [&] { return ExchangeMatrix::from_rows(rows); });

  const std::string valw = pointer_child(where, "values");
  const Json& vals = array(field(j, "values", where), valw);
  if (static_cast<int>(vals.size()) != n) throw ParseError(valw, "expected r values");
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const std::string ew = pointer_child(valw, i);
    FieldElement e;
    const auto digits = integers(vals[i], ew);
    for (std::size_t d = 0; d < digits.size(); ++d) e.coords.push_back(residue(digits[d], pointer_child(ew, d)));
    if (!is_valid_element(e, rec.params.field)) throw ParseError(ew, "expected r digits in [0, p)");
    rec.seed.values.push_back(std::move(e));
  }
  return rec;
}

}  // namespace wire

inline CiphertextRecord deserialize(const std::string& text) { return wire::record_from(wire::parse_text(text), ""); }

/// Newline-separated records, one per encrypted symbol. Syntax errors report
/// the byte offset within the whole input.
inline std::vector<CiphertextRecord> deserialize_all(const std::string& text) {
  std::vector<CiphertextRecord> out;
  std::size_t start = 0;
  std::size_t line = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string chunk = text.substr(start, end - start);
    if (chunk.find_first_not_of(" \t\r") != std::string::npos) {
      Json j;
      try {
        j = Json::parse(chunk);
      } catch (const Json::parse_error& e) {
        throw ParseError("byte " + std::to_string(start + e.byte), "malformed JSON");
      }
      try {
        out.push_back(wire::record_from(j, ""));
      } catch (const ParseError& e) {
        throw ParseError("record " + std::to_string(line) + " " + e.position(), e.message());
      }
      ++line;
    }
    start = end + 1;
  }
  if (out.empty()) throw ParseError("byte 0", "no ciphertext records");
  return out;
}

}  // namespace clustercrypt
