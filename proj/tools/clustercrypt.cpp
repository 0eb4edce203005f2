// clustercrypt: parameters, keys, encryption and analysis from the shell.
//
// Exit codes
//   0   success
//   1   selftest failure
//   2   message rejected or encryption failed
//   3   decryption failed or ciphertext corrupt / wrong key
//   64  bad configuration: unreadable or invalid files, options, params, key

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <CLI11.hpp>

#include "clustercrypt/clustercrypt.hpp"

namespace cc = clustercrypt;

namespace {

enum Exit : int { kOk = 0, kSelftestFailed = 1, kEncryptFailed = 2, kDecryptFailed = 3, kUsage = 64 };

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(cc::ErrorCode code) {
  switch (code) {
    case cc::ErrorCode::ZeroMessage:
    case cc::ErrorCode::UnknownSymbol:
    case cc::ErrorCode::OutOfRange:
    case cc::ErrorCode::EncryptionFailed:
      return kEncryptFailed;
    case cc::ErrorCode::CorruptOrWrongKey:
    case cc::ErrorCode::DecryptionFailed:
      return kDecryptFailed;
    default:
      return kUsage;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot read " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Writes next to the target and renames, so a failed run leaves nothing behind.
void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kUsage, "cannot write " + path};
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw Failure{kUsage, "cannot write " + path};
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Failure{kUsage, "cannot write " + path + ": " + ec.message()};
  }
}

template <class T>
T load(const std::string& path, T (*parse)(const std::string&), const char* what) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const cc::Error& e) {
    throw Failure{kUsage, std::string(what) + " " + path + ": " + e.what()};
  }
}

/// Seed from --rng-seed or fresh entropy; the value used is always reported.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
  if (given) return *given;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<cc::Arrow> parse_orientation(const std::string& text) {
  std::vector<cc::Arrow> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto gt = item.find('>');
    if (gt == std::string::npos) throw Failure{kUsage, "orientation entries look like 0>1, got '" + item + "'"};
    try {
      out.push_back({std::stoi(item.substr(0, gt)), std::stoi(item.substr(gt + 1))});
    } catch (const std::exception&) {
      throw Failure{kUsage, "orientation entries look like 0>1, got '" + item + "'"};
    }
  }
  return out;
}

struct DiagramOptions {
  std::string family = "A";
  int rank = 3;
  std::string orientation;

  void add_to(CLI::App* app) {
    app->add_option("--family", family, "Dynkin family A-G")->capture_default_str();
    app->add_option("--rank", rank, "diagram rank")->capture_default_str();
    app->add_option("--orientation", orientation, "explicit arrows, e.g. 0>1,2>1");
  }

  cc::DynkinSpec spec() const {
    cc::DynkinSpec d;
    try {
      d.family = cc::parse_family(family);
    } catch (const cc::Error& e) {
      throw Failure{kUsage, e.what()};
    }
    d.rank = rank;
    if (!orientation.empty()) d.orientation = parse_orientation(orientation);
    return d;
  }
};

std::string json_line(const cc::Json& j) { return j.dump() + "\n"; }

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

// ---------------------------------------------------------------------------

struct ParamsCmd {
  DiagramOptions diagram;
  std::uint64_t p = 2;
  std::vector<std::uint64_t> f;
  std::string out;

  int run() const {
    cc::DynkinSpec d = diagram.spec();
    std::vector<cc::Residue> poly(f.begin(), f.end());
    if (poly.empty()) poly = cc::find_irreducible(p, d.rank);
    const auto params = cc::SystemParams::make(cc::FieldParams::make(p, poly), d);
    params.matrix();  // validates the orientation
    emit(out, cc::serialize_params(params));
    return kOk;
  }
};

struct KeygenCmd {
  std::string params_path;
  int length = 5;
  std::optional<std::uint64_t> rng_seed;
  std::string out;
  std::string format = "text";

  int run() const {
    const auto params = load(params_path, &cc::deserialize_params, "params");
    const std::uint64_t seed = resolve_seed(rng_seed);
    const auto key = cc::keygen(seed, params, length);
    const std::string text = cc::serialize_key(key);
    if (out.empty()) {
      std::cout << text;
      std::cerr << "rng-seed " << seed << "\n";
      return kOk;
    }
    write_file(out, text);
    if (format == "json") {
      std::cout << json_line({{"k0", key.k0}, {"seq", key.seq}, {"rng_seed", seed}, {"path", out}});
    } else {
      std::cout << "key written to " << out << " (rng-seed " << seed << ")\n";
    }
    return kOk;
  }
};

/// Digits: one integer. One letter: its table value. Several letters: one
/// record per letter.
std::vector<std::string> split_message(const std::string& message) {
  const bool letters = !message.empty() && std::all_of(message.begin(), message.end(), [](unsigned char c) {
    return std::isalpha(c) != 0;
  });
  if (!letters || message.size() == 1) return {message};
  std::vector<std::string> out;
  for (char c : message) out.emplace_back(1, c);
  return out;
}

std::vector<std::string> decimals(const cc::CiphertextSeed& ct, const cc::FieldParams& f) {
  std::vector<std::string> out;
  for (const auto& v : ct.values) out.push_back(cc::element_to_decimal(v, f));
  return out;
}

struct EncryptCmd {
  std::string params_path;
  std::string key_path;
  std::string message;
  std::string message_file;
  bool reference = false;
  std::string out;
  std::string format = "text";

  int run() const {
    if (message.empty() == message_file.empty()) throw Failure{kUsage, "give exactly one of --message, --message-file"};
    const auto params = load(params_path, &cc::deserialize_params, "params");
    const auto key = load(key_path, &cc::deserialize_key, "key");
    std::string text = message;
    if (!message_file.empty()) {
      text = read_file(message_file);
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    }
    try {
      cc::require_valid_key(key, params.matrix());
    } catch (const cc::Error& e) {
      throw Failure{kUsage, e.what()};
    }

    std::string records;
    cc::Json rows = cc::Json::array();
    std::ostringstream human;
    std::optional<cc::SymbolicSeed> symbolic;
    if (reference) symbolic = cc::symbolic_ciphertext(params, key);
    for (const auto& symbol : split_message(text)) {
      const auto m = cc::encode_message(symbol, params.field);
      const auto ct = reference ? cc::encrypt_reference(params, key, m, *symbolic) : cc::encrypt(params, key, m);
      records += cc::serialize(params, ct);
      const auto vals = decimals(ct, params.field);
      rows.push_back({{"symbol", symbol}, {"values", vals}, {"matrix", ct.matrix.rows()}});
      human << symbol << ":";
      for (const auto& v : vals) human << " " << v;
      human << "\n";
    }
    if (out.empty() && format == "text") {
      std::cout << records;
      return kOk;
    }
    if (!out.empty()) write_file(out, records);
    if (format == "json") {
      std::cout << json_line({{"records", rows}, {"path", out}});
    } else if (format == "csv") {
      std::cout << "record,position,value\n";
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i]["values"].size(); ++j)
          std::cout << i << ',' << j << ',' << rows[i]["values"][j].get<std::string>() << "\n";
    } else {
      std::cout << human.str();
    }
    return kOk;
  }
};

struct DecryptCmd {
  std::string ciphertext_path;
  std::string key_path;
  std::string params_path;
  std::string format = "text";

  int run() const {
    const auto records = load(ciphertext_path, &cc::deserialize_all, "ciphertext");
    const auto key = load(key_path, &cc::deserialize_key, "key");
    if (!params_path.empty()) {
      const auto params = load(params_path, &cc::deserialize_params, "params");
      for (const auto& r : records) {
        if (cc::serialize_params(r.params) != cc::serialize_params(params)) {
          throw Failure{kUsage, "ciphertext parameters differ from " + params_path};
        }
      }
    }
    try {
      cc::require_valid_key(key, records.front().params.matrix());
    } catch (const cc::Error& e) {
      throw Failure{kUsage, e.what()};
    }
    std::vector<cc::Plaintext> plain;
    for (const auto& r : records) plain.push_back(cc::decode_message(cc::decrypt(r.params, key, r.seed), r.params.field));

    if (format == "json") {
      cc::Json rows = cc::Json::array();
      for (const auto& p : plain) {
        cc::Json row{{"value", p.value.get_str()}};
        row["letter"] = p.letter ? cc::Json(std::string(1, *p.letter)) : cc::Json(nullptr);
        rows.push_back(row);
      }
      std::cout << json_line({{"plaintext", rows}});
    } else if (format == "csv") {
      std::cout << "record,value,letter\n";
      for (std::size_t i = 0; i < plain.size(); ++i)
        std::cout << i << ',' << plain[i].value.get_str() << ',' << (plain[i].letter ? std::string(1, *plain[i].letter) : "")
                  << "\n";
    } else {
      for (const auto& p : plain) std::cout << p.to_string() << "\n";
    }
    return kOk;
  }
};

struct GraphCmd {
  DiagramOptions diagram;
  std::size_t budget = cc::kDefaultFiniteTypeBudget;
  bool symbolic = false;
  std::vector<std::uint64_t> walks;  // u v t
  std::vector<int> dfs;              // u v max_len
  bool verify_list = false;
  bool bijection = false;
  bool roots = false;
  std::string format = "text";

  int run() const {
    const auto spec = diagram.spec();
    cc::ExchangeMatrix b;
    try {
      b = cc::dynkin_exchange_matrix(spec);
    } catch (const cc::Error& e) {
      throw Failure{kUsage, e.what()};
    }
    cc::EnumerateOptions opts;
    opts.budget = budget;
    opts.symbolic = symbolic || verify_list;
    const auto g = cc::enumerate_exchange_graph(b, opts);
    const std::string type = cc::DynkinType{spec.family, spec.rank}.name();

    cc::Json j{{"type", type},
               {"rank", g.rank},
               {"vertices", g.size()},
               {"labeled_seeds", g.labeled_seed_count().get_str()},
               {"regular", cc::is_regular(g)},
               {"connected", cc::is_connected(g)},
               {"fingerprint_prime", g.prime},
               {"point_seed", opts.point_seed},
               {"point", g.point}};
    std::ostringstream text;
    text << type << " exchange graph\n"
         << "vertices " << g.size() << "\nlabeled seeds " << g.labeled_seed_count().get_str() << "\nregular "
         << (cc::is_regular(g) ? "yes" : "no") << "\nconnected " << (cc::is_connected(g) ? "yes" : "no")
         << "\nfingerprints mod " << g.prime << " at point seed " << opts.point_seed << "\n";

    if (!walks.empty()) {
      if (walks.size() != 3) throw Failure{kUsage, "--walks takes U V T"};
      const auto c = cc::path_count(g, static_cast<int>(walks[0]), static_cast<int>(walks[1]), walks[2]);
      j["walks"] = {{"u", walks[0]}, {"v", walks[1]}, {"t", walks[2]}, {"count", c.get_str()}};
      text << "walks " << walks[0] << " -> " << walks[1] << " of length " << walks[2] << ": " << c.get_str() << "\n";
    }
    if (!dfs.empty()) {
      if (dfs.size() != 3) throw Failure{kUsage, "--dfs takes U V MAX_LEN"};
      const auto found = cc::dfs_paths(g, dfs[0], dfs[1], dfs[2]);
      j["paths"] = found.paths;
      j["truncated"] = found.truncated;
      text << found.paths.size() << " simple paths " << dfs[0] << " -> " << dfs[1] << " up to length " << dfs[2]
           << (found.truncated ? " (truncated)" : "") << "\n";
      for (const auto& p : found.paths) {
        text << " ";
        for (int v : p) text << " " << v;
        text << "\n";
      }
    }
    if (verify_list) {
      const auto rep = cc::verify_seed_list_A3(g);
      j["seed_list"] = {{"bijection", rep.bijection}, {"listed_of_vertex", rep.listed_of_vertex}};
      text << rep.to_string();
    }
    if (bijection) {
      const auto rep = cc::check_denominator_bijection(b, budget);
      j["denominator_bijection"] = rep.ok();
      text << rep.to_string();
    }
    if (roots) {
      const auto rs = cc::generate_root_system(cc::cartan_counterpart(b));
      const auto ax = cc::check_root_axioms(rs);
      j["roots"] = {{"count", rs.roots.size()}, {"positive", rs.positive.size()},
                    {"almost_positive", rs.almost_positive.size()}, {"axioms", ax.ok()}};
      text << "roots " << rs.roots.size() << ", positive " << rs.positive.size() << ", almost positive "
           << rs.almost_positive.size() << ", axioms " << (ax.ok() ? "hold" : "FAIL") << "\n";
    }

    if (format == "json") {
      std::cout << json_line(j);
    } else if (format == "csv") {
      std::cout << "vertex,fingerprints,neighbors\n";
      for (std::size_t v = 0; v < g.size(); ++v) {
        std::cout << v << ",\"";
        for (std::size_t i = 0; i < g.vertices[v].fingerprints.size(); ++i)
          std::cout << (i ? " " : "") << g.vertices[v].fingerprints[i];
        std::cout << "\",\"";
        for (std::size_t k = 0; k < g.neighbors[v].size(); ++k) std::cout << (k ? " " : "") << g.neighbors[v][k];
        std::cout << "\"\n";
      }
    } else {
      std::cout << text.str();
    }
    return kOk;
  }
};

struct ProbeCmd {
  std::vector<std::string> types;  // e.g. A3 D4
  bool no_enumerate = false;
  std::size_t budget = cc::kDefaultFiniteTypeBudget;
  std::string format = "text";

  std::vector<cc::DynkinType> selected() const {
    if (types.empty()) {
      auto all = cc::finite_types(2, 8, true);
      for (auto t : {cc::DynkinType{cc::Family::E, 6}, cc::DynkinType{cc::Family::E, 7}, cc::DynkinType{cc::Family::E, 8},
                     cc::DynkinType{cc::Family::F, 4}, cc::DynkinType{cc::Family::G, 2}})
        all.push_back(t);
      return all;
    }
    std::vector<cc::DynkinType> out;
    for (const auto& s : types) {
      try {
        if (s.size() < 2) throw cc::Error(cc::ErrorCode::InvalidSpec, "type looks like A3");
        const cc::Family f = cc::parse_family(s.substr(0, 1));
        const int r = std::stoi(s.substr(1));
        cc::validate_rank(f, r);
        out.push_back({f, r});
      } catch (const std::exception& e) {
        throw Failure{kUsage, "bad type '" + s + "': " + e.what()};
      }
    }
    return out;
  }

  int run() const {
    std::vector<cc::ProbabilityRow> rows;
    for (const auto& t : selected()) {
      if (no_enumerate) {
        rows.push_back(cc::key_recovery_probability(t.family, t.rank, nullptr));
        continue;
      }
      cc::EnumerateOptions opts;
      opts.budget = budget;
      const auto g = cc::enumerate_exchange_graph(cc::dynkin_exchange_matrix({t.family, t.rank, std::nullopt}), opts);
      rows.push_back(cc::key_recovery_probability(t.family, t.rank, &g));
    }
    if (format == "csv") {
      std::cout << cc::probability_report_csv(rows);
    } else if (format == "json") {
      cc::Json arr = cc::Json::array();
      auto opt = [](const auto& v) { return v ? cc::Json(v->get_str()) : cc::Json(nullptr); };
      for (const auto& r : rows) {
        cc::Json row{{"type", r.type.name()},
                     {"nc_enumerated", opt(r.nc_enumerated)},
                     {"nc_closed_form", opt(r.nc_closed_form)},
                     {"labeled_seeds", opt(r.labeled_seeds)},
                     {"probability", opt(r.probability)},
                     {"closed_form", opt(r.closed_form)},
                     {"flags", r.flags},
                     {"notes", r.notes}};
        const auto m = r.match();
        row["match"] = m ? cc::Json(*m) : cc::Json(nullptr);
        row["published"] = r.published ? cc::Json(*r.published) : cc::Json(nullptr);
        arr.push_back(row);
      }
      std::cout << json_line({{"rows", arr}, {"fingerprint_prime", cc::kFingerprintPrime},
                              {"point_seed", cc::kFingerprintSeed}});
    } else {
      std::cout << cc::probability_report_text(rows);
    }
    return kOk;
  }
};

struct SelftestCmd {
  int involution_trials = 200;
  int roundtrip_trials = 200;
  std::optional<std::uint64_t> rng_seed;
  std::string format = "text";

  int run() const {
    cc::SelftestOptions opts;
    opts.involution_trials = involution_trials;
    opts.roundtrip_trials = roundtrip_trials;
    opts.seed = resolve_seed(rng_seed);
    const auto results = cc::run_selftest(opts);
    const bool ok = cc::all_passed(results);
    if (format == "json") {
      cc::Json arr = cc::Json::array();
      for (const auto& r : results)
        arr.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"ms", r.ms}});
      std::cout << json_line({{"rng_seed", opts.seed}, {"passed", ok}, {"checks", arr}});
    } else if (format == "csv") {
      std::cout << "check,passed,ms,detail\n";
      for (const auto& r : results)
        std::cout << r.name << ',' << (r.passed ? "yes" : "no") << ',' << r.ms << ",\"" << r.detail << "\"\n";
    } else {
      std::cout << "rng-seed " << opts.seed << "\n";
      for (const auto& r : results) std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    }
    if (!ok) {
      for (const auto& r : results)
        if (!r.passed) std::cerr << "selftest failed: " << r.name << "\n";
    }
    return ok ? kOk : kSelftestFailed;
  }
};

void add_format(CLI::App* app, std::string& format) {
  app->add_option("--format", format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster-algebra cipher over GF(p^r) with exchange-graph analysis"};
  app.require_subcommand(1);

  ParamsCmd params_cmd;
  auto* params = app.add_subcommand("params", "write a system parameter file");
  params_cmd.diagram.add_to(params);
  params->add_option("--p", params_cmd.p, "field characteristic")->capture_default_str();
  params->add_option("--f", params_cmd.f, "modulus coefficients, ascending, comma separated (default: first irreducible)")
      ->delimiter(',');
  params->add_option("-o,--out", params_cmd.out, "output file (default stdout)");

  KeygenCmd keygen_cmd;
  auto* keygen = app.add_subcommand("keygen", "generate a valid secret key");
  keygen->add_option("--params", keygen_cmd.params_path, "parameter file")->required();
  keygen->add_option("--length", keygen_cmd.length, "mutation sequence length")->capture_default_str();
  keygen->add_option("--rng-seed", keygen_cmd.rng_seed, "seed; fresh entropy (reported) when absent");
  keygen->add_option("-o,--out", keygen_cmd.out, "key file (default stdout)");
  add_format(keygen, keygen_cmd.format);

  EncryptCmd encrypt_cmd;
  auto* encrypt = app.add_subcommand("encrypt", "encrypt an integer or letters");
  encrypt->add_option("--params", encrypt_cmd.params_path, "parameter file")->required();
  encrypt->add_option("--key", encrypt_cmd.key_path, "key file")->required();
  encrypt->add_option("--message", encrypt_cmd.message, "integer, letter, or letters (one record each)");
  encrypt->add_option("--message-file", encrypt_cmd.message_file, "read the message from a file");
  encrypt->add_flag("--reference-path", encrypt_cmd.reference, "encrypt by symbolic substitution instead");
  encrypt->add_option("-o,--out", encrypt_cmd.out, "ciphertext file (default stdout)");
  add_format(encrypt, encrypt_cmd.format);

  DecryptCmd decrypt_cmd;
  auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext file");
  decrypt->add_option("--ciphertext", decrypt_cmd.ciphertext_path, "ciphertext file")->required();
  decrypt->add_option("--key", decrypt_cmd.key_path, "key file")->required();
  decrypt->add_option("--params", decrypt_cmd.params_path, "check the embedded parameters against this file");
  add_format(decrypt, decrypt_cmd.format);

  GraphCmd graph_cmd;
  auto* graph = app.add_subcommand("graph", "enumerate an exchange graph");
  graph_cmd.diagram.add_to(graph);
  graph->add_option("--budget", graph_cmd.budget, "vertex budget")->capture_default_str();
  graph->add_flag("--symbolic", graph_cmd.symbolic, "carry cluster variables symbolically");
  graph->add_option("--walks", graph_cmd.walks, "U V T: number of walks of length T")->expected(3);
  graph->add_option("--dfs", graph_cmd.dfs, "U V MAX_LEN: simple paths")->expected(3);
  graph->add_flag("--verify-list", graph_cmd.verify_list, "match against the published A3 cluster list");
  graph->add_flag("--bijection", graph_cmd.bijection, "denominator vectors against almost positive roots");
  graph->add_flag("--roots", graph_cmd.roots, "root system of the Cartan counterpart");
  add_format(graph, graph_cmd.format);

  ProbeCmd probe_cmd;
  auto* probe = app.add_subcommand("probe", "key recovery probability report");
  probe->add_option("types", probe_cmd.types, "types such as A3 D4 (default: all classical up to rank 8, E, F, G)");
  probe->add_flag("--no-enumerate", probe_cmd.no_enumerate, "closed forms only");
  probe->add_option("--budget", probe_cmd.budget, "vertex budget")->capture_default_str();
  add_format(probe, probe_cmd.format);

  SelftestCmd selftest_cmd;
  auto* selftest = app.add_subcommand("selftest", "replay the worked examples and property suites");
  selftest->add_option("--involution-trials", selftest_cmd.involution_trials)->capture_default_str();
  selftest->add_option("--roundtrip-trials", selftest_cmd.roundtrip_trials)->capture_default_str();
  selftest->add_option("--rng-seed", selftest_cmd.rng_seed, "seed; fresh entropy (reported) when absent");
  add_format(selftest, selftest_cmd.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (params->parsed()) return params_cmd.run();
    if (keygen->parsed()) return keygen_cmd.run();
    if (encrypt->parsed()) return encrypt_cmd.run();
    if (decrypt->parsed()) return decrypt_cmd.run();
    if (graph->parsed()) return graph_cmd.run();
    if (probe->parsed()) return probe_cmd.run();
    if (selftest->parsed()) return selftest_cmd.run();
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const cc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsage;
}
