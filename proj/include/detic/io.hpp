#pragma once

// JSON file formats.
//
// Channel:  {"field": {"type": "prime", "p": 7} | {"type": "rational"},
//            "m1": .., "m2": .., "n1": .., "n2": ..,
//            "H11": [[..], ..], "H12": .., "H21": .., "H22": ..}
//           entries are integers or "a/b" strings.
// Region:   {"inequalities": [{"a1", "a2", "b"}], "vertices": [["r1", "r2"]],
//            "provenance": {"command", "seed", "input_hash"}}
// Injection (prime channels): {"E1c", "E1p", "E2c", "E2p": matrices,
//            "dec12": {"U": .., "V": ..}, "dec21": {"U": .., "V": ..}}

#include "detic/netcode.hpp"
#include "detic/ratesplit.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

namespace detic::io {

using json = nlohmann::json;
using AnyChannel = std::variant<ChannelQuadruple<PrimeField>, ChannelQuadruple<RationalField>>;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write " + path);
  out << text;
}

/// 64-bit FNV-1a of the raw bytes, as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(what + " is not valid JSON: " + e.what());
  }
}

/// Integer or "a/b" entry as an exact rational.
inline BigRational parse_entry(const json& v) {
  if (v.is_number_integer()) return BigRational(v.get<std::int64_t>());
  if (!v.is_string()) throw input_error("matrix entries must be integers or \"a/b\" strings");
  const auto s = v.get<std::string>();
  try {
    const auto slash = s.find('/');
    BigInt num(s.substr(0, slash));
    BigInt den = slash == std::string::npos ? BigInt(1) : BigInt(s.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in \"" + s + "\"");
    return BigRational(num, den);
  } catch (const std::runtime_error&) {
    throw input_error("cannot parse matrix entry \"" + s + "\"");
  }
}

inline PrimeField::value_type to_field(const PrimeField& f, const BigRational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const BigInt p(f.modulus());
  auto reduce = [&](const BigInt& v) {
    BigInt r = v % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  };
  const auto den = reduce(denominator(x));
  if (den == 0) throw input_error("entry denominator vanishes modulo " + std::to_string(f.modulus()));
  return f.div(reduce(numerator(x)), den);
}

inline RationalField::value_type to_field(const RationalField&, const BigRational& x) { return x; }

template <Field F>
Matrix<F> parse_matrix(const F& f, const json& j, std::size_t rows, std::size_t cols, const std::string& name) {
  if (!j.is_array() || j.size() != rows) throw input_error(name + " must have " + std::to_string(rows) + " rows");
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw input_error(name + " row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = to_field(f, parse_entry(j[i][c]));
  }
  return m;
}

template <Field F>
json matrix_to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if constexpr (std::is_same_v<F, PrimeField>)
        row.push_back(m(i, c));
      else
        row.push_back(m.field().to_string(m(i, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::size_t get_dim(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() < 0)
    throw input_error(std::string("channel file needs a nonnegative integer \"") + key + "\"");
  return j[key].get<std::size_t>();
}

inline FieldSpec parse_field(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw input_error("field must be {\"type\": \"prime\"|\"rational\"}");
  const auto type = j["type"].get<std::string>();
  if (type == "rational") return FieldSpec::rational();
  if (type != "prime") throw input_error("unknown field type \"" + type + "\"");
  if (!j.contains("p") || !j["p"].is_number_unsigned()) throw input_error("prime field needs an integer \"p\"");
  const auto p = j["p"].get<std::uint64_t>();
  if (!is_prime(p) || p >= PrimeField::max_modulus) throw input_error(std::to_string(p) + " is not a supported prime");
  return FieldSpec::prime(p);
}

inline AnyChannel parse_channel(std::string_view text) {
  const json j = parse_json(text, "channel file");
  if (!j.is_object() || !j.contains("field")) throw input_error("channel file needs a \"field\"");
  const auto spec = parse_field(j["field"]);
  const auto m1 = get_dim(j, "m1"), m2 = get_dim(j, "m2"), n1 = get_dim(j, "n1"), n2 = get_dim(j, "n2");
  for (const char* key : {"H11", "H12", "H21", "H22"})
    if (!j.contains(key)) throw input_error(std::string("channel file needs \"") + key + "\"");
  auto build = [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    return ChannelQuadruple<F>(parse_matrix(f, j["H11"], n1, m1, "H11"), parse_matrix(f, j["H12"], n1, m2, "H12"),
                               parse_matrix(f, j["H21"], n2, m1, "H21"), parse_matrix(f, j["H22"], n2, m2, "H22"));
  };
  if (spec.is_prime()) return build(PrimeField(spec.modulus));
  return build(RationalField());
}

template <Field F>
std::string channel_to_json(const ChannelQuadruple<F>& ch) {
  json j;
  const auto spec = ch.field().spec();
  j["field"] = spec.is_prime() ? json{{"type", "prime"}, {"p", spec.modulus}} : json{{"type", "rational"}};
  j["m1"] = ch.m1();
  j["m2"] = ch.m2();
  j["n1"] = ch.n1();
  j["n2"] = ch.n2();
  j["H11"] = matrix_to_json(ch.h11());
  j["H12"] = matrix_to_json(ch.h12());
  j["H21"] = matrix_to_json(ch.h21());
  j["H22"] = matrix_to_json(ch.h22());
  return j.dump();
}

struct Provenance {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::string input_hash;
};

inline json region_json(const RateRegion& reg) {
  json ineqs = json::array();
  for (const auto& q : reg.inequalities()) ineqs.push_back({{"a1", q.a1}, {"a2", q.a2}, {"b", q.b}});
  json verts = json::array();
  for (const auto& v : region_vertices(reg)) verts.push_back({rate_to_string(v.r1), rate_to_string(v.r2)});
  return {{"inequalities", ineqs}, {"vertices", verts}};
}

inline json region_file(const RateRegion& reg, const Provenance& prov) {
  json j = region_json(reg);
  j["provenance"] = {{"command", prov.command},
                     {"seed", prov.seed ? json(*prov.seed) : json(nullptr)},
                     {"input_hash", "fnv1a:" + prov.input_hash}};
  return j;
}

inline Rate parse_rate(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rate(std::stoll(s));
    return Rate(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw input_error("bad rate \"" + s + "\"");
  }
}

struct RegionFileContents {
  RateRegion region;
  std::vector<RatePair> vertices;
};

inline RegionFileContents parse_region_file(std::string_view text) {
  const json j = parse_json(text, "region file");
  if (!j.contains("inequalities") || !j.contains("vertices")) throw input_error("region file needs inequalities and vertices");
  std::vector<Inequality> ineqs;
  for (const auto& q : j["inequalities"]) ineqs.push_back({q.at("a1").get<std::int64_t>(), q.at("a2").get<std::int64_t>(), q.at("b").get<std::int64_t>()});
  std::vector<RatePair> verts;
  for (const auto& v : j["vertices"]) verts.push_back({parse_rate(v.at(0).get<std::string>()), parse_rate(v.at(1).get<std::string>())});
  return {RateRegion(std::move(ineqs)), std::move(verts)};
}

/// Decompositions and spreading matrices supplied by the user instead of
/// being constructed or drawn.
struct Injection {
  InterferenceDecomposition<PrimeField> dec12;
  InterferenceDecomposition<PrimeField> dec21;
  SpreadingMatrices<PrimeField> spread;
};

struct InjectedBases {
  InterferenceDecomposition<PrimeField> dec12;
  InterferenceDecomposition<PrimeField> dec21;
};

/// The "dec12" and "dec21" entries: {"U": n x n, "V": m x m}, W = U^T.
inline InjectedBases parse_injected_bases(std::string_view text, const ChannelQuadruple<PrimeField>& ch) {
  const json j = parse_json(text, "injection file");
  const auto& f = ch.field();
  auto dec = [&](const char* key, const Matrix<PrimeField>& h) {
    if (!j.contains(key) || !j[key].contains("U") || !j[key].contains("V"))
      throw input_error(std::string("injection file needs \"") + key + "\": {\"U\", \"V\"}");
    auto u = parse_matrix(f, j[key]["U"], h.rows(), h.rows(), std::string(key) + ".U");
    auto v = parse_matrix(f, j[key]["V"], h.cols(), h.cols(), std::string(key) + ".V");
    try {
      return decomposition_from_bases(h, u, v);
    } catch (const linalg_error& e) {
      throw input_error(std::string(key) + ": " + e.what());
    }
  };
  return {dec("dec12", ch.h12()), dec("dec21", ch.h21())};
}

/// Bases plus the "E1c", "E1p", "E2c", "E2p" entries sized for `split`.
inline Injection parse_injection(std::string_view text, const ChannelQuadruple<PrimeField>& ch, const RateSplit& split) {
  auto [dec12, dec21] = parse_injected_bases(text, ch);
  const json j = parse_json(text, "injection file");
  const auto& f = ch.field();
  auto e = [&](const char* key, std::size_t rows, std::int64_t cols) {
    const auto c = static_cast<std::size_t>(cols);
    if (rows == 0 || c == 0) {
      // nothing to spread; an absent key or an array of empty rows is fine
      if (j.contains(key))
        for (const auto& row : j[key])
          if (!row.is_array() || !row.empty()) throw input_error(std::string(key) + " must be empty for this split");
      return Matrix<PrimeField>(f, rows, c);
    }
    if (!j.contains(key)) throw input_error(std::string("injection file needs \"") + key + "\"");
    return parse_matrix(f, j[key], rows, c, key);
  };
  SpreadingMatrices<PrimeField> spread{e("E1c", dec21.rank, split.r1c), e("E1p", ch.m1() - dec21.rank, split.r1p),
                                       e("E2c", dec12.rank, split.r2c), e("E2p", ch.m2() - dec12.rank, split.r2p)};
  return {std::move(dec12), std::move(dec21), std::move(spread)};
}

inline json cuts_json(const MinCuts& k) {
  return {{"k11", k.k11},     {"k12", k.k12},     {"k21", k.k21},     {"k22", k.k22},
          {"k1_12", k.k1_12}, {"k2_12", k.k2_12}, {"k12_1", k.k12_1}, {"k12_2", k.k12_2}};
}

}  // namespace detic::io
