#pragma once

// Double-unicast networks: two sources s1, s2 sending to sinks t1, t2 over a
// directed acyclic graph of unit-capacity edges. Random linear network coding
// turns the network into a linear deterministic interference channel whose
// matrix dimensions and ranks are the min-cuts listed below.

#include "detic/channel.hpp"
#include "detic/errors.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>
#include <boost/graph/topological_sort.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace detic {

struct Network {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // parallel edges allowed
  std::size_t s1 = 0;
  std::size_t s2 = 0;
  std::size_t t1 = 0;
  std::size_t t2 = 0;
};

/// Node indices in a topological order. Throws input_error on a cycle.
inline std::vector<std::size_t> topological_order(const Network& net) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  Graph g(net.nodes.size());
  for (auto [u, v] : net.edges) boost::add_edge(u, v, g);
  std::vector<std::size_t> rev;
  try {
    boost::topological_sort(g, std::back_inserter(rev));
  } catch (const boost::not_a_dag&) {
    throw input_error("network is not acyclic");
  }
  return {rev.rbegin(), rev.rend()};
}

inline void validate_network(const Network& net) {
  const auto n = net.nodes.size();
  for (auto [u, v] : net.edges)
    if (u >= n || v >= n) throw input_error("edge endpoint out of range");
  for (auto r : {net.s1, net.s2, net.t1, net.t2})
    if (r >= n) throw input_error("role node out of range");
  const std::vector<std::size_t> roles{net.s1, net.s2, net.t1, net.t2};
  for (std::size_t i = 0; i < roles.size(); ++i)
    for (std::size_t j = i + 1; j < roles.size(); ++j)
      if (roles[i] == roles[j]) throw input_error("s1, s2, t1, t2 must be four distinct nodes");
  topological_order(net);
}

/// {"nodes": [...], "edges": [["u","v"], ...], "s1": .., "s2": .., "t1": .., "t2": ..}
inline Network parse_network(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("network file is not valid JSON: ") + e.what());
  }
  Network net;
  std::map<std::string, std::size_t> index;
  auto lookup = [&](const nlohmann::json& name) {
    if (!name.is_string()) throw input_error("node names must be strings");
    auto it = index.find(name.get<std::string>());
    if (it == index.end()) throw input_error("unknown node \"" + name.get<std::string>() + "\"");
    return it->second;
  };
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
    throw input_error("network file needs a \"nodes\" array");
  for (const auto& name : j["nodes"]) {
    if (!name.is_string()) throw input_error("node names must be strings");
    auto s = name.get<std::string>();
    if (!index.emplace(s, net.nodes.size()).second) throw input_error("duplicate node \"" + s + "\"");
    net.nodes.push_back(s);
  }
  if (!j.contains("edges") || !j["edges"].is_array()) throw input_error("network file needs an \"edges\" array");
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw input_error("each edge must be a [tail, head] pair");
    net.edges.emplace_back(lookup(e[0]), lookup(e[1]));
  }
  for (const char* role : {"s1", "s2", "t1", "t2"})
    if (!j.contains(role)) throw input_error(std::string("missing role node \"") + role + "\"");
  net.s1 = lookup(j["s1"]);
  net.s2 = lookup(j["s2"]);
  net.t1 = lookup(j["t1"]);
  net.t2 = lookup(j["t2"]);
  validate_network(net);
  return net;
}

inline std::string network_to_json(const Network& net) {
  nlohmann::json j;
  j["nodes"] = net.nodes;
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : net.edges) j["edges"].push_back({net.nodes[u], net.nodes[v]});
  j["s1"] = net.nodes[net.s1];
  j["s2"] = net.nodes[net.s2];
  j["t1"] = net.nodes[net.t1];
  j["t2"] = net.nodes[net.t2];
  return j.dump();
}

/// Min-cut values k_{A-B}: edge-disjoint paths from source set A to sink set B.
struct MinCuts {
  std::int64_t k11 = 0;    // s1 -> t1
  std::int64_t k12 = 0;    // s1 -> t2
  std::int64_t k21 = 0;    // s2 -> t1
  std::int64_t k22 = 0;    // s2 -> t2
  std::int64_t k1_12 = 0;  // s1 -> {t1, t2}
  std::int64_t k2_12 = 0;  // s2 -> {t1, t2}
  std::int64_t k12_1 = 0;  // {s1, s2} -> t1
  std::int64_t k12_2 = 0;  // {s1, s2} -> t2
  friend bool operator==(const MinCuts&, const MinCuts&) = default;
};

inline std::int64_t max_flow(const Network& net, const std::vector<std::size_t>& sources,
                             const std::vector<std::size_t>& sinks) {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<boost::edge_capacity_t, long,
                      boost::property<boost::edge_residual_capacity_t, long,
                                      boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;
  const std::size_t n = net.nodes.size();
  Graph g(n + 2);
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto link = [&](std::size_t u, std::size_t v, long c) {
    auto e = boost::add_edge(u, v, g).first;
    auto r = boost::add_edge(v, u, g).first;
    cap[e] = c;
    cap[r] = 0;
    rev[e] = r;
    rev[r] = e;
  };
  const long unbounded = static_cast<long>(net.edges.size()) + 1;
  for (auto [u, v] : net.edges) link(u, v, 1);
  for (auto s : sources) link(n, s, unbounded);
  for (auto t : sinks) link(t, n + 1, unbounded);
  return boost::edmonds_karp_max_flow(g, n, n + 1);
}

inline MinCuts min_cuts(const Network& net) {
  MinCuts k;
  k.k11 = max_flow(net, {net.s1}, {net.t1});
  k.k12 = max_flow(net, {net.s1}, {net.t2});
  k.k21 = max_flow(net, {net.s2}, {net.t1});
  k.k22 = max_flow(net, {net.s2}, {net.t2});
  k.k1_12 = max_flow(net, {net.s1}, {net.t1, net.t2});
  k.k2_12 = max_flow(net, {net.s2}, {net.t1, net.t2});
  k.k12_1 = max_flow(net, {net.s1, net.s2}, {net.t1});
  k.k12_2 = max_flow(net, {net.s1, net.s2}, {net.t2});
  return k;
}

/// The rank counterparts of the min-cuts for a given channel:
/// rank H11 <-> k11, rank H12 <-> k21, rank [H11 H12] <-> k12_1, and so on.
template <Field F>
MinCuts channel_ranks(const ChannelQuadruple<F>& ch) {
  auto r = [](const auto& m) { return static_cast<std::int64_t>(rank(m)); };
  MinCuts k;
  k.k11 = r(ch.h11());
  k.k21 = r(ch.h12());
  k.k12 = r(ch.h21());
  k.k22 = r(ch.h22());
  k.k12_1 = r(hconcat(ch.h11(), ch.h12()));
  k.k12_2 = r(hconcat(ch.h21(), ch.h22()));
  k.k1_12 = r(vconcat(ch.h11(), ch.h21()));
  k.k2_12 = r(vconcat(ch.h12(), ch.h22()));
  return k;
}

inline std::string cuts_to_string(const MinCuts& k) {
  return "k11=" + std::to_string(k.k11) + " k12=" + std::to_string(k.k12) + " k21=" + std::to_string(k.k21) +
         " k22=" + std::to_string(k.k22) + " k1-12=" + std::to_string(k.k1_12) + " k2-12=" + std::to_string(k.k2_12) +
         " k12-1=" + std::to_string(k.k12_1) + " k12-2=" + std::to_string(k.k12_2);
}

struct TransferRealization {
  FieldSpec field;
  std::uint64_t seed = 0;
  unsigned attempts = 0;
  MinCuts cuts;
  /// Local coefficients per edge, in edge order: one per input of the tail
  /// (injected source symbols first, then incoming edges in edge order).
  std::vector<std::vector<PrimeField::value_type>> local;
  std::vector<std::size_t> rows1;  // incoming edges of t1 kept after reduction
  std::vector<std::size_t> rows2;
  ChannelQuadruple<PrimeField> channel;
};

namespace detail {

struct CodingRun {
  std::vector<std::vector<PrimeField::value_type>> local;
  Matrix<PrimeField> g1{PrimeField(2), 0, 0};  // one row per incoming edge of t1, over F^(m1+m2)
  Matrix<PrimeField> g2{PrimeField(2), 0, 0};
};

inline CodingRun run_rlnc(const Network& net, const PrimeField& f, std::size_t m1, std::size_t m2,
                          std::mt19937_64& rng) {
  const std::size_t dim = m1 + m2;
  const std::size_t n = net.nodes.size();
  std::vector<std::vector<std::size_t>> in_edges(n);
  for (std::size_t e = 0; e < net.edges.size(); ++e) in_edges[net.edges[e].second].push_back(e);
  auto injected = [&](std::size_t v) -> std::size_t { return v == net.s1 ? m1 : v == net.s2 ? m2 : 0; };

  CodingRun run;
  for (auto [u, v] : net.edges) {
    std::vector<PrimeField::value_type> c(injected(u) + in_edges[u].size());
    for (auto& x : c) x = f.random(rng);
    run.local.push_back(std::move(c));
  }

  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t e = 0; e < net.edges.size(); ++e) out_edges[net.edges[e].first].push_back(e);
  std::vector<std::vector<PrimeField::value_type>> global(net.edges.size(),
                                                          std::vector<PrimeField::value_type>(dim, f.zero()));
  for (auto u : topological_order(net)) {
    std::vector<std::vector<PrimeField::value_type>> inputs;
    const std::size_t offset = u == net.s2 ? m1 : 0;
    for (std::size_t i = 0; i < injected(u); ++i) {
      std::vector<PrimeField::value_type> unit(dim, f.zero());
      unit[offset + i] = f.one();
      inputs.push_back(std::move(unit));
    }
    for (auto e : in_edges[u]) inputs.push_back(global[e]);
    for (auto e : out_edges[u])
      for (std::size_t i = 0; i < inputs.size(); ++i)
        for (std::size_t d = 0; d < dim; ++d)
          global[e][d] = f.add(global[e][d], f.mul(run.local[e][i], inputs[i][d]));
  }

  auto observe = [&](std::size_t t) {
    Matrix<PrimeField> g(f, in_edges[t].size(), dim);
    for (std::size_t r = 0; r < in_edges[t].size(); ++r)
      for (std::size_t d = 0; d < dim; ++d) g(r, d) = global[in_edges[t][r]][d];
    return g;
  };
  run.g1 = observe(net.t1);
  run.g2 = observe(net.t2);
  return run;
}

}  // namespace detail

/// Every rank that must match a min-cut for the channel to be a faithful
/// realization of the network.
inline bool ranks_match_cuts(const ChannelQuadruple<PrimeField>& ch, const MinCuts& k) {
  return channel_ranks(ch) == k && static_cast<std::int64_t>(ch.n1()) == k.k12_1 &&
         static_cast<std::int64_t>(ch.n2()) == k.k12_2 && static_cast<std::int64_t>(ch.m1()) == k.k1_12 &&
         static_cast<std::int64_t>(ch.m2()) == k.k2_12;
}

inline constexpr unsigned default_rlnc_budget = 32;

/// Random linear network code over F_p. Sources inject as many symbols as
/// their min-cut to both sinks; each sink keeps a maximal independent subset
/// of its incoming edges. Redraws with a fresh (seed, attempt) stream until
/// every Table-1 rank equals its min-cut.
inline TransferRealization rlnc_transfer(const Network& net, const FieldSpec& field, std::uint64_t seed,
                                         unsigned retry_budget = default_rlnc_budget) {
  if (field.kind != FieldSpec::Kind::prime) throw input_error("network coding needs a prime field");
  validate_network(net);
  const PrimeField f(field.modulus);
  const auto cuts = min_cuts(net);
  const auto m1 = static_cast<std::size_t>(cuts.k1_12);
  const auto m2 = static_cast<std::size_t>(cuts.k2_12);
  std::string last;
  for (unsigned attempt = 0; attempt < retry_budget; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U), attempt, 0x6e63U};
    std::mt19937_64 rng(seq);
    auto run = detail::run_rlnc(net, f, m1, m2, rng);
    auto rows1 = pivot_rows(run.g1);
    auto rows2 = pivot_rows(run.g2);
    auto g1 = run.g1.select_rows(rows1);
    auto g2 = run.g2.select_rows(rows2);
    ChannelQuadruple<PrimeField> ch(g1.cols_range(0, m1), g1.cols_range(m1, m2), g2.cols_range(0, m1),
                                    g2.cols_range(m1, m2));
    if (ranks_match_cuts(ch, cuts))
      return {field, seed, attempt + 1, cuts, std::move(run.local), std::move(rows1), std::move(rows2), std::move(ch)};
    last = cuts_to_string(channel_ranks(ch));
  }
  throw budget_exhausted("transfer ranks fall short of the min-cuts after " + std::to_string(retry_budget) +
                         " draws (achieved " + last + "); try a larger field");
}

/// Achievable region of the network-coded channel. The constants of the four
/// cut-expressible bounds are cross-checked against the min-cuts.
template <Field F>
RateRegion nc_region(const ChannelQuadruple<F>& ch, const MinCuts& k) {
  const auto n1 = static_cast<std::int64_t>(ch.n1());
  const auto n2 = static_cast<std::int64_t>(ch.n2());
  const auto m1 = static_cast<std::int64_t>(ch.m1());
  const auto m2 = static_cast<std::int64_t>(ch.m2());
  const auto r = channel_ranks(ch);
  const bool ok = r.k11 == k.k11 && r.k22 == k.k22 && n1 + m2 - r.k21 == k.k12_1 + k.k2_12 - k.k21 &&
                  n2 + m1 - r.k12 == k.k12_2 + k.k1_12 - k.k12;
  if (!ok)
    throw verification_error("rank constants disagree with min-cuts: ranks " + cuts_to_string(r) + ", cuts " +
                             cuts_to_string(k));
  return capacity_region(ch);
}

inline RateRegion nc_region(const TransferRealization& real) { return nc_region(real.channel, real.cuts); }

/// Earlier double-unicast schemes, as functions of the min-cuts only.
struct BaselineRegions {
  RateRegion region1;
  RateRegion region2p;
  RateRegion region3p;
  RateRegion region4;
  RateRegion region5;
};

inline BaselineRegions baseline_regions(const MinCuts& k) {
  auto pos = [](std::int64_t v) { return std::max<std::int64_t>(v, 0); };
  const auto joint = std::min(k.k12_1, k.k12_2);
  return {
      RateRegion({{1, 0, pos(k.k12_1 - k.k21)}, {0, 1, pos(k.k12_2 - k.k12)}}),
      RateRegion({{1, 0, k.k11}, {0, 1, pos(joint - k.k12)}, {1, 1, k.k12_1}}),
      RateRegion({{1, 0, pos(joint - k.k21)}, {0, 1, k.k22}, {1, 1, k.k12_2}}),
      RateRegion({{1, 0, k.k11}, {2, 1, k.k22}}),
      RateRegion({{1, 2, k.k11}, {0, 1, k.k22}}),
  };
}

struct ContainmentReport {
  RateRegion proposed;
  RateRegion hull123;  // convex hull of Regions 1, 2', 3'
  RateRegion hull45;   // convex hull of Regions 4, 5
  bool strict123 = false;
  bool strict45 = false;
  bool strict_union = false;  // some vertex of `proposed` lies outside both hulls
  std::optional<RatePair> witness123;  // vertex of `proposed` outside hull123
  std::optional<RatePair> witness45;
  std::optional<RatePair> witness_union;
};

/// Throws verification_error if a baseline hull pokes out of the region.
inline ContainmentReport containment_check(const RateRegion& proposed, const MinCuts& k) {
  auto b = baseline_regions(k);
  ContainmentReport rep;
  rep.proposed = proposed;
  rep.hull123 = convex_hull_union({b.region1, b.region2p, b.region3p});
  rep.hull45 = convex_hull_union({b.region4, b.region5});
  auto check = [&](const RateRegion& hull, const char* name) {
    for (const auto& v : region_vertices(hull))
      if (!region_contains(proposed, v))
        throw verification_error(std::string(name) + " vertex (" + rate_to_string(v.r1) + ", " +
                                 rate_to_string(v.r2) + ") lies outside the proposed region");
  };
  check(rep.hull123, "baseline hull 1/2'/3'");
  check(rep.hull45, "baseline hull 4/5");
  for (const auto& v : region_vertices(proposed)) {
    if (!rep.witness123 && !region_contains(rep.hull123, v)) rep.witness123 = v;
    if (!rep.witness45 && !region_contains(rep.hull45, v)) rep.witness45 = v;
    if (!rep.witness_union && !region_contains(rep.hull123, v) && !region_contains(rep.hull45, v))
      rep.witness_union = v;
  }
  rep.strict_union = rep.witness_union.has_value();
  rep.strict123 = rep.witness123.has_value();
  rep.strict45 = rep.witness45.has_value();
  return rep;
}

inline ContainmentReport containment_check(const TransferRealization& real) {
  return containment_check(nc_region(real), real.cuts);
}

/// Random DAG whose edges respect a shuffled node order. The two earliest
/// nodes are the sources and the two latest the sinks.
template <class Rng>
Network random_network(Rng& rng, std::size_t max_nodes = 12, std::size_t max_edges = 24) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(4, std::max<std::size_t>(4, max_nodes))(rng);
  Network net;
  for (std::size_t i = 0; i < n; ++i) net.nodes.push_back("v" + std::to_string(i));
  std::vector<std::size_t> pos(n);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::shuffle(pos.begin() + 2, pos.end() - 2, rng);
  if (std::bernoulli_distribution(0.5)(rng)) std::swap(pos[0], pos[1]);
  if (std::bernoulli_distribution(0.5)(rng)) std::swap(pos[n - 1], pos[n - 2]);
  net.s1 = pos[0];
  net.s2 = pos[1];
  net.t1 = pos[n - 1];
  net.t2 = pos[n - 2];
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_edges)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (net.edges.size() < m) {
    auto a = pick(rng);
    auto b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    net.edges.emplace_back(pos[a], pos[b]);
  }
  return net;
}

}  // namespace detic
