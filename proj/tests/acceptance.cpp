// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace detic;
using namespace detic::test;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << std::fixed << v;
  return s.str();
}

Outcome golden_region() {
  Stopwatch sw;
  std::ostringstream out;
  cli::cmd_region({data_path("f7_channel.json"), RegionForm::theorem, std::nullopt}, out);
  const double t = sw.seconds();
  auto file = io::parse_region_file(out.str());
  const bool ineqs = file.region.to_string() == "{R1 <= 2, R1 + R2 <= 3, 2R1 + R2 <= 4}";
  const bool verts = file.vertices == std::vector<RatePair>{{0, 0}, {2, 0}, {1, 2}, {0, 3}};
  return {ineqs && verts && t < 1.0, file.region.to_string() + ", " + std::to_string(file.vertices.size()) +
                                          " vertices, " + fmt(t) + " s"};
}

Outcome golden_codec() {
  const PrimeField f(7);
  const auto ch = f7_channel();
  const auto text = io::read_file(data_path("f7_inject.json"));
  const RateSplit split{1, 0, 1, 1};
  auto inj = io::parse_injection(text, ch, split);
  const auto codec = assemble_codec(ch, split, std::move(inj.dec12), std::move(inj.dec21), std::move(inj.spread));
  // expected linear forms in (d11, d21, d22)
  const auto x1 = PM::from_ints(f, {{3, 0, 0}, {2, 0, 0}});
  const auto x2 = PM::from_ints(f, {{0, 3, 3}, {0, 5, 1}, {0, 3, 0}});
  const auto y1 = PM::from_ints(f, {{6, 4, 0}, {5, 0, 0}});
  const auto y2 = PM::from_ints(f, {{3, 3, 3}, {5, 4, 0}, {5, 0, 0}});
  std::mt19937_64 rng(2024);
  std::size_t ok = 0;
  for (int t = 0; t < 10; ++t) {
    Symbols<PrimeField> d{f.random(rng), f.random(rng), f.random(rng)};
    auto tx = encode(codec, {d[0]}, {d[1], d[2]});
    auto rx = transmit(ch, tx.x1, tx.x2);
    auto o1 = decode_t1(codec, rx.y1);
    auto o2 = decode_t2(codec, rx.y2);
    const bool forms = tx.x1 == x1.apply(d) && tx.x2 == x2.apply(d) && rx.y1 == y1.apply(d) && rx.y2 == y2.apply(d);
    const bool decoded = o1.own() == Symbols<PrimeField>{d[0]} && o1.other_common == Symbols<PrimeField>{d[1]} &&
                         o2.own() == Symbols<PrimeField>{d[1], d[2]} && o2.other_common == Symbols<PrimeField>{d[0]};
    ok += forms && decoded;
  }
  return {ok == 10, std::to_string(ok) + "/10 message triples reproduce x1, x2, y1, y2 and decode exactly"};
}

Outcome region_forms() {
  Stopwatch sw;
  std::mt19937_64 rng(3);
  std::size_t n = 0, bad = 0;
  auto run = [&](const auto& f) {
    auto r = oracle::region_forms_suite(f, 1000, rng);
    n += r.instances;
    bad += r.violations;
  };
  for (std::uint64_t q : {2, 7, 257}) run(PrimeField(q));
  run(RationalField());
  const double t = sw.seconds();
  return {bad == 0 && t < 60, std::to_string(n) + " channels, " + std::to_string(bad) + " mismatches, " + fmt(t) + " s"};
}

Outcome jafar() {
  std::mt19937_64 rng(4);
  auto r = oracle::jafar_suite(65537, 500, rng);
  return {r.suite.ok(), std::to_string(r.shapes) + " shapes, " + std::to_string(r.suite.instances) + " channels, " +
                            std::to_string(r.suite.violations) + " mismatches"};
}

Outcome achievability() {
  Stopwatch sw;
  auto r = oracle::achievability_suite(257, 50, 5);
  const double t = sw.seconds();
  return {r.ok() && t < 120, std::to_string(r.instances) + " lattice points on 50 channels, " +
                                 std::to_string(r.violations) + " failures, " + fmt(t) + " s"};
}

Outcome rank_identity_suite() {
  std::mt19937_64 rng(6);
  std::size_t n = 0, bad = 0;
  auto run = [&](const auto& f) {
    auto r = oracle::rank_identity_suite(f, 1000, rng);
    n += r.instances;
    bad += r.violations;
  };
  for (std::uint64_t q : {2, 7, 257}) run(PrimeField(q));
  run(RationalField());
  auto s = oracle::subspace_suite(4, {2, 3});
  const auto c = oracle::subspace_count_check(4, 2)[2];
  return {bad == 0 && s.ok() && c.enumerated == 35,
          std::to_string(n) + " rank instances, " + std::to_string(bad) + " violations; " +
              std::to_string(s.instances) + " subspace counts, " + std::to_string(s.violations) +
              " mismatches, [4 2]_2 = " + std::to_string(c.enumerated)};
}

Outcome concat_trend() {
  auto reps = oracle::concat_suite(oracle::default_concat_spec(), {7, 101, 1009}, 2000, 7);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    const double floor = 1.0 - 5.0 / static_cast<double>(r.field.modulus);
    ok = ok && r.success_ci.lo >= floor;
    if (i > 0) ok = ok && r.failure_rate() < reps[i - 1].failure_rate();
    detail += (i ? "; " : "") + r.field.to_string() + " success " + fmt(r.success_rate(), 4) + " [" +
              fmt(r.success_ci.lo, 4) + ", " + fmt(r.success_ci.hi, 4) + "] vs floor " + fmt(floor, 4);
  }
  return {ok, detail};
}

Outcome entropy() {
  std::mt19937_64 rng(8);
  auto r = oracle::entropy_suite({2, 3, 5, 7, 11, 13, 257}, 100, rng);
  return {r.suite.ok(), std::to_string(r.pairs) + " (q, l) pairs, " + std::to_string(r.suite.instances) +
                            " instances, " + std::to_string(r.suite.violations) + " violations"};
}

const oracle::NetworkReport& network_run() {
  static const auto rep = oracle::network_suite(500, 65537, 9);
  return rep;
}

Outcome containment() {
  const auto& r = network_run();
  auto relay = containment_check(
      rlnc_transfer(parse_network(io::read_file(data_path("relay_net.json"))), FieldSpec::prime(65537), 1));
  return {r.containment_violations == 0 && r.budget_failures == 0 && relay.strict123 && relay.strict45,
          std::to_string(r.instances) + " networks, " + std::to_string(r.containment_violations) +
              " containment violations, strict on " + std::to_string(r.strict_both) + "; relay strict: " +
              (relay.strict123 && relay.strict45 ? "yes" : "no")};
}

Outcome table_one() {
  const auto& r = network_run();
  return {r.table1_violations == 0 && r.budget_failures == 0,
          std::to_string(r.instances) + " networks, " + std::to_string(r.table1_violations) + " rank/cut mismatches, " +
              std::to_string(r.budget_failures) + " budget failures"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden region over F7", golden_region},
      {"golden codec over F7", golden_codec},
      {"two region forms agree", region_forms},
      {"generic channels match the MIMO DoF region", jafar},
      {"constructive achievability", achievability},
      {"rank identities and subspace counts", rank_identity_suite},
      {"concatenated full-rank probability trend", concat_trend},
      {"conditional entropy bound", entropy},
      {"baseline hulls contained in the coded region", containment},
      {"transfer ranks equal min-cuts", table_one},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
