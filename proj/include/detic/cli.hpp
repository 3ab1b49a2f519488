#pragma once

// Command implementations behind the `detic` executable. Each command writes
// its report to `out` and returns a process exit code; errors propagate as
// exceptions and are mapped to exit codes by run_command.

#include "detic/io.hpp"
#include "detic/suites.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace detic::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,   // a verification found a violation
  exit_input = 2,     // malformed input or unknown option
  exit_budget = 3,    // randomized construction ran out of retries
  exit_infeasible = 4,
};

/// DETIC_SEED if set and numeric, else 0.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("DETIC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw input_error(std::string("DETIC_SEED is not a number: ") + env);
    }
  }
  return 0;
}

inline int run_command(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return exit_input;
  } catch (const budget_exhausted& e) {
    err << "error: " << e.what() << "\n";
    return exit_budget;
  } catch (const infeasible_rate& e) {
    err << "error: infeasible split: " << e.what() << "\n";
    return exit_infeasible;
  } catch (const verification_error& e) {
    err << "verification failed: " << e.what() << "\n";
    return exit_failure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_failure;
  }
}

inline std::string vertices_to_string(const std::vector<RatePair>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : " ") + ("(" + rate_to_string(v.r1) + "," + rate_to_string(v.r2) + ")");
  return s;
}

// ---- region ---------------------------------------------------------------

struct RegionOptions {
  std::string channel;
  RegionForm form = RegionForm::theorem;
  std::optional<std::string> out;
};

inline int cmd_region(const RegionOptions& opt, std::ostream& out) {
  const auto text = io::read_file(opt.channel);
  const auto any = io::parse_channel(text);
  const auto region = std::visit(
      [&](const auto& ch) { return capacity_region(reduce_channel(ch).channel, opt.form); }, any);
  auto j = io::region_file(region, {"region", std::nullopt, io::fnv1a_hex(text)});
  j["provenance"]["form"] = opt.form == RegionForm::theorem ? "theorem" : "reduced";
  if (opt.out) {
    io::write_file(*opt.out, j.dump(2) + "\n");
    out << "region " << region.to_string() << "\n";
    out << "vertices " << vertices_to_string(region_vertices(region)) << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return exit_ok;
}

// ---- netcode --------------------------------------------------------------

struct NetcodeOptions {
  std::string network;
  std::uint64_t p = 65537;
  std::uint64_t seed = 0;
  bool compare = false;
  std::optional<std::string> out;
  unsigned retry_budget = default_rlnc_budget;
};

inline int cmd_netcode(const NetcodeOptions& opt, std::ostream& out) {
  if (!is_prime(opt.p) || opt.p >= PrimeField::max_modulus) throw input_error(std::to_string(opt.p) + " is not a supported prime");
  const auto text = io::read_file(opt.network);
  const auto net = parse_network(text);
  const auto real = rlnc_transfer(net, FieldSpec::prime(opt.p), opt.seed, opt.retry_budget);
  const auto region = nc_region(real);
  const auto& ch = real.channel;

  out << "network: " << net.nodes.size() << " nodes, " << net.edges.size() << " edges\n";
  out << "cuts: " << cuts_to_string(real.cuts) << "\n";
  out << "realization: " << real.field.to_string() << ", seed " << real.seed << ", " << real.attempts
      << " draw(s), H11 " << ch.n1() << "x" << ch.m1() << ", H22 " << ch.n2() << "x" << ch.m2() << "\n";
  out << "region: " << region.to_string() << "\n";
  out << "vertices: " << vertices_to_string(region_vertices(region)) << "\n";

  auto j = io::region_file(region, {"netcode", opt.seed, io::fnv1a_hex(text)});
  j["provenance"]["field"] = real.field.to_string();
  j["cuts"] = io::cuts_json(real.cuts);
  j["channel"] = io::json::parse(io::channel_to_json(ch));
  if (opt.compare) {
    const auto rep = containment_check(region, real.cuts);
    const auto b = baseline_regions(real.cuts);
    out << "region 1: " << b.region1.to_string() << "\n";
    out << "region 2': " << b.region2p.to_string() << "\n";
    out << "region 3': " << b.region3p.to_string() << "\n";
    out << "region 4: " << b.region4.to_string() << "\n";
    out << "region 5: " << b.region5.to_string() << "\n";
    out << "hull of regions 1, 2', 3': " << rep.hull123.to_string() << (rep.strict123 ? " (strictly smaller)" : "")
        << "\n";
    out << "hull of regions 4, 5: " << rep.hull45.to_string() << (rep.strict45 ? " (strictly smaller)" : "") << "\n";
    if (rep.witness_union)
      out << "rate pair outside both hulls: " << vertices_to_string({*rep.witness_union}) << "\n";
    out << "baselines contained: yes; strict: " << (rep.strict_union ? "yes" : "no") << "\n";
    j["comparison"] = {{"hull_1_2p_3p", io::region_json(rep.hull123)},
                       {"hull_4_5", io::region_json(rep.hull45)},
                       {"contained", true},
                       {"strict_1_2p_3p", rep.strict123},
                       {"strict_4_5", rep.strict45},
                       {"strict_union", rep.strict_union}};
  }
  if (opt.out) io::write_file(*opt.out, j.dump(2) + "\n");
  return exit_ok;
}

// ---- demo -----------------------------------------------------------------

struct DemoOptions {
  std::string channel;
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> inject;
};

/// "3d11 + 4d21", "0" for an all-zero row.
template <Field F>
std::string linear_form(const Matrix<F>& m, std::size_t row, const std::vector<std::string>& names) {
  const F& f = m.field();
  std::string s;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto& v = m(row, c);
    if (f.is_zero(v)) continue;
    if (!s.empty()) s += " + ";
    const auto coeff = f.to_string(v);
    if (!f.equal(v, f.one())) s += coeff.find('/') == std::string::npos ? coeff : "(" + coeff + ")";
    s += names[c];
  }
  return s.empty() ? "0" : s;
}

template <Field F>
std::string forms(const Matrix<F>& m, const std::vector<std::string>& names) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.rows(); ++i) s += (i ? ", " : "") + linear_form(m, i, names);
  return s + ")";
}

template <Field F>
std::string values(const F& f, const Symbols<F>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + f.to_string(v[i]);
  return s + ")";
}

/// Overall precoders x1 = P1 d1, x2 = P2 d2 of a codec.
template <Field F>
std::pair<Matrix<F>, Matrix<F>> precoders(const Codec<F>& c) {
  const auto& e = c.spread;
  return {c.dec21.v_basis * block_diag(e.e1c.field(), {&e.e1c, &e.e1p}),
          c.dec12.v_basis * block_diag(e.e2c.field(), {&e.e2c, &e.e2p})};
}

template <Field F>
int demo_on(const ChannelQuadruple<F>& original, const DemoOptions& opt, std::ostream& out) {
  auto reduced = reduce_channel(original);
  const auto& ch = opt.inject ? original : reduced.channel;
  if (opt.inject && !is_reduced(original)) throw input_error("--inject needs a channel that is already reduced");
  const F& f = ch.field();
  out << "channel: " << f.spec().to_string() << ", m1=" << ch.m1() << " m2=" << ch.m2() << " n1=" << ch.n1()
      << " n2=" << ch.n2() << (ch == original ? "" : " (after reduction)") << "\n";
  const auto region = capacity_region(ch);
  out << "region: " << region.to_string() << "\n";
  out << "rate: (" << opt.r1 << ", " << opt.r2 << ")\n";
  if (opt.r1 < 0 || opt.r2 < 0) throw input_error("rates must be nonnegative");
  if (!region_contains(region, {Rate(opt.r1), Rate(opt.r2)}))
    throw infeasible_rate("(" + std::to_string(opt.r1) + ", " + std::to_string(opt.r2) + ") is outside the region");

  Codec<F> codec = [&] {
    if constexpr (std::is_same_v<F, PrimeField>) {
      if (opt.inject) {
        // The split comes from the injected bases, which may differ from the
        // default decompositions.
        const auto text = io::read_file(*opt.inject);
        const auto bases = io::parse_injected_bases(text, ch);
        auto split = find_split(split_bounds(ch, bases.dec12, bases.dec21), opt.r1, opt.r2);
        if (!split) throw infeasible_rate("no split satisfies the decoding bounds");
        auto inj = io::parse_injection(text, ch, *split);
        return assemble_codec(ch, *split, std::move(inj.dec12), std::move(inj.dec21), std::move(inj.spread));
      }
    }
    auto split = find_split(split_bounds(ch), opt.r1, opt.r2);
    if (!split) throw infeasible_rate("no split satisfies the decoding bounds");
    return build_codec(ch, *split, opt.seed);
  }();
  const auto& s = codec.split;
  out << "split: R1c=" << s.r1c << " R1p=" << s.r1p << " R2c=" << s.r2c << " R2p=" << s.r2p << "\n";
  out << (opt.inject ? "spreading matrices (injected):\n" : "spreading matrices (seed " + std::to_string(opt.seed) +
                                                              ", draw " + std::to_string(codec.attempts) + "):\n");
  out << "  E1c = " << codec.spread.e1c.to_string() << "\n  E1p = " << codec.spread.e1p.to_string() << "\n";
  out << "  E2c = " << codec.spread.e2c.to_string() << "\n  E2p = " << codec.spread.e2p.to_string() << "\n";

  std::vector<std::string> n1, n2;
  for (std::int64_t i = 1; i <= s.r1(); ++i) n1.push_back("d1" + std::to_string(i));
  for (std::int64_t i = 1; i <= s.r2(); ++i) n2.push_back("d2" + std::to_string(i));
  std::vector<std::string> both = n1;
  both.insert(both.end(), n2.begin(), n2.end());
  const auto [p1, p2] = precoders(codec);
  out << "x1 = " << forms(p1, n1) << "\n";
  out << "x2 = " << forms(p2, n2) << "\n";
  out << "y1 = " << forms(hconcat(ch.h11() * p1, ch.h12() * p2), both) << "\n";
  out << "y2 = " << forms(hconcat(ch.h21() * p1, ch.h22() * p2), both) << "\n";

  std::mt19937_64 rng(opt.seed);
  Symbols<F> d1(static_cast<std::size_t>(s.r1())), d2(static_cast<std::size_t>(s.r2()));
  for (auto& v : d1) v = f.random(rng);
  for (auto& v : d2) v = f.random(rng);
  const auto tx = encode(codec, d1, d2);
  const auto rx = transmit(ch, tx.x1, tx.x2);
  const auto out1 = decode_t1(codec, rx.y1);
  const auto out2 = decode_t2(codec, rx.y2);
  out << "messages: d1 = " << values(f, d1) << ", d2 = " << values(f, d2) << "\n";
  out << "sent: x1 = " << values(f, tx.x1) << ", x2 = " << values(f, tx.x2) << "\n";
  out << "received: y1 = " << values(f, rx.y1) << ", y2 = " << values(f, rx.y2) << "\n";
  out << "t1 decodes: d1c = " << values(f, out1.own_common) << ", d1p = " << values(f, out1.own_private)
      << ", d2c = " << values(f, out1.other_common) << "\n";
  out << "t2 decodes: d2c = " << values(f, out2.own_common) << ", d2p = " << values(f, out2.own_private)
      << ", d1c = " << values(f, out2.other_common) << "\n";
  const bool pass = round_trip(ch, codec, d1, d2);
  out << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? exit_ok : exit_failure;
}

inline int cmd_demo(const DemoOptions& opt, std::ostream& out) {
  const auto any = io::parse_channel(io::read_file(opt.channel));
  if (opt.inject && !std::holds_alternative<ChannelQuadruple<PrimeField>>(any))
    throw input_error("--inject is only supported for prime-field channels");
  return std::visit([&](const auto& ch) { return demo_on(ch, opt, out); }, any);
}

// ---- verify ---------------------------------------------------------------

struct VerifyOptions {
  std::string suite;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"rank-identities", "region-forms", "jafar",   "achievability",
                                              "subspaces",       "concat-rank",  "entropy", "networks"};
  return names;
}

inline int report(std::ostream& out, const std::string& name, const oracle::SuiteReport& r) {
  out << name << ": " << r.instances << " instances, " << r.violations << " violations\n";
  for (const auto& f : r.failures) out << "  " << f << "\n";
  return r.ok() ? exit_ok : exit_failure;
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  std::mt19937_64 rng(opt.seed);
  const auto& s = opt.suite;
  if (s == "rank-identities" || s == "region-forms") {
    int code = exit_ok;
    auto run = [&](const auto& f) {
      auto r = s == "rank-identities" ? oracle::rank_identity_suite(f, opt.trials, rng)
                                      : oracle::region_forms_suite(f, opt.trials, rng);
      code = std::max(code, report(out, s + " " + f.spec().to_string(), r));
    };
    for (std::uint64_t q : {2, 7, 257}) run(PrimeField(q));
    run(RationalField());
    return code;
  }
  if (s == "jafar") {
    auto r = oracle::jafar_suite(65537, opt.trials, rng);
    out << "shapes: " << r.shapes << ", non-generic draws discarded: " << r.redraws << "\n";
    return report(out, s + " F65537", r.suite);
  }
  if (s == "achievability") return report(out, s + " F257", oracle::achievability_suite(257, opt.trials, opt.seed));
  if (s == "subspaces") return report(out, s, oracle::subspace_suite(4, {2, 3}));
  if (s == "entropy") {
    auto r = oracle::entropy_suite({2, 3, 5, 7, 11, 13, 257}, opt.trials, rng);
    out << "(q, l) pairs: " << r.pairs << ", instances meeting the bound with equality: " << r.tight << "\n";
    return report(out, s, r.suite);
  }
  if (s == "concat-rank") {
    const std::vector<std::uint64_t> qs{7, 101, 1009};
    auto reps = oracle::concat_suite(oracle::default_concat_spec(), qs, opt.trials, opt.seed);
    oracle::SuiteReport r;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto& t = reps[i];
      const double floor = 1.0 - 5.0 / static_cast<double>(t.field.modulus);
      out << t.field.to_string() << ": " << t.successes << "/" << t.trials << " full rank, 95% interval ["
          << t.success_ci.lo << ", " << t.success_ci.hi << "], q * failure rate " << t.fitted_k() << "\n";
      ++r.instances;
      if (t.success_ci.hi < floor) r.fail(t.field.to_string() + ": success rate below 1 - 5/q");
      if (i > 0 && !(t.failure_rate() < reps[i - 1].failure_rate()))
        r.fail(t.field.to_string() + ": failure rate did not decrease");
    }
    out << "fitted K (failure ~ K/q): " << oracle::fit_inverse_q(reps) << "\n";
    return report(out, s, r);
  }
  if (s == "networks") {
    auto r = oracle::network_suite(opt.trials, 65537, opt.seed);
    out << "networks: " << r.instances << " instances, " << r.table1_violations << " rank/cut mismatches, "
        << r.containment_violations << " containment violations, " << r.budget_failures
        << " budget failures, strictly larger than both hulls on " << r.strict_both << "\n";
    for (const auto& f : r.failures) out << "  " << f << "\n";
    return r.table1_violations + r.containment_violations + r.budget_failures == 0 ? exit_ok : exit_failure;
  }
  std::string known;
  for (const auto& n : suite_names()) known += " " + n;
  throw input_error("unknown suite \"" + s + "\"; known:" + known);
}

}  // namespace detic::cli
