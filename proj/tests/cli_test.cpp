#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

using namespace detic;
using namespace detic::test;

namespace {

std::string run(const std::function<int(std::ostream&)>& fn, int* code = nullptr) {
  std::ostringstream out, err;
  const int c = cli::run_command([&] { return fn(out); }, err);
  if (code) *code = c;
  return out.str() + err.str();
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(Io, ParseF7Channel) {
  auto any = io::parse_channel(io::read_file(data_path("f7_channel.json")));
  ASSERT_TRUE(std::holds_alternative<ChannelQuadruple<PrimeField>>(any));
  EXPECT_EQ(std::get<ChannelQuadruple<PrimeField>>(any), f7_channel());
}

TEST(Io, RationalEntries) {
  auto any = io::parse_channel(
      R"({"field":{"type":"rational"},"m1":1,"m2":1,"n1":1,"n2":1,"H11":[["1/2"]],"H12":[[0]],"H21":[["-3/4"]],"H22":[[2]]})");
  const auto& ch = std::get<ChannelQuadruple<RationalField>>(any);
  EXPECT_EQ(ch.h11()(0, 0), BigRational(1, 2));
  EXPECT_EQ(ch.h21()(0, 0), BigRational(-3, 4));
}

TEST(Io, FractionsReduceModP) {
  auto any = io::parse_channel(
      R"({"field":{"type":"prime","p":7},"m1":1,"m2":1,"n1":1,"n2":1,"H11":[["1/2"]],"H12":[[-1]],"H21":[[0]],"H22":[[1]]})");
  const auto& ch = std::get<ChannelQuadruple<PrimeField>>(any);
  EXPECT_EQ(ch.h11()(0, 0), 4U);
  EXPECT_EQ(ch.h12()(0, 0), 6U);
}

TEST(Io, MalformedChannels) {
  const std::string good_tail = R"("m1":1,"m2":1,"n1":1,"n2":1,"H11":[[1]],"H12":[[0]],"H21":[[0]],"H22":[[1]]})";
  EXPECT_THROW(io::parse_channel("{"), input_error);
  EXPECT_THROW(io::parse_channel(R"({"field":{"type":"prime","p":8},)" + good_tail), input_error);
  EXPECT_THROW(io::parse_channel(R"({"field":{"type":"real"},)" + good_tail), input_error);
  EXPECT_THROW(io::parse_channel(R"({"field":{"type":"prime","p":7},"m1":2,"m2":1,"n1":1,"n2":1,"H11":[[1]],"H12":[[0]],"H21":[[0]],"H22":[[1]]})"),
               input_error);
  EXPECT_THROW(io::parse_channel(R"({"field":{"type":"prime","p":7},"m1":1,"m2":1,"n1":1,"n2":1,"H11":[["1/7"]],"H12":[[0]],"H21":[[0]],"H22":[[1]]})"),
               input_error);
  EXPECT_THROW(io::read_file("/nonexistent/channel.json"), input_error);
}

TEST(Io, ChannelJsonRoundTrip) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 50; ++t) {
    auto ch = oracle::random_channel(RationalField(), 4, rng);
    auto back = std::get<ChannelQuadruple<RationalField>>(io::parse_channel(io::channel_to_json(ch)));
    EXPECT_EQ(back, ch);
  }
}

TEST(Io, RegionFileRoundTrip) {
  auto reg = region_of({{2, 1, 3}, {1, 2, 3}, {1, 0, 1}});
  auto j = io::region_file(reg, {"region", 5, "abc"});
  auto back = io::parse_region_file(j.dump());
  EXPECT_EQ(back.vertices, region_vertices(reg));
  EXPECT_TRUE(region_equal(back.region, reg));
  // 2R1 + R2 <= 3 touches a single vertex, so the rebuilt halfplanes differ
  // while describing the same polygon
  EXPECT_TRUE(region_equal(region_from_vertices(back.vertices), reg));
  auto f7 = region_of({{1, 0, 2}, {1, 1, 3}, {2, 1, 4}});
  auto rebuilt = region_from_vertices(io::parse_region_file(io::region_file(f7, {"region", {}, ""}).dump()).vertices);
  auto sorted = [](const RateRegion& r) {
    auto v = r.inequalities();
    std::sort(v.begin(), v.end(), [](const Inequality& a, const Inequality& b) {
      return std::tie(a.a1, a.a2, a.b) < std::tie(b.a1, b.a2, b.b);
    });
    return v;
  };
  EXPECT_EQ(sorted(rebuilt), sorted(f7));
  EXPECT_EQ(j["provenance"]["input_hash"], "fnv1a:abc");
  EXPECT_EQ(j["vertices"][2][0], "1");
  EXPECT_EQ(j["vertices"][2][1], "1");
}

TEST(Cli, RegionCommandOnF7Channel) {
  auto path = temp_file("detic_region_test.json");
  cli::RegionOptions opt{data_path("f7_channel.json"), RegionForm::theorem, path.string()};
  int code = -1;
  auto text = run([&](std::ostream& o) { return cli::cmd_region(opt, o); }, &code);
  EXPECT_EQ(code, 0);
  EXPECT_NE(text.find("vertices (0,0) (2,0) (1,2) (0,3)"), std::string::npos) << text;
  auto file = io::parse_region_file(io::read_file(path.string()));
  EXPECT_EQ(file.region.to_string(), "{R1 <= 2, R1 + R2 <= 3, 2R1 + R2 <= 4}");
  std::filesystem::remove(path);
}

TEST(Cli, BothFormsGiveIdenticalVertexJson) {
  std::mt19937_64 rng(62);
  const auto path = temp_file("detic_forms_test.json");
  for (int t = 0; t < 100; ++t) {
    const PrimeField f(t % 2 ? 2 : 7);
    io::write_file(path.string(), io::channel_to_json(oracle::random_channel(f, 4, rng)));
    std::string verts[2];
    for (int form = 0; form < 2; ++form) {
      cli::RegionOptions opt{path.string(), form ? RegionForm::reduced : RegionForm::theorem, std::nullopt};
      std::ostringstream out;
      ASSERT_EQ(cli::cmd_region(opt, out), 0);
      verts[form] = io::json::parse(out.str())["vertices"].dump();
    }
    EXPECT_EQ(verts[0], verts[1]);
  }
  std::filesystem::remove(path);
}

TEST(Cli, MalformedFileExitsTwo) {
  const auto path = temp_file("detic_bad.json");
  io::write_file(path.string(), "{\"field\": 3}");
  int code = -1;
  auto text = run([&](std::ostream& o) { return cli::cmd_region({path.string(), RegionForm::theorem, {}}, o); }, &code);
  EXPECT_EQ(code, cli::exit_input);
  EXPECT_NE(text.find("error:"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, DemoWithInjectedBases) {
  cli::DemoOptions opt{data_path("f7_channel.json"), 1, 2, 0, data_path("f7_inject.json")};
  int code = -1;
  auto text = run([&](std::ostream& o) { return cli::cmd_demo(opt, o); }, &code);
  EXPECT_EQ(code, 0);
  for (const char* line : {"split: R1c=1 R1p=0 R2c=1 R2p=1", "x1 = (3d11, 2d11)", "x2 = (3d21 + 3d22, 5d21 + d22, 3d21)",
                           "y1 = (6d11 + 4d21, 5d11)", "y2 = (3d11 + 3d21 + 3d22, 5d11 + 4d21, 5d11)", "PASS"})
    EXPECT_NE(text.find(line), std::string::npos) << line << "\n" << text;
}

TEST(Cli, DemoOutsideRegionExitsFour) {
  int code = -1;
  auto text = run([&](std::ostream& o) { return cli::cmd_demo({data_path("f7_channel.json"), 2, 2, 0, {}}, o); }, &code);
  EXPECT_EQ(code, cli::exit_infeasible);
  EXPECT_NE(text.find("infeasible split"), std::string::npos);
}

TEST(Cli, DemoAtOriginSendsNothing) {
  int code = -1;
  auto text = run([&](std::ostream& o) { return cli::cmd_demo({data_path("f7_channel.json"), 0, 0, 0, {}}, o); }, &code);
  EXPECT_EQ(code, 0);
  EXPECT_NE(text.find("sent: x1 = (0, 0), x2 = (0, 0, 0)"), std::string::npos) << text;
  EXPECT_NE(text.find("PASS"), std::string::npos);
}

TEST(Cli, DemoIsDeterministic) {
  auto once = [] { return run([](std::ostream& o) { return cli::cmd_demo({data_path("f7_channel.json"), 1, 2, 9, {}}, o); }); };
  EXPECT_EQ(once(), once());
}

TEST(Cli, NetcodeCompareOnRelay) {
  cli::NetcodeOptions opt;
  opt.network = data_path("relay_net.json");
  opt.seed = 1;
  opt.compare = true;
  int code = -1;
  auto text = run([&](std::ostream& o) { return cli::cmd_netcode(opt, o); }, &code);
  EXPECT_EQ(code, 0);
  EXPECT_NE(text.find("cuts: k11=2 k12=1 k21=1 k22=2 k1-12=2 k2-12=2 k12-1=2 k12-2=2"), std::string::npos);
  EXPECT_NE(text.find("R1 + R2 <= 3"), std::string::npos);
  EXPECT_NE(text.find("baselines contained: yes; strict: yes"), std::string::npos) << text;
}

TEST(Cli, NetcodeBudgetExitsThree) {
  cli::NetcodeOptions opt;
  opt.network = data_path("relay_net.json");
  opt.retry_budget = 0;
  int code = -1;
  auto text = run([&](std::ostream& o) { return cli::cmd_netcode(opt, o); }, &code);
  EXPECT_EQ(code, cli::exit_budget);
  EXPECT_NE(text.find("larger field"), std::string::npos);
}

TEST(Cli, UnknownSuiteExitsTwo) {
  int code = -1;
  run([](std::ostream& o) { return cli::cmd_verify({"bogus", 1, 0}, o); }, &code);
  EXPECT_EQ(code, cli::exit_input);
}

TEST(Cli, VerifyReportsZeroViolations) {
  int code = -1;
  auto text = run([](std::ostream& o) { return cli::cmd_verify({"subspaces", 1, 0}, o); }, &code);
  EXPECT_EQ(code, 0);
  EXPECT_NE(text.find("0 violations"), std::string::npos);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("DETIC_SEED", "17", 1);
  EXPECT_EQ(cli::default_seed(), 17U);
  ::setenv("DETIC_SEED", "x", 1);
  EXPECT_THROW(cli::default_seed(), input_error);
  ::unsetenv("DETIC_SEED");
  EXPECT_EQ(cli::default_seed(), 0U);
}
