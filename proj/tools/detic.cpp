#include "detic/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using namespace detic;

std::pair<std::int64_t, std::int64_t> parse_rate_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw input_error("--rate expects R1,R2");
  try {
    std::size_t used1 = 0, used2 = 0;
    const auto a = s.substr(0, comma), b = s.substr(comma + 1);
    const auto r1 = std::stoll(a, &used1);
    const auto r2 = std::stoll(b, &used2);
    if (used1 != a.size() || used2 != b.size()) throw input_error("");
    return {r1, r2};
  } catch (const std::exception&) {
    throw input_error("--rate expects two integers R1,R2, got \"" + s + "\"");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear deterministic interference channels and two-unicast network coding"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool seed_given = false;
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option_function<std::uint64_t>(
        "--seed",
        [&](const std::uint64_t& s) {
          seed = s;
          seed_given = true;
        },
        "random seed (default: $DETIC_SEED or 0)");
  };

  cli::RegionOptions region;
  std::string form = "theorem";
  auto* region_cmd = app.add_subcommand("region", "capacity region of a channel file");
  region_cmd->add_option("--channel", region.channel, "channel JSON")->required();
  region_cmd->add_option("--form", form, "inequality form")->check(CLI::IsMember({"theorem", "reduced"}));
  region_cmd->add_option("--out", region.out, "write the region file here");

  cli::NetcodeOptions net;
  auto* net_cmd = app.add_subcommand("netcode", "network-coded two-unicast region of a network file");
  net_cmd->add_option("--network", net.network, "network JSON")->required();
  net_cmd->add_option("--field", net.p, "prime field size")->default_val(65537);
  net_cmd->add_flag("--compare", net.compare, "compare with the routing and coding baselines");
  net_cmd->add_option("--out", net.out, "write the region file here");
  add_seed(net_cmd);

  cli::DemoOptions demo;
  std::string rate;
  auto* demo_cmd = app.add_subcommand("demo", "encode, transmit and decode one block at a rate pair");
  demo_cmd->add_option("--channel", demo.channel, "channel JSON")->required();
  demo_cmd->add_option("--rate", rate, "integer rate pair R1,R2")->required();
  demo_cmd->add_option("--inject", demo.inject, "JSON with decomposition bases and spreading matrices");
  add_seed(demo_cmd);

  cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "run a randomized verification suite");
  verify_cmd->add_option("--suite", verify.suite, "suite name")->required();
  verify_cmd->add_option("--trials", verify.trials, "instances per configuration")->default_val(100);
  add_seed(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::exit_ok : cli::exit_input;
  }

  return cli::run_command(
      [&] {
        if (!seed_given) seed = cli::default_seed();
        if (*region_cmd) {
          region.form = form == "theorem" ? RegionForm::theorem : RegionForm::reduced;
          return cli::cmd_region(region, std::cout);
        }
        if (*net_cmd) {
          net.seed = seed;
          return cli::cmd_netcode(net, std::cout);
        }
        if (*demo_cmd) {
          std::tie(demo.r1, demo.r2) = parse_rate_pair(rate);
          demo.seed = seed;
          return cli::cmd_demo(demo, std::cout);
        }
        verify.seed = seed;
        return cli::cmd_verify(verify, std::cout);
      },
      std::cerr);
}
