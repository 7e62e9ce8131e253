// chemo {certify|run|sweep|verify} --config <path> [--set section.key=value]...
//       [--seed N] [--out <dir>] [--dump-fields] [--poison-d3]

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chemo/commands.hpp"
#include "chemo/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Boundedness certificates and simulations for a chemotaxis-consumption model with logistic source"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool dump_fields = false;
  bool poison_d3 = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "INI configuration file")->required();
    sub->add_option("--set", sets, "Override a key: section.key=value (repeatable)");
    sub->add_option("--seed", seed, "Oracle seed");
    sub->add_option("--out", out_dir, "Output directory");
  };
  CLI::App* certify = app.add_subcommand("certify", "Evaluate the sufficient condition on mu");
  CLI::App* run = app.add_subcommand("run", "Simulate and monitor the a priori bounds");
  CLI::App* sweep = app.add_subcommand("sweep", "Bisect mu for the empirical boundedness frontier");
  CLI::App* verify = app.add_subcommand("verify", "Run the randomized inequality checks");
  for (CLI::App* sub : {certify, run, sweep, verify}) add_common(sub);
  run->add_flag("--dump-fields", dump_fields, "Write the final u and v fields");
  verify->add_flag("--poison-d3", poison_d3, "Corrupt the combination constant (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : chemo::kExitError;
  }

  try {
    std::vector<chemo::Override> overrides;
    for (const std::string& s : sets) overrides.push_back(chemo::parse_override(s));
    const chemo::RunConfig config = chemo::load_config(config_path, overrides);

    chemo::CommandOptions options;
    if (!out_dir.empty()) options.out_dir = out_dir;
    if (app.got_subcommand(verify) && verify->count("--seed") > 0) options.seed = seed;
    options.dump_fields = dump_fields;
    options.poison_d3 = poison_d3;

    if (app.got_subcommand(certify)) return chemo::cmd_certify(config, options, std::cout);
    if (app.got_subcommand(run)) return chemo::cmd_run(config, options, std::cout);
    if (app.got_subcommand(sweep)) return chemo::cmd_sweep(config, options, std::cout);
    return chemo::cmd_verify(config, options, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return chemo::kExitError;
  }
}
