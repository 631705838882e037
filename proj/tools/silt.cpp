// silt: command-line front end.
//
//   silt <command> [--config FILE] [--set key=value]... [--out DIR] [--<key> value]...
//   silt arcs analyze --word r1,r2,s1,s2
//   silt replay --manifest DIR/manifest.json --out DIR2

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "silt/cli/commands.hpp"
#include "silt/cli/config.hpp"

namespace {

namespace fs = std::filesystem;
using silt::cli::ConfigError;

struct CommandOptions {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::map<std::string, std::string> flags;
};

fs::path default_out(const std::string& command) {
  const char* root = std::getenv("SILT_OUTPUT_ROOT");
  return fs::path(root != nullptr && *root != '\0' ? root : "silt_out") / command;
}

void add_common(CLI::App* app, CommandOptions& o, const std::string& command) {
  app->add_option("--config", o.config_file, "key = value configuration file");
  app->add_option("--set", o.overrides, "override key=value (repeatable)")->take_all();
  app->add_option("--out", o.out_dir, "output directory (default $SILT_OUTPUT_ROOT/<command>)");
  for (const auto& f : silt::cli::schema(command)) {
    app->add_option_function<std::string>(
        "--" + f.key, [&o, key = f.key](const std::string& v) { o.flags[key] = v; }, f.help);
  }
}

int execute(const std::string& command, const CommandOptions& o) {
  try {
    std::map<std::string, std::string> values;
    if (!o.config_file.empty()) values = silt::cli::read_config_file(o.config_file);
    for (const auto& [k, v] : o.flags) values[k] = v;
    silt::cli::apply_overrides(values, o.overrides);
    const auto cfg = silt::cli::validate(command, values);
    const fs::path out = o.out_dir.empty() ? default_out(command) : fs::path(o.out_dir);
    return silt::cli::run(cfg, out, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << R"({"error":{"kind":"invalid_config","message":")" << e.what() << R"(","fields":[)";
    for (std::size_t i = 0; i < e.errors().size(); ++i)
      std::cerr << (i ? "," : "") << R"({"field":")" << e.errors()[i].field << R"(","message":")"
                << e.errors()[i].message << R"("})";
    std::cerr << "]}}\n";
    return silt::cli::ExitCode::invalid_config;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-intersection local time of fractional Brownian motion"};
  app.require_subcommand(1);

  std::map<std::string, CommandOptions> options;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : silt::cli::command_names()) {
    if (name == "arcs") continue;
    subs[name] = app.add_subcommand(name, "run " + name);
    add_common(subs[name], options[name], name);
  }
  auto* arcs = app.add_subcommand("arcs", "arc-diagram combinatorics");
  auto* analyze = arcs->add_subcommand("analyze", "analyse one configuration word");
  arcs->require_subcommand(1);
  add_common(analyze, options["arcs"], "arcs");

  std::string manifest, replay_out;
  auto* replay = app.add_subcommand("replay", "re-run a manifest and compare checksums");
  replay->add_option("--manifest", manifest, "manifest.json of a previous run")->required();
  replay->add_option("--out", replay_out, "output directory for the re-run")->required();

  CLI11_PARSE(app, argc, argv);

  if (replay->parsed()) return silt::cli::replay(manifest, replay_out, std::cout, std::cerr);
  if (analyze->parsed()) return execute("arcs", options["arcs"]);
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) return execute(name, options[name]);
  return silt::cli::ExitCode::invalid_config;
}
