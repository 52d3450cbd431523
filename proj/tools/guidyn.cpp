#include <fmt/format.h>

#include <thread>

#include "CLI11.hpp"
#include "guidyn/common/errors.hpp"
#include "guidyn/pipeline/stages.hpp"

namespace {

int exit_code(guidyn::ErrorCategory c) {
  switch (c) {
    case guidyn::ErrorCategory::kConfig: return 2;
    case guidyn::ErrorCategory::kManifest: return 3;
    case guidyn::ErrorCategory::kIntegrity: return 4;
    case guidyn::ErrorCategory::kData: return 5;
    case guidyn::ErrorCategory::kRemote: return 6;
  }
  return 1;
}

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed_override;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::string mode;
  std::string out = "run";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic GUI dynamics data engine: environments, exploration, filtering, "
               "sample synthesis, mixing and evaluation."};
  app.require_subcommand(1);
  Options opt;
  std::string chosen;

  std::vector<std::string> commands = guidyn::stage_names();
  commands.push_back("all");
  for (const auto& name : commands) {
    const std::string help = name == "all" ? "run every stage in order" : "run the " + name + " stage";
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "pipeline config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed-override", opt.seed_override, "replace the config's run seed");
    sub->add_option("--workers", opt.workers, "worker threads; outputs do not depend on it")
        ->check(CLI::Range(1, 1024));
    sub->add_option("--mode", opt.mode, "offline or remote (overrides the config)")
        ->check(CLI::IsMember({"offline", "remote"}));
    sub->add_option("--out", opt.out, "run directory");
    sub->callback([&chosen, name] { chosen = name; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    guidyn::RunContext ctx;
    ctx.config = guidyn::load_config(opt.config);
    if (opt.seed_override) ctx.config.seed = *opt.seed_override;
    if (!opt.mode.empty()) ctx.config.mode = guidyn::run_mode_from_string(opt.mode);
    ctx.out = opt.out;
    ctx.workers = opt.workers;
    if (chosen == "all") {
      guidyn::run_all(ctx);
    } else {
      guidyn::run_stage(chosen, ctx);
    }
  } catch (const guidyn::Error& e) {
    fmt::print(stderr, "error [{}]: {}\n", guidyn::to_string(e.category()), e.what());
    return exit_code(e.category());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error [internal]: {}\n", e.what());
    return 1;
  }
  return 0;
}
