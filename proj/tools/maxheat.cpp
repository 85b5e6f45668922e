#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "maxheat/config.hpp"
#include "maxheat/errors.hpp"
#include "maxheat/output.hpp"
#include "maxheat/verification.hpp"

namespace
{

enum ExitCode
{
  kOk = 0,
  kFailure = 1,
  kConfig = 2,
  kNumeric = 3,
  kNonConvergence = 4
};

int run_command(const std::string &config_path, const std::string &preset, int n,
                const std::string &mode, const std::string &out_dir, int threads)
{
  nlohmann::json doc;
  if (!config_path.empty())
  {
    std::ifstream in(config_path);
    if (!in)
    {
      throw maxheat::ConfigError("cannot open config file: " + config_path);
    }
    try
    {
      doc = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &err)
    {
      throw maxheat::ConfigError(config_path + ": " + err.what());
    }
  }
  else
  {
    doc = maxheat::preset_document(preset);
  }
  if (n > 0)
  {
    doc["domain"]["n"] = n;
  }
  if (!mode.empty())
  {
    doc["solver"]["mode"] = mode;
  }
  if (!out_dir.empty())
  {
    doc["output"]["dir"] = out_dir;
  }
  if (threads > 0)
  {
    doc["threads"] = threads;
  }

  const maxheat::RunConfig cfg = maxheat::parse_run_config(doc);
  const maxheat::CoupledResult result = maxheat::execute(cfg);
  std::printf("steps %zu  E(0) %.10g  max E %.10g  outputs in %s\n",
              result.energy.samples.size() - 1, result.energy.samples.front(),
              result.energy.max_abs(), cfg.output.dir.c_str());
  if (result.picard)
  {
    std::printf("picard: converged after %d applications\n", result.picard->applications);
  }
  return kOk;
}

int verify_command()
{
  int failed = 0;
  for (const auto &check : maxheat::run_verification())
  {
    std::printf("[%s] %s: %s\n", check.passed ? "PASS" : "FAIL", check.name.c_str(),
                check.detail.c_str());
    failed += check.passed ? 0 : 1;
  }
  return failed == 0 ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Time-domain microwave heating with nonlocal electromagnetic-thermal coupling"};
  app.require_subcommand(1);

  std::string config_path, preset, mode, out_dir;
  int n = 0, threads = 0;
  auto *run = app.add_subcommand("run", "run a simulation from a JSON config or a preset");
  auto *config_opt = run->add_option("--config", config_path, "JSON configuration file");
  auto *preset_opt = run->add_option("--preset", preset, "named scenario (see list-presets)");
  config_opt->excludes(preset_opt);
  run->add_option("--n", n, "override domain.n");
  run->add_option("--mode", mode, "override solver.mode")->check(CLI::IsMember({"monolithic", "picard"}));
  run->add_option("--out", out_dir, "override output.dir");
  run->add_option("--threads", threads, "override threads");

  auto *verify = app.add_subcommand("verify", "run the oracle and invariant checks");
  auto *list = app.add_subcommand("list-presets", "print the available scenario presets");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &err)
  {
    const int code = app.exit(err);
    return code == 0 ? kOk : kConfig;
  }

  try
  {
    if (run->parsed())
    {
      if (config_path.empty() && preset.empty())
      {
        std::cerr << "run: one of --config or --preset is required\n";
        return kConfig;
      }
      return run_command(config_path, preset, n, mode, out_dir, threads);
    }
    if (verify->parsed())
    {
      return verify_command();
    }
    if (list->parsed())
    {
      for (const auto &name : maxheat::preset_names())
      {
        std::printf("%-20s %s\n", name.c_str(), maxheat::preset_description(name).c_str());
      }
      return kOk;
    }
  }
  catch (const maxheat::ConfigError &err)
  {
    std::cerr << "config error: " << err.what() << '\n';
    return kConfig;
  }
  catch (const maxheat::NumericError &err)
  {
    std::cerr << "numeric error: " << err.what() << '\n';
    return kNumeric;
  }
  catch (const maxheat::NonConvergenceError &err)
  {
    std::cerr << "nonconvergence: " << err.what() << '\n';
    return kNonConvergence;
  }
  catch (const std::exception &err)
  {
    std::cerr << "error: " << err.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
