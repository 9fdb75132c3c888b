// latop: learn W-operators by stochastic lattice descent and inspect their bases.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "latop/cli/commands.hpp"

namespace {

using namespace latop;
namespace fs = std::filesystem;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::Parse: return 3;
    case ErrorKind::Size: return 4;
    case ErrorKind::Input: return 5;
    case ErrorKind::Io: return 6;
    case ErrorKind::Unsupported: return 7;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latop - learning binary image operators by lattice descent"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate pairs from a planted operator");
  std::string gen_target;
  std::string gen_out = "data";
  cli::GenOptions gen_opt;
  gen->add_option("--target", gen_target, "parameter or table file of the planted operator")->required();
  gen->add_option("--count", gen_opt.count, "number of pairs");
  gen->add_option("--height", gen_opt.height, "image height");
  gen->add_option("--width", gen_opt.width, "image width");
  gen->add_option("--density", gen_opt.density, "probability of a foreground input pixel");
  gen->add_option("--noise", gen_opt.noise_rate, "probability of flipping a target pixel");
  gen->add_option("--seed", gen_opt.seed, "random seed");
  gen->add_option("--out", gen_out, "output directory");

  // train: every config key is also a flag
  auto* train = app.add_subcommand("train", "fit a parameter point to a manifest");
  std::string train_config;
  std::map<std::string, std::string> overrides;
  train->add_option("--config", train_config, "key = value configuration file");
  for (const auto& key : cli::config_keys()) {
    const std::string name = key.name;
    train->add_option_function<std::string>(
        "--" + name, [&overrides, name](const std::string& v) { overrides[name] = v; }, key.help);
  }

  // eval
  auto* eval = app.add_subcommand("eval", "pixel error and IoU of a parameter point on a manifest");
  std::string eval_theta;
  std::string eval_manifest;
  std::string eval_boundary = "zero-pad";
  eval->add_option("--theta", eval_theta, "parameter file")->required();
  eval->add_option("--manifest", eval_manifest, "manifest (TSV)")->required();
  eval->add_option("--boundary", eval_boundary, "zero-pad | toroidal");

  // basis
  auto* basis = app.add_subcommand("basis", "print the basis and property flags of a parameter point");
  std::string basis_theta;
  std::size_t window_cap = kDefaultWindowCap;
  std::size_t basis_cap = kDefaultBasisCap;
  basis->add_option("theta", basis_theta, "parameter file")->required();
  basis->add_option("--window-cap", window_cap, "largest tabulated window");
  basis->add_option("--basis-cap", basis_cap, "largest window for basis extraction");

  // inspect-trace
  auto* inspect = app.add_subcommand("inspect-trace", "summarize and check a trace CSV");
  std::string trace_path;
  inspect->add_option("trace", trace_path, "trace.csv written by train")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const ParamPoint target = cli::read_param_file(gen_target);
      const Dataset data = cli::gen_dataset(target, gen_opt);
      const auto manifest = cli::write_generated(data, target, gen_opt, gen_out);
      std::cout << "pairs: " << manifest.pairs.size() << "\n"
                << "manifest: " << (fs::path(gen_out) / "manifest.tsv").generic_string() << "\n";
    } else if (train->parsed()) {
      cli::Settings settings;
      if (!train_config.empty()) settings = cli::Settings::parse(cli::read_text_file(train_config));
      for (const auto& [k, v] : overrides) settings.set(k, v);
      const cli::RunConfig cfg = cli::build_run_config(settings);
      if (!cfg.manifest) fail(ErrorKind::Config, "train needs 'manifest'");
      const auto manifest = cli::read_manifest(*cfg.manifest);
      cli::cmd_train(cfg, manifest, std::cout);
    } else if (eval->parsed()) {
      const ParamPoint theta = cli::read_param_file(eval_theta);
      cli::cmd_eval(theta, cli::read_manifest(eval_manifest), parse_boundary(eval_boundary), std::cout);
    } else if (basis->parsed()) {
      const ParamPoint theta = cli::read_param_file(basis_theta, window_cap);
      cli::cmd_basis(theta, std::cout, window_cap, basis_cap);
    } else if (inspect->parsed()) {
      const auto summary = cli::cmd_inspect_trace(trace_path, std::cout);
      return summary.consistent ? 0 : 8;
    }
  } catch (const Error& e) {
    std::cerr << "latop: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "latop: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
