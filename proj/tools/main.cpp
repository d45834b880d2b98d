#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yand/cli.hpp"
#include "yand/error.hpp"

int main(int argc, char** argv) {
  using namespace yand::cli;

  CLI::App app{"Affine normal descent experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::optional<double> tol_grad;
  std::optional<int> max_iter;
  std::optional<double> sigma;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--out", out_path, "output CSV path (default: standard output)");
  app.add_option("--tol-grad", tol_grad, "gradient-norm stopping tolerance");
  app.add_option("--max-iter", max_iter, "iteration cap");
  app.add_option("--sigma", sigma, "Armijo sufficient-decrease constant");
  app.add_option("--seed", seed, "seed for derivative-check sampling");

  std::string problem, method, step;
  auto* run = app.add_subcommand("run", "run one method on a catalog problem");
  run->add_option("problem", problem, "catalog name")->required();
  run->add_option("method", method, "yand | gd | newton | dnewton")->required();
  run->add_option("line_search", step, "exact | armijo | wolfe | fixed:<alpha>")->required();

  auto* table2 = app.add_subcommand("table2", "affine-scaling iteration-count table");
  auto* examples = app.add_subcommand("examples", "worked affine-normal examples");

  std::vector<double> gammas{1.0, 10.0, 1e2, 1e3, 1e4};
  auto* invariance = app.add_subcommand("invariance", "affine-scaling invariance runs");
  invariance->add_option("gammas", gammas, "scaling factors");

  auto* verify = app.add_subcommand("verify", "finite-difference derivative checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadArgs;
  }

  Config config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (tol_grad) config.tol_grad = *tol_grad;
    if (max_iter) config.max_iter = *max_iter;
    if (sigma) config.sigma = *sigma;
    if (seed) config.seed = *seed;
    validate(config);
  } catch (const yand::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  }

  const std::optional<std::string> out =
      out_path.empty() ? std::nullopt : std::optional<std::string>(out_path);
  try {
    if (*run) return cmd_run(problem, method, step, config, out, std::cout, std::cerr);
    if (*table2) return cmd_table2(config, out, std::cout, std::cerr);
    if (*examples) return cmd_examples(out, std::cout, std::cerr);
    if (*invariance) return cmd_invariance(gammas, config, out, std::cout, std::cerr);
    if (*verify) return cmd_verify(config, out, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  }
  return kExitBadArgs;
}
