// Experiment driver: verify | exact | sample | bounds.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "h22/commands.hpp"
#include "h22/config.hpp"
#include "h22/version.hpp"

namespace {

std::vector<double> parse_beta_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

h22::ExperimentConfig load_or_default(const std::string& path) {
  if (path.empty()) return h22::ExperimentConfig{};
  return h22::load_config_file(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the hyperbolic supersymmetric sigma model "
               "in its horospherical field form"};
  app.set_version_flag("--version", h22::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  bool quick = false;
  auto* verify = app.add_subcommand("verify", "run the exact-identity suite");
  verify->add_option("--config", config_path, "experiment config (JSON)");
  verify->add_flag("--quick", quick, "reduced instance counts");

  int dim = 1;
  std::string beta_list = "0.01,0.05,0.1,0.5,1";
  std::string bounds_out;
  auto* bounds = app.add_subcommand("bounds", "tabulate the decay-bound quantities");
  bounds->add_option("--dim", dim, "lattice dimension")->required();
  bounds->add_option("--betas", beta_list, "comma-separated beta values");
  bounds->add_option("--out", bounds_out, "output CSV path (default stdout)");

  std::string exact_config;
  auto* exact = app.add_subcommand("exact", "tensor quadrature of Z and observables");
  exact->add_option("--config", exact_config, "experiment config (JSON)")->required();

  std::string sample_config;
  std::string override_out;
  auto* sample = app.add_subcommand("sample", "Monte Carlo measurement run");
  sample->add_option("--config", sample_config, "experiment config (JSON)")->required();
  sample->add_option("--out", override_out, "override output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      return h22::cmd_verify(load_or_default(config_path), std::cout, quick);
    }
    if (*bounds) {
      const auto betas = parse_beta_list(beta_list);
      if (bounds_out.empty()) return h22::cmd_bounds(dim, betas, std::cout);
      std::ofstream out(bounds_out, std::ios::binary);
      if (!out) throw h22::ConfigError("cannot write " + bounds_out);
      return h22::cmd_bounds(dim, betas, out);
    }
    if (*exact) {
      return h22::cmd_exact(h22::load_config_file(exact_config), std::cout);
    }
    if (*sample) {
      h22::ExperimentConfig cfg = h22::load_config_file(sample_config);
      if (!override_out.empty()) cfg.out_dir = override_out;
      return h22::cmd_sample(cfg, std::cout);
    }
  } catch (const h22::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return h22::kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return h22::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
