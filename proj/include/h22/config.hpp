#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "h22/exact.hpp"
#include "h22/mcmc.hpp"
#include "h22/model.hpp"

namespace h22 {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Declarative experiment description. Unknown keys are rejected so that
// archived configs stay unambiguous.
struct ExperimentConfig {
  // model block
  std::vector<int> extents{16};
  Bc bc = Bc::Neumann;
  double beta = 0.05;
  std::optional<PinningScheme> pinning;  // default: uniform 1/N

  // run block
  std::uint64_t seed = 1;
  int chains = 4;
  long sweeps = 200000;
  long burn_in = 20000;
  double proposal_sigma = 1.0;
  bool tune_sigma = false;

  // quadrature block; unset fields fall back to the recommended spec
  std::optional<double> quad_half_width;
  std::optional<int> quad_panels;
  std::optional<int> quad_order;

  // output block
  std::string out_dir = "out";
  std::vector<std::string> formats{"csv", "json"};
};

ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical serialized form (alphabetical keys) and its FNV-1a hash; both go
// into output file headers.
std::string config_to_json(const ExperimentConfig& cfg);
std::string config_hash(const ExperimentConfig& cfg);

ModelParams make_model_params(const ExperimentConfig& cfg);
McmcOptions make_mcmc_options(const ExperimentConfig& cfg);
QuadratureSpec make_quadrature_spec(const ExperimentConfig& cfg);

}  // namespace h22
