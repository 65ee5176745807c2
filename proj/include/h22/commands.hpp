#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "h22/config.hpp"

namespace h22 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIdentityFailure = 3;
inline constexpr int kExitEnvelopeFailure = 4;

// Runs the identity suite and prints one line per identity. Nonzero on any
// failure.
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, bool quick);

// CSV rows beta, I_beta, r, beta_c, localized_flag for the given dimension.
int cmd_bounds(int d, const std::vector<double>& betas, std::ostream& out);

// Tensor quadrature: writes z.json and expectations.csv to the output dir.
int cmd_exact(const ExperimentConfig& cfg, std::ostream& log);

// Monte Carlo measurement: writes correlations.csv, envelope.csv and
// fit.json to the output dir. Returns kExitEnvelopeFailure when a measured
// mean exceeds the applicable envelope beyond 3 standard errors.
int cmd_sample(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace h22
