#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "h22/linalg.hpp"
#include "h22/model.hpp"

namespace h22 {

struct ChainState {
  FieldConfig t;
  SpdFactor kernel_factor;  // factor of the current weight matrix
  double log_weight = 0.0;
  std::mt19937_64 rng;
  long sweeps_done = 0;
  long long accepted = 0;
  long long proposed = 0;
};

// Fresh chain at t = 0 with its own rng stream. Throws when the weight is
// undefined there (no positive pinning).
ChainState init_chain(const ModelParams& p, std::uint64_t seed, std::uint32_t stream);

// One site-ordered Metropolis pass: t_j -> t_j + sigma * N(0,1), accepted
// with min(1, exp(delta log weight)); the kernel is refactored on acceptance.
// A factorization failure on the proposal counts as a rejection.
void metropolis_sweep(ChainState& state, const ModelParams& p, double proposal_sigma);

// Log acceptance ratio of the single-site update t_site -> value from the
// current state; the move probability is min(1, exp(ratio)). nullopt when
// the proposed kernel is not positive definite.
std::optional<double> log_acceptance_ratio(const ModelParams& p, const ChainState& state,
                                           int site, double value);

struct McmcOptions {
  long sweeps = 100000;  // total per chain, burn_in included
  long burn_in = 10000;
  int chains = 4;
  std::uint64_t seed = 1;
  double proposal_sigma = 1.0;
  bool tune_sigma = false;  // adjust sigma toward 0.3-0.5 acceptance during
                            // the first half of burn-in, frozen afterwards
};

struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;  // batch means, pooled across chains
  long long n_samples = 0;
  double acceptance_rate = 0.0;  // measurement phase only
  int batch_count = 0;
};

// Runs `chains` independent chains (parallel, private rng streams) and
// measures every observable once per sweep after burn-in. Batch-means error
// bars with 32 batches per chain (at least 8, else an error); between-chain
// spread enters through the pooled batches. Fully deterministic in
// (seed, chains, sweep schedule).
std::vector<EstimatorResult> estimate_many(const ModelParams& p,
                                           const std::vector<Observable>& observables,
                                           const McmcOptions& opts);

// Correlation observables need a scheme with two or more pinned sites.
EstimatorResult estimate(const ModelParams& p, const Observable& obs,
                         const McmcOptions& opts);

// <e^{t_x/2}> under a single-pinning scheme.
EstimatorResult estimate_exp_half_t(const ModelParams& p, int x, const McmcOptions& opts);

}  // namespace h22
