#include "h22/mcmc.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace h22 {

namespace {

std::mt19937_64 make_stream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq sq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                   static_cast<std::uint32_t>(seed >> 32), stream, 0x9e3779b9u};
  return std::mt19937_64(sq);
}

}  // namespace

ChainState init_chain(const ModelParams& p, std::uint64_t seed, std::uint32_t stream) {
  FieldConfig t(p.lattice.n_sites(), 0.0);
  auto ev = evaluate_weight(p, t);
  if (!ev)
    throw std::invalid_argument("cannot start a chain: weight undefined at t = 0 "
                                "(is any pinning weight positive?)");
  ChainState s;
  s.t = std::move(t);
  s.kernel_factor = std::move(ev->factor);
  s.log_weight = ev->log_weight;
  s.rng = make_stream(seed, stream);
  return s;
}

void metropolis_sweep(ChainState& state, const ModelParams& p, double proposal_sigma) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int n = p.lattice.n_sites();
  for (int j = 0; j < n; ++j) {
    const double old = state.t[j];
    state.t[j] = old + proposal_sigma * gauss(state.rng);
    ++state.proposed;
    auto ev = evaluate_weight(p, state.t);
    const double u = uni(state.rng);
    if (ev && std::log(u) < ev->log_weight - state.log_weight) {
      state.kernel_factor = std::move(ev->factor);
      state.log_weight = ev->log_weight;
      ++state.accepted;
    } else {
      state.t[j] = old;  // includes factorization failures
    }
  }
  ++state.sweeps_done;
}

std::optional<double> log_acceptance_ratio(const ModelParams& p, const ChainState& state,
                                           int site, double value) {
  if (site < 0 || site >= p.lattice.n_sites())
    throw std::domain_error("log_acceptance_ratio: site out of range");
  FieldConfig t = state.t;
  t[site] = value;
  auto ev = evaluate_weight(p, t);
  if (!ev) return std::nullopt;
  return ev->log_weight - state.log_weight;
}

namespace {

struct ChainSummary {
  // batch means per observable, measurement-phase acceptance counts
  std::vector<std::vector<double>> batch_means;
  long long accepted = 0;
  long long proposed = 0;
};

ChainSummary run_chain(const ModelParams& p, const std::vector<Observable>& obs,
                       const McmcOptions& o, int chain, int n_batches, long batch_len) {
  ChainState st = init_chain(p, o.seed, static_cast<std::uint32_t>(chain));
  double sigma = o.proposal_sigma;

  const long tune_until = o.tune_sigma ? o.burn_in / 2 : 0;
  long long window_accepted = 0, window_proposed = 0;
  for (long s = 0; s < o.burn_in; ++s) {
    metropolis_sweep(st, p, sigma);
    if (o.tune_sigma && s < tune_until && (s + 1) % 100 == 0) {
      const double rate =
          static_cast<double>(st.accepted - window_accepted) /
          static_cast<double>(st.proposed - window_proposed);
      if (rate < 0.3) sigma *= 0.8;
      else if (rate > 0.5) sigma *= 1.25;
      sigma = std::min(10.0, std::max(1e-3, sigma));
      window_accepted = st.accepted;
      window_proposed = st.proposed;
    }
  }

  const long long accepted0 = st.accepted, proposed0 = st.proposed;
  bool need_inverse = false;
  for (const Observable& ob : obs)
    if (ob.kind == Observable::Kind::Correlation) need_inverse = true;

  ChainSummary sum;
  sum.batch_means.assign(obs.size(), std::vector<double>(n_batches, 0.0));
  for (long s = 0; s < static_cast<long>(n_batches) * batch_len; ++s) {
    metropolis_sweep(st, p, sigma);
    const int b = static_cast<int>(s / batch_len);
    Matrix inv;
    if (need_inverse) inv = st.kernel_factor.inverse();
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const double v = obs[i].kind == Observable::Kind::Correlation
                           ? inv(obs[i].x, obs[i].y)
                           : std::exp(0.5 * st.t[obs[i].x]);
      sum.batch_means[i][b] += v;
    }
  }
  for (auto& bm : sum.batch_means)
    for (double& v : bm) v /= static_cast<double>(batch_len);
  sum.accepted = st.accepted - accepted0;
  sum.proposed = st.proposed - proposed0;
  return sum;
}

}  // namespace

std::vector<EstimatorResult> estimate_many(const ModelParams& p,
                                           const std::vector<Observable>& observables,
                                           const McmcOptions& opts) {
  if (observables.empty()) throw std::invalid_argument("no observables given");
  if (opts.chains < 1) throw std::invalid_argument("need at least one chain");
  if (opts.burn_in < 0 || opts.sweeps <= opts.burn_in)
    throw std::invalid_argument("sweeps must exceed burn_in");
  const int n = p.lattice.n_sites();
  for (const Observable& ob : observables) {
    if (ob.x < 0 || ob.x >= n || ob.y < 0 || ob.y >= n)
      throw std::domain_error("observable site out of range");
    if (ob.kind == Observable::Kind::Correlation &&
        p.pinning.mode() == PinningScheme::Mode::Single)
      throw std::invalid_argument(
          "correlation estimation needs a scheme with two or more pinned sites");
  }

  const long n_meas = opts.sweeps - opts.burn_in;
  const int n_batches = n_meas >= 32 ? 32 : static_cast<int>(n_meas);
  if (n_batches < 8)
    throw std::invalid_argument("too few measurement sweeps for 8 batches");
  const long batch_len = n_meas / n_batches;  // remainder sweeps are dropped

  std::vector<ChainSummary> summaries(opts.chains);
  if (opts.chains == 1) {
    summaries[0] = run_chain(p, observables, opts, 0, n_batches, batch_len);
  } else {
    std::vector<std::future<ChainSummary>> futs;
    for (int c = 0; c < opts.chains; ++c)
      futs.push_back(std::async(std::launch::async, run_chain, std::cref(p),
                                std::cref(observables), std::cref(opts), c, n_batches,
                                batch_len));
    for (int c = 0; c < opts.chains; ++c) summaries[c] = futs[c].get();
  }

  long long accepted = 0, proposed = 0;
  for (const ChainSummary& s : summaries) {
    accepted += s.accepted;
    proposed += s.proposed;
  }

  std::vector<EstimatorResult> out(observables.size());
  const int total_batches = n_batches * opts.chains;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    // pooled batches: between-chain spread enters the variance directly
    double mean = 0.0;
    for (const ChainSummary& s : summaries)
      for (double v : s.batch_means[i]) mean += v;
    mean /= total_batches;
    double var = 0.0;
    for (const ChainSummary& s : summaries)
      for (double v : s.batch_means[i]) var += (v - mean) * (v - mean);
    var = total_batches > 1 ? var / (total_batches - 1) : 0.0;

    EstimatorResult& r = out[i];
    r.mean = mean;
    r.std_error = std::sqrt(var / total_batches);
    r.n_samples = static_cast<long long>(batch_len) * total_batches;
    r.acceptance_rate = proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
    r.batch_count = total_batches;
  }
  return out;
}

EstimatorResult estimate(const ModelParams& p, const Observable& obs,
                         const McmcOptions& opts) {
  return estimate_many(p, {obs}, opts)[0];
}

EstimatorResult estimate_exp_half_t(const ModelParams& p, int x, const McmcOptions& opts) {
  if (p.pinning.mode() != PinningScheme::Mode::Single)
    throw std::invalid_argument("exp_half_t estimation expects a single-pinning scheme");
  return estimate(p, Observable::exp_half_t(x), opts);
}

}  // namespace h22
