#include "h22/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "json.hpp"

#include "h22/bounds.hpp"
#include "h22/exact.hpp"
#include "h22/mcmc.hpp"
#include "h22/verify.hpp"
#include "h22/version.hpp"

namespace h22 {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv_header(std::ofstream& out, const ExperimentConfig& cfg,
                      const std::string& observable) {
  out << "# config_hash: " << config_hash(cfg) << "\n";
  out << "# seed: " << cfg.seed << "\n";
  out << "# version: " << kVersion << "\n";
  if (!observable.empty()) out << "# observable: " << observable << "\n";
}

json meta_block(const ExperimentConfig& cfg) {
  json m;
  m["config_hash"] = config_hash(cfg);
  m["seed"] = cfg.seed;
  m["version"] = kVersion;
  return m;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, bool quick) {
  const auto suites = run_identity_suites(cfg.seed, quick);
  bool all_pass = true;
  out << std::left;
  for (const SuiteResult& s : suites) {
    out << (s.pass ? "PASS  " : "FAIL  ") << std::setw(42) << s.name
        << " instances=" << std::setw(6) << s.instances << " max_err=" << fmt(s.max_error)
        << (s.violations > 0 ? "  violations=" + std::to_string(s.violations) : "")
        << "\n";
    all_pass = all_pass && s.pass;
  }
  out << (all_pass ? "all identities verified" : "IDENTITY SUITE FAILURE") << "\n";
  return all_pass ? kExitOk : kExitIdentityFailure;
}

int cmd_bounds(int d, const std::vector<double>& betas, std::ostream& out) {
  if (d < 1) throw ConfigError("dimension must be >= 1");
  if (betas.empty()) throw ConfigError("no beta values given");
  const CriticalBeta bc = critical_beta(d);
  const std::string bc_str = bc.is_infinite ? "inf" : fmt(bc.value);
  out << "# version: " << kVersion << "\n";
  out << "# dim: " << d << "\n";
  out << "beta,I_beta,r,beta_c,localized_flag\n";
  for (double b : betas) {
    const double i = one_site_integral(b);
    const double r = decay_ratio(d, b);
    out << fmt(b) << "," << fmt(i) << "," << fmt(r) << "," << bc_str << ","
        << (r < 1.0 ? 1 : 0) << "\n";
  }
  return kExitOk;
}

int cmd_exact(const ExperimentConfig& cfg, std::ostream& log) {
  const ModelParams params = make_model_params(cfg);
  const QuadratureSpec spec = make_quadrature_spec(cfg);
  const int n = params.lattice.n_sites();

  const double z = partition_function(params, spec);
  QuadratureSpec doubled = spec;
  doubled.panels *= 2;
  const double z2 = partition_function(params, doubled);

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);

  {
    json j;
    j["meta"] = meta_block(cfg);
    j["Z"] = z;
    j["tail_estimate"] = quadrature_tail_estimate(params, spec);
    j["panel_doubling_delta"] = std::abs(z2 - z);
    auto out = open_out(dir / "z.json");
    out << j.dump(2) << "\n";
  }

  {
    auto out = open_out(dir / "expectations.csv");
    write_csv_header(out, cfg, "");
    out << "observable,x,y,distance,value\n";
    for (int x = 0; x < n; ++x) {
      for (int y = x; y < n; ++y) {
        if (!(params.pinning.eps(x) > 0.0 && params.pinning.eps(y) > 0.0)) continue;
        const double v = expectation(params, spec, Observable::correlation(x, y));
        out << "correlation," << x << "," << y << "," << fmt(params.lattice.distance(x, y))
            << "," << fmt(v) << "\n";
      }
    }
    for (int x = 0; x < n; ++x) {
      const double v = expectation(params, spec, Observable::exp_half_t(x));
      out << "exp_half_t," << x << "," << x << ",0," << fmt(v) << "\n";
    }
  }

  log << "Z = " << fmt(z) << " (panel doubling delta " << fmt(std::abs(z2 - z)) << ")\n";
  return kExitOk;
}

int cmd_sample(const ExperimentConfig& cfg, std::ostream& log) {
  const ModelParams params = make_model_params(cfg);
  const McmcOptions opts = make_mcmc_options(cfg);
  const int n = params.lattice.n_sites();
  const bool single_mode = params.pinning.mode() == PinningScheme::Mode::Single;

  struct Row {
    int x, y;
    double distance;
  };
  std::vector<Observable> observables;
  std::vector<Row> rows;
  if (single_mode) {
    const int pin = params.pinning.site_a();
    for (int x = 0; x < n; ++x) {
      observables.push_back(Observable::exp_half_t(x));
      rows.push_back({x, pin, params.lattice.distance(x, pin)});
    }
  } else {
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        observables.push_back(Observable::correlation(x, y));
        rows.push_back({x, y, params.lattice.distance(x, y)});
      }
  }

  const std::vector<EstimatorResult> results = estimate_many(params, observables, opts);

  std::optional<BoundParams> bp;
  std::string refusal;
  try {
    bp = BoundParams::with_default_prefactor(params.lattice.dim(), params.beta);
  } catch (const std::domain_error& e) {
    refusal = e.what();
  }

  // Envelope comparison where the bound applies: every site for the
  // single-pinning observable, pairs with both sites pinned otherwise.
  struct EnvelopeRow {
    double distance, bound;
  };
  std::vector<EnvelopeRow> envelope_rows;
  bool pass = true;
  long checked = 0;
  if (bp) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double bound;
      if (single_mode) {
        bound = single_pinning_envelope(*bp, rows[i].distance);
      } else {
        const double ex = params.pinning.eps(rows[i].x);
        const double ey = params.pinning.eps(rows[i].y);
        if (!(ex > 0.0 && ey > 0.0)) continue;
        bound = correlation_envelope(*bp, ex, ey, rows[i].distance);
      }
      envelope_rows.push_back({rows[i].distance, bound});
      ++checked;
      if (!(results[i].mean <= bound + 3.0 * results[i].std_error)) pass = false;
    }
  }

  // Decay-rate fit over distances anchored at a pinned site.
  std::vector<DecayPoint> fit_points;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].distance > 0.0)) continue;
    if (!single_mode && !(params.pinning.eps(rows[i].x) > 0.0 ||
                          params.pinning.eps(rows[i].y) > 0.0))
      continue;
    fit_points.push_back({rows[i].distance, results[i].mean, results[i].std_error});
  }
  std::optional<DecayFit> fit;
  std::string fit_note;
  try {
    fit = fit_decay_rate(fit_points);
  } catch (const std::invalid_argument& e) {
    fit_note = e.what();
  }

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);

  {
    auto out = open_out(dir / "correlations.csv");
    write_csv_header(out, cfg, single_mode ? "exp_half_t" : "correlation");
    out << "x,y,distance,mean,stderr\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << rows[i].x << "," << rows[i].y << "," << fmt(rows[i].distance) << ","
          << fmt(results[i].mean) << "," << fmt(results[i].std_error) << "\n";
  }

  if (bp) {
    auto out = open_out(dir / "envelope.csv");
    write_csv_header(out, cfg, "");
    out << "distance,bound\n";
    for (const EnvelopeRow& e : envelope_rows)
      out << fmt(e.distance) << "," << fmt(e.bound) << "\n";
  }

  {
    json j;
    j["meta"] = meta_block(cfg);
    j["envelope_available"] = static_cast<bool>(bp);
    if (!refusal.empty()) j["envelope_refusal"] = refusal;
    if (bp) {
      j["bound_rate"] = -std::log(decay_ratio(bp->d, bp->beta));
      j["c0"] = bp->c0;
      j["checked_rows"] = checked;
      j["pass"] = pass;
    }
    if (fit) {
      j["rate"] = fit->rate;
      j["rate_stderr"] = fit->rate_std_error;
      j["intercept"] = fit->intercept;
      j["fit_points"] = fit->n_used;
    } else {
      j["fit_note"] = fit_note;
    }
    j["acceptance_rate"] = results.empty() ? 0.0 : results[0].acceptance_rate;
    j["sum_condition_holds"] = params.pinning.sum_condition_holds(n);
    auto out = open_out(dir / "fit.json");
    out << j.dump(2) << "\n";
  }

  log << "measured " << rows.size() << " observables; envelope "
      << (bp ? (pass ? "PASS" : "FAIL") : "refused (" + refusal + ")");
  if (fit) log << "; fitted rate " << fmt(fit->rate) << " +- " << fmt(fit->rate_std_error);
  log << "\n";

  if (bp && !pass) return kExitEnvelopeFailure;
  return kExitOk;
}

}  // namespace h22
