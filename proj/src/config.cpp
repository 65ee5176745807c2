#include "h22/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace h22 {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

Bc parse_bc(const std::string& s) {
  if (s == "periodic") return Bc::Periodic;
  if (s == "neumann") return Bc::Neumann;
  throw ConfigError("bc must be 'periodic' or 'neumann', got '" + s + "'");
}

PinningScheme parse_pinning(const json& j) {
  if (!j.is_object()) throw ConfigError("pinning must be an object");
  const std::string mode = j.value("mode", "");
  if (mode == "uniform") {
    check_keys(j, "model.pinning", {"mode", "eps"});
    if (!j.contains("eps")) throw ConfigError("uniform pinning needs 'eps'");
    return PinningScheme::uniform(j.at("eps").get<double>());
  }
  if (mode == "two_point") {
    check_keys(j, "model.pinning", {"mode", "x", "eps_x", "y", "eps_y"});
    for (const char* k : {"x", "eps_x", "y", "eps_y"})
      if (!j.contains(k)) throw ConfigError(std::string("two_point pinning needs '") + k + "'");
    return PinningScheme::two_point(j.at("x").get<int>(), j.at("eps_x").get<double>(),
                                    j.at("y").get<int>(), j.at("eps_y").get<double>());
  }
  if (mode == "single") {
    check_keys(j, "model.pinning", {"mode", "site", "eps"});
    for (const char* k : {"site", "eps"})
      if (!j.contains(k)) throw ConfigError(std::string("single pinning needs '") + k + "'");
    return PinningScheme::single(j.at("site").get<int>(), j.at("eps").get<double>());
  }
  throw ConfigError("pinning mode must be 'uniform', 'two_point' or 'single'");
}

json pinning_to_json(const PinningScheme& p) {
  json j;
  switch (p.mode()) {
    case PinningScheme::Mode::Uniform:
      j["mode"] = "uniform";
      j["eps"] = p.eps_a();
      break;
    case PinningScheme::Mode::TwoPoint:
      j["mode"] = "two_point";
      j["x"] = p.site_a();
      j["eps_x"] = p.eps_a();
      j["y"] = p.site_b();
      j["eps_y"] = p.eps_b();
      break;
    case PinningScheme::Mode::Single:
      j["mode"] = "single";
      j["site"] = p.site_a();
      j["eps"] = p.eps_a();
      break;
  }
  return j;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(j, "config", {"model", "run", "quadrature", "output"});

  ExperimentConfig cfg;

  if (j.contains("model")) {
    const json& m = j.at("model");
    check_keys(m, "model", {"extents", "bc", "beta", "pinning"});
    if (m.contains("extents")) {
      cfg.extents = m.at("extents").get<std::vector<int>>();
      if (cfg.extents.empty()) throw ConfigError("extents must be non-empty");
    }
    if (m.contains("bc")) cfg.bc = parse_bc(m.at("bc").get<std::string>());
    if (m.contains("beta")) cfg.beta = m.at("beta").get<double>();
    if (m.contains("pinning")) cfg.pinning = parse_pinning(m.at("pinning"));
  }

  if (j.contains("run")) {
    const json& r = j.at("run");
    check_keys(r, "run",
               {"seed", "chains", "sweeps", "burn_in", "proposal_sigma", "tune_sigma"});
    if (r.contains("seed")) cfg.seed = r.at("seed").get<std::uint64_t>();
    if (r.contains("chains")) cfg.chains = r.at("chains").get<int>();
    if (r.contains("sweeps")) cfg.sweeps = r.at("sweeps").get<long>();
    if (r.contains("burn_in")) cfg.burn_in = r.at("burn_in").get<long>();
    if (r.contains("proposal_sigma")) cfg.proposal_sigma = r.at("proposal_sigma").get<double>();
    if (r.contains("tune_sigma")) cfg.tune_sigma = r.at("tune_sigma").get<bool>();
  }

  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    check_keys(q, "quadrature", {"half_width", "panels", "order"});
    if (q.contains("half_width")) cfg.quad_half_width = q.at("half_width").get<double>();
    if (q.contains("panels")) cfg.quad_panels = q.at("panels").get<int>();
    if (q.contains("order")) cfg.quad_order = q.at("order").get<int>();
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    check_keys(o, "output", {"directory", "formats"});
    if (o.contains("directory")) cfg.out_dir = o.at("directory").get<std::string>();
    if (o.contains("formats")) cfg.formats = o.at("formats").get<std::vector<std::string>>();
    for (const std::string& f : cfg.formats)
      if (f != "csv" && f != "json")
        throw ConfigError("unknown output format '" + f + "' (csv or json)");
  }

  // validate against the same preconditions as the modules this drives
  make_model_params(cfg);
  if (cfg.chains < 1) throw ConfigError("run.chains must be >= 1");
  if (cfg.burn_in < 0 || cfg.sweeps <= cfg.burn_in)
    throw ConfigError("run.sweeps must exceed run.burn_in");
  if (!(cfg.proposal_sigma >= 0.0)) throw ConfigError("run.proposal_sigma must be >= 0");
  if (cfg.quad_half_width && !(*cfg.quad_half_width > 0.0))
    throw ConfigError("quadrature.half_width must be positive");
  if (cfg.quad_panels && *cfg.quad_panels < 1)
    throw ConfigError("quadrature.panels must be positive");
  if (cfg.quad_order && *cfg.quad_order < 1)
    throw ConfigError("quadrature.order must be positive");
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ModelParams make_model_params(const ExperimentConfig& cfg) {
  Lattice lat(cfg.extents, cfg.bc);
  PinningScheme pin = cfg.pinning ? *cfg.pinning
                                  : PinningScheme::uniform(1.0 / lat.n_sites());
  if (!pin.any_positive())
    throw ConfigError("at least one pinning weight must be positive");
  if (!(cfg.beta > 0.0)) throw ConfigError("model.beta must be positive");
  try {
    return ModelParams(cfg.beta, std::move(lat), pin);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

McmcOptions make_mcmc_options(const ExperimentConfig& cfg) {
  McmcOptions o;
  o.sweeps = cfg.sweeps;
  o.burn_in = cfg.burn_in;
  o.chains = cfg.chains;
  o.seed = cfg.seed;
  o.proposal_sigma = cfg.proposal_sigma;
  o.tune_sigma = cfg.tune_sigma;
  return o;
}

QuadratureSpec make_quadrature_spec(const ExperimentConfig& cfg) {
  QuadratureSpec s = QuadratureSpec::recommended(make_model_params(cfg));
  if (cfg.quad_half_width) s.half_width = *cfg.quad_half_width;
  if (cfg.quad_panels) s.panels = *cfg.quad_panels;
  if (cfg.quad_order) s.order = *cfg.quad_order;
  return s;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["model"]["extents"] = cfg.extents;
  j["model"]["bc"] = cfg.bc == Bc::Periodic ? "periodic" : "neumann";
  j["model"]["beta"] = cfg.beta;
  if (cfg.pinning) j["model"]["pinning"] = pinning_to_json(*cfg.pinning);
  j["run"]["seed"] = cfg.seed;
  j["run"]["chains"] = cfg.chains;
  j["run"]["sweeps"] = cfg.sweeps;
  j["run"]["burn_in"] = cfg.burn_in;
  j["run"]["proposal_sigma"] = cfg.proposal_sigma;
  j["run"]["tune_sigma"] = cfg.tune_sigma;
  if (cfg.quad_half_width) j["quadrature"]["half_width"] = *cfg.quad_half_width;
  if (cfg.quad_panels) j["quadrature"]["panels"] = *cfg.quad_panels;
  if (cfg.quad_order) j["quadrature"]["order"] = *cfg.quad_order;
  j["output"]["directory"] = cfg.out_dir;
  j["output"]["formats"] = cfg.formats;
  return j.dump();  // object keys serialize in sorted order
}

std::string config_hash(const ExperimentConfig& cfg) {
  // identifies the experiment: the output block does not change the data
  json j = json::parse(config_to_json(cfg));
  j.erase("output");
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace h22
