#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace ugks::experiment {

using nlohmann::json;

namespace {

const json& section(const json& doc, const char* name) {
  if (!doc.contains(name) || !doc.at(name).is_object()) {
    throw ConfigError(std::string("missing object '") + name + "'");
  }
  return doc.at(name);
}

template <class T>
std::optional<T> optional_field(const json& obj, const char* name, const char* where) {
  if (!obj.contains(name) || obj.at(name).is_null()) return std::nullopt;
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + name + " has the wrong type");
  }
}

template <class T>
T field_or(const json& obj, const char* name, const char* where, T fallback) {
  return optional_field<T>(obj, name, where).value_or(fallback);
}

void positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) throw ConfigError(std::string(what) + " must be > 0");
}

InitialKind parse_kind(const std::string& s) {
  if (s == "equilibrium-sine") return InitialKind::equilibrium_sine;
  if (s == "equilibrium-gaussian") return InitialKind::equilibrium_gaussian;
  if (s == "random-nonequilibrium") return InitialKind::random_nonequilibrium;
  throw ConfigError("unknown initial_condition.kind '" + s + "'");
}

}  // namespace

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::equilibrium_sine: return "equilibrium-sine";
    case InitialKind::equilibrium_gaussian: return "equilibrium-gaussian";
    case InitialKind::random_nonequilibrium: return "random-nonequilibrium";
  }
  return "unknown";
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  ExperimentConfig c;

  const json& model = section(doc, "model");
  c.model.a = field_or(model, "a", "model", c.model.a);
  c.model.theta = field_or(model, "theta", "model", c.model.theta);
  c.model.tau = field_or(model, "tau", "model", c.model.tau);
  positive(c.model.a, "model.a");
  positive(c.model.theta, "model.theta");
  positive(c.model.tau, "model.tau");

  if (doc.contains("velocity_grid")) {
    const json& v = section(doc, "velocity_grid");
    c.velocity_grid.half_count = field_or(v, "K", "velocity_grid", c.velocity_grid.half_count);
    c.velocity_grid.coverage = field_or(v, "coverage", "velocity_grid", c.velocity_grid.coverage);
    c.velocity_grid.renormalize =
        field_or(v, "renormalize", "velocity_grid", c.velocity_grid.renormalize);
  }
  if (c.velocity_grid.half_count < 1) throw ConfigError("velocity_grid.K must be >= 1");
  positive(c.velocity_grid.coverage, "velocity_grid.coverage");

  if (doc.contains("spatial_grid")) {
    const json& s = section(doc, "spatial_grid");
    c.spatial_grid.cells = field_or(s, "I", "spatial_grid", c.spatial_grid.cells);
    c.spatial_grid.length = field_or(s, "length", "spatial_grid", c.spatial_grid.length);
  }
  if (c.spatial_grid.cells < 2) throw ConfigError("spatial_grid.I must be >= 2");
  positive(c.spatial_grid.length, "spatial_grid.length");

  const json& run = section(doc, "run");
  c.run.t_end = optional_field<double>(run, "t_end", "run");
  c.run.steps = optional_field<long>(run, "steps", "run");
  c.run.cfl_safety = field_or(run, "cfl_safety", "run", c.run.cfl_safety);
  c.run.dt_override = optional_field<double>(run, "dt_override", "run");
  if (c.run.t_end.has_value() == c.run.steps.has_value()) {
    throw ConfigError("run needs exactly one of t_end or steps");
  }
  if (c.run.t_end && !(std::isfinite(*c.run.t_end) && *c.run.t_end >= 0.0)) {
    throw ConfigError("run.t_end must be >= 0");
  }
  if (c.run.steps && *c.run.steps < 0) throw ConfigError("run.steps must be >= 0");
  if (!(c.run.cfl_safety > 0.0 && c.run.cfl_safety <= 1.0)) {
    throw ConfigError("run.cfl_safety must lie in (0, 1]");
  }
  if (c.run.dt_override) positive(*c.run.dt_override, "run.dt_override");

  const json& ic = section(doc, "initial_condition");
  const auto kind = optional_field<std::string>(ic, "kind", "initial_condition");
  if (!kind) throw ConfigError("initial_condition.kind is required");
  c.initial_condition.kind = parse_kind(*kind);
  c.initial_condition.amplitude =
      field_or(ic, "amplitude", "initial_condition", c.initial_condition.amplitude);
  c.initial_condition.wavenumber =
      field_or(ic, "wavenumber", "initial_condition", c.initial_condition.wavenumber);
  c.initial_condition.seed = optional_field<std::uint64_t>(ic, "seed", "initial_condition");
  c.initial_condition.width = optional_field<double>(ic, "width", "initial_condition");
  if (!std::isfinite(c.initial_condition.amplitude)) {
    throw ConfigError("initial_condition.amplitude must be finite");
  }
  if (c.initial_condition.kind == InitialKind::random_nonequilibrium &&
      !c.initial_condition.seed) {
    throw ConfigError("initial_condition.seed is required for random-nonequilibrium");
  }
  if (c.initial_condition.width) positive(*c.initial_condition.width, "initial_condition.width");

  if (doc.contains("outputs")) {
    const json& o = section(doc, "outputs");
    c.outputs.directory = field_or(o, "directory", "outputs", c.outputs.directory);
    c.outputs.record_submethods =
        field_or(o, "record_submethods", "outputs", c.outputs.record_submethods);
    c.outputs.record_spectra = field_or(o, "record_spectra", "outputs", c.outputs.record_spectra);
    c.outputs.f_slices = field_or(o, "f_slices", "outputs", c.outputs.f_slices);
  }
  for (int k : c.outputs.f_slices) {
    if (k < -c.velocity_grid.half_count || k > c.velocity_grid.half_count) {
      throw ConfigError("outputs.f_slices entry " + std::to_string(k) + " is outside -K..K");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
  json doc;
  doc["model"] = {{"a", c.model.a}, {"theta", c.model.theta}, {"tau", c.model.tau}};
  doc["velocity_grid"] = {{"K", c.velocity_grid.half_count},
                          {"coverage", c.velocity_grid.coverage},
                          {"renormalize", c.velocity_grid.renormalize}};
  doc["spatial_grid"] = {{"I", c.spatial_grid.cells}, {"length", c.spatial_grid.length}};
  json run = {{"cfl_safety", c.run.cfl_safety}};
  if (c.run.t_end) run["t_end"] = *c.run.t_end;
  if (c.run.steps) run["steps"] = *c.run.steps;
  if (c.run.dt_override) run["dt_override"] = *c.run.dt_override;
  doc["run"] = run;
  json ic = {{"kind", to_string(c.initial_condition.kind)},
             {"amplitude", c.initial_condition.amplitude},
             {"wavenumber", c.initial_condition.wavenumber}};
  if (c.initial_condition.seed) ic["seed"] = *c.initial_condition.seed;
  if (c.initial_condition.width) ic["width"] = *c.initial_condition.width;
  doc["initial_condition"] = ic;
  doc["outputs"] = {{"directory", c.outputs.directory},
                    {"record_submethods", c.outputs.record_submethods},
                    {"record_spectra", c.outputs.record_spectra},
                    {"f_slices", c.outputs.f_slices}};
  return doc;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& config) {
  std::filesystem::path dir(config.outputs.directory);
  if (dir.is_relative()) {
    if (const char* root = std::getenv(kOutputRootEnv); root && *root) {
      return std::filesystem::path(root) / dir;
    }
  }
  return dir;
}

}  // namespace ugks::experiment
