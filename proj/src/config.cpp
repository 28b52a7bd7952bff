#include "excomp/config.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include "excomp/errors.hpp"
#include "json.hpp"

namespace excomp::config {
namespace {

using json = nlohmann::ordered_json;

json default_document() {
  json j;
  j["dim"] = 32;
  j["threads"] = 0;
  j["omega"] = 12.0;
  j["thickness"] = 0.1;
  j["output"] = "";
  j["state"] = {{"kind", "coherent"},
                {"n", 0},
                {"beta", json::array({1.0, 0.0})},
                {"nbar", 0.0},
                {"beta0", json::array({1.0, 0.0})},
                {"beta1", json::array({0.0, 0.0})},
                {"amps", json::array()}};
  j["medium"] = {{"omega0", 10.0}, {"delta_omega", 1.0},
                 {"mu_sq", 1.0},   {"vol", 1.0},
                 {"rho", 1.0},     {"gamma", 0.0},
                 {"eps_host", 1.0}, {"units", "dimensionless"}};
  j["scan"] = {{"z_min", 0.0},
               {"z_max", 1.0},
               {"points", 33},
               {"unit", "absolute"}};
  j["sweep"] = {{"omega_min", 0.0}, {"omega_max", 0.0}, {"points", 101}};
  return j;
}

// Recursive merge that rejects keys absent from the defaults, so typos
// surface instead of being silently ignored.
void merge_into(json& base, const json& user, const std::string& path) {
  if (!user.is_object()) {
    throw ConfigError("expected an object at '" +
                      (path.empty() ? std::string("<root>") : path) + "'");
  }
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string here = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) {
      throw ConfigError("unknown configuration key '" + here + "'");
    }
    json& slot = base[it.key()];
    if (slot.is_object()) {
      merge_into(slot, it.value(), here);
    } else {
      slot = it.value();
    }
  }
}

void apply_override(json& doc, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + text + "' is not of the form key=value");
  }
  const std::string path = text.substr(0, eq);
  const std::string raw = text.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;  // bare strings stay strings
  }

  json* slot = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string key =
        dot == std::string::npos ? path.substr(start) : path.substr(start, dot - start);
    if (key.empty() || !slot->is_object() || !slot->contains(key)) {
      throw ConfigError("unknown configuration key '" + path + "'");
    }
    slot = &(*slot)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (slot->is_object()) {
    merge_into(*slot, value, path);
  } else {
    *slot = value;
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) {
    throw ConfigError("'" + path + "' must be a number");
  }
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) {
    throw ConfigError("'" + path + "' must be an integer");
  }
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) {
    throw ConfigError("'" + path + "' must be a string");
  }
  return j.get<std::string>();
}

// Complex values are a plain number or an [re, im] pair.
Complex get_complex(const json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw ConfigError("'" + path + "' must be a number or an [re, im] pair");
}

StateConfig extract_state(const json& j) {
  StateConfig s;
  s.kind = get_string(j["kind"], "state.kind");
  if (s.kind != "fock" && s.kind != "coherent" && s.kind != "thermal" &&
      s.kind != "fock_qubit" && s.kind != "custom") {
    throw ConfigError("unknown state kind '" + s.kind + "'");
  }
  s.n = get_int(j["n"], "state.n");
  s.beta = get_complex(j["beta"], "state.beta");
  s.nbar = get_number(j["nbar"], "state.nbar");
  s.beta0 = get_complex(j["beta0"], "state.beta0");
  s.beta1 = get_complex(j["beta1"], "state.beta1");
  if (!j["amps"].is_array()) {
    throw ConfigError("'state.amps' must be an array");
  }
  for (std::size_t i = 0; i < j["amps"].size(); ++i) {
    s.amps.push_back(get_complex(j["amps"][i],
                                 "state.amps[" + std::to_string(i) + "]"));
  }
  return s;
}

medium::MediumParams extract_medium(const json& j) {
  medium::MediumParams p;
  p.omega0 = get_number(j["omega0"], "medium.omega0");
  p.delta_omega = get_number(j["delta_omega"], "medium.delta_omega");
  p.mu_sq = get_number(j["mu_sq"], "medium.mu_sq");
  p.vol = get_number(j["vol"], "medium.vol");
  p.rho = get_number(j["rho"], "medium.rho");
  p.gamma = get_number(j["gamma"], "medium.gamma");
  p.eps_host = get_number(j["eps_host"], "medium.eps_host");
  const std::string units = get_string(j["units"], "medium.units");
  if (units == "dimensionless") {
    p.units = medium::Units::dimensionless;
  } else if (units == "gaussian") {
    p.units = medium::Units::gaussian;
  } else {
    throw ConfigError("'medium.units' must be dimensionless or gaussian");
  }
  return p;
}

}  // namespace

states::StateSpec StateConfig::to_spec(int dim) const {
  if (kind == "fock") return states::FockSpec{n};
  if (kind == "coherent") return states::CoherentSpec{beta};
  if (kind == "thermal") return states::ThermalSpec{nbar};
  if (kind == "fock_qubit") return states::FockQubitSpec{beta0, beta1};
  if (kind == "custom") {
    if (amps.empty()) {
      throw ConfigError("custom states need a non-empty 'state.amps'");
    }
    if (amps.size() > static_cast<std::size_t>(dim)) {
      throw ConfigError("'state.amps' has " + std::to_string(amps.size()) +
                        " entries but dim is " + std::to_string(dim));
    }
    fock::Vector v = fock::Vector::Zero(dim);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = amps[i];
    }
    return states::CustomSpec{v, std::nullopt};
  }
  throw ConfigError("unknown state kind '" + kind + "'");
}

RunConfig parse_run_config(const std::string& config_path,
                           const std::vector<std::string>& overrides) {
  json doc = default_document();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      throw ConfigError("cannot read config file '" + config_path + "'");
    }
    json user;
    try {
      user = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("invalid JSON in '" + config_path + "': " + e.what());
    }
    merge_into(doc, user, "");
  }
  for (const auto& text : overrides) {
    apply_override(doc, text);
  }

  RunConfig cfg;
  cfg.dim = get_int(doc["dim"], "dim");
  if (cfg.dim < 8 || cfg.dim > 512) {
    throw ConfigError("'dim' must lie in [8, 512]");
  }
  cfg.threads = get_int(doc["threads"], "threads");
  if (cfg.threads < 0) {
    throw ConfigError("'threads' must be non-negative");
  }
  cfg.omega = get_number(doc["omega"], "omega");
  cfg.thickness = get_number(doc["thickness"], "thickness");
  if (cfg.thickness <= 0.0) {
    throw ConfigError("'thickness' must be positive");
  }
  cfg.output = get_string(doc["output"], "output");
  cfg.state = extract_state(doc["state"]);
  cfg.medium = extract_medium(doc["medium"]);

  cfg.scan.z_min = get_number(doc["scan"]["z_min"], "scan.z_min");
  cfg.scan.z_max = get_number(doc["scan"]["z_max"], "scan.z_max");
  cfg.scan.points = get_int(doc["scan"]["points"], "scan.points");
  if (cfg.scan.points < 1) {
    throw ConfigError("'scan.points' must be at least 1");
  }
  cfg.scan.unit = get_string(doc["scan"]["unit"], "scan.unit");
  if (cfg.scan.unit != "absolute" && cfg.scan.unit != "beat_length") {
    throw ConfigError("'scan.unit' must be absolute or beat_length");
  }

  cfg.sweep.omega_min = get_number(doc["sweep"]["omega_min"], "sweep.omega_min");
  cfg.sweep.omega_max = get_number(doc["sweep"]["omega_max"], "sweep.omega_max");
  cfg.sweep.points = get_int(doc["sweep"]["points"], "sweep.points");
  if (cfg.sweep.points < 1) {
    throw ConfigError("'sweep.points' must be at least 1");
  }

  cfg.medium.validate();
  return cfg;
}

std::vector<double> scan_grid(const ScanConfig& scan, double beat_length) {
  double unit = 1.0;
  if (scan.unit == "beat_length") {
    if (!std::isfinite(beat_length)) {
      throw ValidationError(
          "beat-length scan units need a finite beat length");
    }
    unit = beat_length;
  }
  std::vector<double> zs;
  zs.reserve(static_cast<std::size_t>(scan.points));
  if (scan.points == 1) {
    zs.push_back(scan.z_min * unit);
    return zs;
  }
  for (int i = 0; i < scan.points; ++i) {
    const double frac = static_cast<double>(i) / (scan.points - 1);
    zs.push_back((scan.z_min + (scan.z_max - scan.z_min) * frac) * unit);
  }
  return zs;
}

int resolve_threads(int configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("EXCITON_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1) {
      throw ConfigError("EXCITON_THREADS must be a positive integer");
    }
    return static_cast<int>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace excomp::config
