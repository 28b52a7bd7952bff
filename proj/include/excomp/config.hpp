#pragma once

// Run configuration: JSON file + dotted-path overrides -> validated structs.

#include <string>
#include <vector>

#include "excomp/medium.hpp"
#include "excomp/states.hpp"

namespace excomp::config {

using fock::Complex;

struct StateConfig {
  std::string kind = "coherent";  // fock | coherent | thermal | fock_qubit | custom
  int n = 0;                      // fock
  Complex beta{1.0, 0.0};         // coherent
  double nbar = 0.0;              // thermal
  Complex beta0{1.0, 0.0};        // fock_qubit
  Complex beta1{0.0, 0.0};
  std::vector<Complex> amps;      // custom (pure); zero-padded up to dim

  states::StateSpec to_spec(int dim) const;
};

struct ScanConfig {
  double z_min = 0.0;
  double z_max = 1.0;
  int points = 33;
  std::string unit = "absolute";  // absolute | beat_length
};

struct SweepConfig {
  double omega_min = 0.0;
  double omega_max = 0.0;
  int points = 101;
};

struct RunConfig {
  int dim = 32;
  int threads = 0;  // 0: resolve from EXCITON_THREADS, then the hardware
  StateConfig state;
  medium::MediumParams medium;
  double omega = 12.0;
  ScanConfig scan;
  SweepConfig sweep;
  double thickness = 0.1;
  std::string output;  // empty: stdout
};

// Loads the optional JSON file, applies "dotted.path=value" overrides (values
// parsed as JSON when possible, kept as strings otherwise), validates, and
// returns the config. Unknown keys and malformed values throw ConfigError.
RunConfig parse_run_config(const std::string& config_path,
                           const std::vector<std::string>& overrides);

// z grid implied by a scan block; beat-length units scale by the supplied
// beat length (which must then be finite).
std::vector<double> scan_grid(const ScanConfig& scan, double beat_length);

// Effective worker count: explicit > 0 wins, then EXCITON_THREADS, then
// hardware concurrency; always at least 1.
int resolve_threads(int configured);

}  // namespace excomp::config
