#include "excomp/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "excomp/config.hpp"
#include "excomp/layer.hpp"
#include "excomp/propagation.hpp"
#include "excomp/reference.hpp"

namespace excomp::commands {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string();
}

// Output sink: a file when requested, stdout otherwise.
struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw ConfigError("cannot open output file '" + path + "'");
      out = &file;
    }
  }
};

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
};

// Convenience flags that shadow the matching config entries.
struct FlagArgs {
  std::optional<int> dim, threads;
  std::optional<double> omega, thickness;
  std::optional<std::string> output;
};

void add_compute_options(CLI::App* cmd, CommonArgs& common, FlagArgs& flags) {
  cmd->add_option("--config", common.config_path, "JSON configuration file");
  cmd->add_option("--set", common.overrides,
                  "dotted-path override key=value (repeatable)");
  cmd->add_option("--dim", flags.dim, "truncated basis dimension [8, 512]");
  cmd->add_option("--threads", flags.threads,
                  "worker threads (0: EXCITON_THREADS, then hardware)");
  cmd->add_option("--omega", flags.omega, "drive frequency");
  cmd->add_option("--thickness", flags.thickness, "layer thickness");
  cmd->add_option("--output", flags.output, "output file (default stdout)");
}

config::RunConfig load(const CommonArgs& common, const FlagArgs& flags) {
  config::RunConfig cfg =
      config::parse_run_config(common.config_path, common.overrides);
  if (flags.dim) {
    cfg.dim = *flags.dim;
    if (cfg.dim < 8 || cfg.dim > 512) {
      throw ConfigError("'dim' must lie in [8, 512]");
    }
  }
  if (flags.threads) {
    cfg.threads = *flags.threads;
    if (cfg.threads < 0) throw ConfigError("'threads' must be non-negative");
  }
  if (flags.omega) cfg.omega = *flags.omega;
  if (flags.thickness) {
    cfg.thickness = *flags.thickness;
    if (cfg.thickness <= 0.0) throw ConfigError("'thickness' must be positive");
  }
  if (flags.output) cfg.output = *flags.output;
  return cfg;
}

const char* length_unit(const config::RunConfig& cfg) {
  return cfg.medium.units == medium::Units::gaussian ? "cm" : "arb";
}

const char* frequency_unit(const config::RunConfig& cfg) {
  return cfg.medium.units == medium::Units::gaussian ? "rad/s" : "arb";
}

int do_propagate(const config::RunConfig& cfg) {
  const fock::HilbertSpace space(cfg.dim);
  const auto built = states::build_state(cfg.state.to_spec(cfg.dim), space);
  const auto resp = medium::refractive_indices(cfg.omega, cfg.medium);
  const auto zs = config::scan_grid(cfg.scan, resp.beat_length);
  const int threads = config::resolve_threads(cfg.threads);
  const auto rows = propagation::propagate_scan(built, resp, zs, threads);

  Sink sink(cfg.output);
  *sink.out << "z[" << length_unit(cfg)
            << "],kappa_re,kappa_im,g2,flux,trace_drift\n";
  for (const auto& row : rows) {
    *sink.out << fmt(row.z) << ',' << fmt(row.kappa.real()) << ','
              << fmt(row.kappa.imag()) << ',' << fmt_opt(row.g2) << ','
              << fmt(row.flux) << ',' << fmt(row.trace_drift) << '\n';
  }
  return 0;
}

int do_sweep(const config::RunConfig& cfg) {
  const fock::HilbertSpace space(cfg.dim);
  const auto built = states::build_state(cfg.state.to_spec(cfg.dim), space);
  const double mean_n =
      fock::expectation(built.rho, fock::number_operator(space)).real();
  const fock::Complex mean_a = fock::mean_annihilation(built.rho);

  std::vector<double> omegas;
  for (int i = 0; i < cfg.sweep.points; ++i) {
    const double frac = cfg.sweep.points == 1
                            ? 0.0
                            : static_cast<double>(i) / (cfg.sweep.points - 1);
    omegas.push_back(cfg.sweep.omega_min +
                     (cfg.sweep.omega_max - cfg.sweep.omega_min) * frac);
  }

  Sink sink(cfg.output);
  *sink.out << "omega[" << frequency_unit(cfg)
            << "],n1_re,n1_im,n2_re,n2_im,beat_length[" << length_unit(cfg)
            << "],forbidden,T1_re,T1_im,R1_re,R1_im,T2_re,T2_im,R2_re,R2_im,"
               "photocurrent,coherent_photocurrent\n";
  for (const double omega : omegas) {
    const auto resp = medium::refractive_indices(omega, cfg.medium);
    *sink.out << fmt(omega) << ',' << fmt(resp.n1.real()) << ','
              << fmt(resp.n1.imag()) << ',' << fmt(resp.n2.real()) << ','
              << fmt(resp.n2.imag()) << ',' << fmt(resp.beat_length) << ','
              << (resp.forbidden ? '1' : '0') << ',';
    if (resp.forbidden) {
      // No propagating layer response: leave the scattering fields empty.
      *sink.out << ",,,,,,,,,\n";
      continue;
    }
    const auto L = layer::layer_response(resp, cfg.thickness);
    const double current = layer::photocurrent(mean_n, mean_a, L);
    const double coherent_current = std::norm(L.T1) * mean_n;
    *sink.out << fmt(L.T1.real()) << ',' << fmt(L.T1.imag()) << ','
              << fmt(L.R1.real()) << ',' << fmt(L.R1.imag()) << ','
              << fmt(L.T2.real()) << ',' << fmt(L.T2.imag()) << ','
              << fmt(L.R2.real()) << ',' << fmt(L.R2.imag()) << ','
              << fmt(current) << ',' << fmt(coherent_current) << '\n';
  }
  return 0;
}

int do_layer(const config::RunConfig& cfg) {
  const fock::HilbertSpace space(cfg.dim);
  const auto built = states::build_state(cfg.state.to_spec(cfg.dim), space);
  const double mean_n =
      fock::expectation(built.rho, fock::number_operator(space)).real();
  const fock::Complex mean_a = fock::mean_annihilation(built.rho);

  const auto resp = medium::refractive_indices(cfg.omega, cfg.medium);
  const auto L = layer::layer_response(resp, cfg.thickness);
  const auto means = layer::output_means(L, mean_a, fock::Complex(0, 0));

  nlohmann::ordered_json j;
  j["omega"] = cfg.omega;
  j["k"] = resp.k;
  j["thickness"] = cfg.thickness;
  j["n1"] = {resp.n1.real(), resp.n1.imag()};
  j["n2"] = {resp.n2.real(), resp.n2.imag()};
  j["beat_length"] = resp.beat_length;
  j["well_conditioned"] = L.well_conditioned;
  j["T1"] = {L.T1.real(), L.T1.imag()};
  j["R1"] = {L.R1.real(), L.R1.imag()};
  j["T2"] = {L.T2.real(), L.T2.imag()};
  j["R2"] = {L.R2.real(), L.R2.imag()};
  j["input_mean_n"] = mean_n;
  j["input_mean_a"] = {mean_a.real(), mean_a.imag()};
  j["output_mean_fwd"] = {means.fwd.real(), means.fwd.imag()};
  j["output_mean_bwd"] = {means.bwd.real(), means.bwd.imag()};
  j["photocurrent"] = layer::photocurrent(mean_n, mean_a, L);
  j["coherent_photocurrent"] = std::norm(L.T1) * mean_n;

  Sink sink(cfg.output);
  *sink.out << j.dump(2) << '\n';
  return 0;
}

int do_verify(const std::string& profile_name) {
  reference::Profile profile;
  if (profile_name == "quick") {
    profile = reference::Profile::quick;
  } else if (profile_name == "full") {
    profile = reference::Profile::full;
  } else {
    throw ConfigError("'--profile' must be quick or full");
  }

  const auto results = reference::run_suite(profile);
  int failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    std::printf("%s  %-32s residual %-12.3e tol %-9.0e cases %d",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.max_residual,
                r.tolerance, r.cases);
    if (!r.pass) std::printf("  worst seed %llu",
                             static_cast<unsigned long long>(r.worst_seed));
    std::printf("\n");
  }
  std::printf("%zu/%zu properties passed\n", results.size() - failed,
              results.size());
  return failed == 0 ? 0 : 4;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"quantum light in a statistics-sensitive excitonic composite"};
  app.require_subcommand(1);

  CommonArgs common;
  FlagArgs flags;
  std::string profile_name = "quick";

  CLI::App* propagate =
      app.add_subcommand("propagate", "scan state observables along z");
  add_compute_options(propagate, common, flags);
  CLI::App* sweep =
      app.add_subcommand("sweep", "sweep the layer response over frequency");
  add_compute_options(sweep, common, flags);
  CLI::App* lay =
      app.add_subcommand("layer", "report the layer response at one frequency");
  add_compute_options(lay, common, flags);
  CLI::App* verify =
      app.add_subcommand("verify", "run the seeded property checks");
  verify->add_option("--profile", profile_name, "quick or full");

  // Bare dotted options double as overrides: --scan.points=65 means
  // --set scan.points=65.
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& tok = args[i];
    if (tok.rfind("--", 0) == 0) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos && tok.find('.') < eq) {
        common.overrides.push_back(tok.substr(2));
        continue;
      }
    }
    rest.push_back(tok);
  }

  try {
    std::reverse(rest.begin(), rest.end());
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (propagate->parsed()) return do_propagate(load(common, flags));
    if (sweep->parsed()) return do_sweep(load(common, flags));
    if (lay->parsed()) return do_layer(load(common, flags));
    if (verify->parsed()) return do_verify(profile_name);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ForbiddenZoneError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const AccuracyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args);
}

}  // namespace excomp::commands
