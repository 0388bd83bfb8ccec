// Command-line driver for the relaxation benchmarks. Talks to the solver
// exclusively through the shared-library C API.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tlsph/tlsph.h"

int main(int argc, char** argv) {
  CLI::App app{"Total-Lagrangian SPH solver with splitting random-choice "
               "dynamic relaxation"};

  std::string config_file;
  std::string case_name;
  std::string damping_scheme;
  std::string output_dir;
  std::string snapshots;
  int resolution = 0;
  int threads = 0;
  double alpha = -1.0, eta = -1.0, beta = -1.0;
  double end_time = -1.0, output_interval = -1.0;
  long long seed = -1;
  bool list_cases = false;

  app.add_option("--config", config_file, "configuration file (key = value lines)")
      ->check(CLI::ExistingFile);
  app.add_option("--case", case_name,
                 "benchmark case: bending_cantilever, twisting_cantilever, "
                 "falling_ball");
  app.add_option("--resolution", resolution,
                 "particles across the characteristic length");
  app.add_option("--damping", damping_scheme,
                 "damping scheme: explicit, particle_split, pairwise_split");
  app.add_option("--alpha", alpha, "random-choice probability in (0, 1]");
  app.add_option("--eta", eta, "artificial dynamic viscosity");
  app.add_option("--beta", beta, "shape parameter; eta = beta/4 sqrt(rho E) L");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--threads", threads, "worker threads");
  app.add_option("--end-time", end_time, "simulated end time [s]");
  app.add_option("--output-dir", output_dir,
                 "output directory; empty disables file output");
  app.add_option("--output-interval", output_interval,
                 "probe/snapshot interval [s]");
  app.add_option("--snapshots", snapshots, "snapshot cadence: none, ends, all");
  app.add_flag("--list-cases", list_cases, "list built-in cases and exit");

  CLI11_PARSE(app, argc, argv);

  if (list_cases) {
    std::puts("bending_cantilever   3D cantilever under gravity");
    std::puts("twisting_cantilever  3D cantilever under a rotational body force");
    std::puts("falling_ball         2D elastic ball bouncing on a floor");
    return 0;
  }

  std::vector<std::string> overrides;
  auto add = [&overrides](const std::string& key, const std::string& value) {
    overrides.push_back(key + "=" + value);
  };
  if (!case_name.empty()) add("case", case_name);
  if (resolution > 0) add("resolution", std::to_string(resolution));
  if (!damping_scheme.empty()) add("damping.scheme", damping_scheme);
  if (alpha >= 0.0) add("damping.alpha", std::to_string(alpha));
  if (eta >= 0.0) add("damping.eta", std::to_string(eta));
  if (beta >= 0.0) add("damping.beta", std::to_string(beta));
  if (seed >= 0) add("seed", std::to_string(seed));
  if (threads > 0) add("threads", std::to_string(threads));
  if (end_time >= 0.0) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", end_time);
    add("end_time", buf);
  }
  if (app.count("--output-dir") > 0) add("output.dir", output_dir);
  if (output_interval > 0.0) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", output_interval);
    add("output.interval", buf);
  }
  if (!snapshots.empty()) add("output.snapshots", snapshots);

  std::vector<const char*> override_ptrs;
  override_ptrs.reserve(overrides.size());
  for (const auto& s : overrides) override_ptrs.push_back(s.c_str());

  tlsph_sim* sim = nullptr;
  tlsph_status status = tlsph_sim_create(
      config_file.empty() ? nullptr : config_file.c_str(),
      override_ptrs.data(), override_ptrs.size(), &sim);
  if (status != TLSPH_OK) {
    std::fprintf(stderr, "error (%s): %s\n", tlsph_status_name(status),
                 tlsph_last_error());
    return 1;
  }

  status = tlsph_sim_run(sim);
  if (status != TLSPH_OK) {
    std::fprintf(stderr, "error (%s): %s\n", tlsph_status_name(status),
                 tlsph_last_error());
    tlsph_sim_destroy(sim);
    return 1;
  }

  const int dim = tlsph_sim_dim(sim);
  double u[3] = {0.0, 0.0, 0.0};
  tlsph_sim_probe_displacement(sim, u, 3);

  std::printf("steps:            %llu\n",
              static_cast<unsigned long long>(tlsph_sim_step_count(sim)));
  std::printf("damped steps:     %llu\n",
              static_cast<unsigned long long>(tlsph_sim_damped_step_count(sim)));
  std::printf("threads:          %d\n", tlsph_sim_thread_count(sim));
  std::printf("neighbor build:   %.3f s\n", tlsph_sim_phase_seconds(sim, "neighbor"));
  std::printf("elastic steps:    %.3f s\n", tlsph_sim_phase_seconds(sim, "elastic"));
  std::printf("damping sweeps:   %.3f s\n", tlsph_sim_phase_seconds(sim, "damping"));
  std::printf("total wall time:  %.3f s\n", tlsph_sim_phase_seconds(sim, "total"));
  if (dim == 2) {
    std::printf("final probe u:    (%.6e, %.6e)\n", u[0], u[1]);
  } else {
    std::printf("final probe u:    (%.6e, %.6e, %.6e)\n", u[0], u[1], u[2]);
  }
  if (tlsph_sim_settled(sim)) {
    std::printf("settled:          yes (t = %.4f s)\n", tlsph_sim_settle_time(sim));
  } else {
    std::printf("settled:          no\n");
  }

  tlsph_sim_destroy(sim);
  return 0;
}
