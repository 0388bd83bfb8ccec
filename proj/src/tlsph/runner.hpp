#ifndef TLSPH_RUNNER_HPP
#define TLSPH_RUNNER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlsph/cases.hpp"
#include "tlsph/damping.hpp"
#include "tlsph/integrator.hpp"

namespace tlsph {

enum class SnapshotMode { None, Ends, All };

struct RunOptions {
  int threads = 1;
  std::uint64_t seed = 0;
  std::string output_dir = "out";  // empty string disables file output
  double output_interval = 0.0;    // 0 means the case default
  SnapshotMode snapshots = SnapshotMode::Ends;
};

struct ResolvedConfig {
  CaseSpec case_spec;
  DampingConfig damping;
  RunOptions options;
};

/// Parses the flat key=value configuration. `overrides` (command-line flags)
/// win over file values. Recognized keys:
///   case, resolution, end_time, seed, threads,
///   damping.scheme, damping.alpha, damping.eta, damping.beta,
///   output.dir, output.interval, output.snapshots
/// Unknown keys and malformed values are rejected with file/flag context.
ResolvedConfig parse_config(const std::optional<std::string>& config_path,
                            const std::vector<std::string>& overrides);

struct ProbeSample {
  double t = 0.0;
  std::array<double, 3> u{};
};

struct ProbeSeries {
  int dim = 0;
  std::vector<ProbeSample> samples;
};

struct RunReport {
  std::string case_name;
  int dim = 0;
  int threads = 1;
  std::uint64_t steps = 0;
  std::uint64_t damped_steps = 0;
  double neighbor_seconds = 0.0;
  double elastic_seconds = 0.0;
  double damping_seconds = 0.0;
  double total_seconds = 0.0;
  std::array<double, 3> final_probe_u{};
  bool settled = false;
  double settle_time = -1.0;
};

/// Runs the full time loop: stable step size, elastic Verlet step, random-
/// choice damping sweep, constraints, periodic output. Throws tlsph::Error on
/// solver failure (inverted element, NaN) with step diagnostics.
RunReport run_case(const ResolvedConfig& config, ProbeSeries* series_out = nullptr);

/// Plain CSV: header t,ux,uy[,uz]; 17 significant digits; LF line endings.
void write_probe_csv(const ProbeSeries& series, const std::string& path);

/// Columnar text: id,x,y[,z],vx,vy[,vz],von_mises with the same precision.
template <int D>
void write_snapshot(const ParticleSystem<D>& system, const Material& material,
                    const std::string& path);

void write_report_json(const RunReport& report, const std::string& path);

} // namespace tlsph

#endif // TLSPH_RUNNER_HPP
