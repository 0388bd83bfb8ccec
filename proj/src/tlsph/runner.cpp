#include "tlsph/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tlsph/errors.hpp"

namespace tlsph {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const std::vector<std::string> kKnownKeys = {
    "case",          "resolution",   "end_time",
    "seed",          "threads",      "damping.scheme",
    "damping.alpha", "damping.eta",  "damping.beta",
    "output.dir",    "output.interval", "output.snapshots",
};

struct RawConfig {
  std::map<std::string, std::string> values;

  void set(const std::string& key, const std::string& value,
           const std::string& context) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      fail(ErrorKind::Parse, context + ": unknown key '" + key + "'");
    }
    values[key] = value;
  }

  const std::string* get(const std::string& key) const {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  }
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

void parse_file_into(const std::string& path, RawConfig& raw) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Io, "cannot read config file '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string context = path + ":" + std::to_string(line_no);
    require(eq != std::string::npos, ErrorKind::Parse,
            context + ": expected 'key = value'");
    raw.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), context);
  }
}

double parse_double(const std::string& value, const std::string& context) {
  try {
    std::size_t pos = 0;
    const double parsed = std::stod(value, &pos);
    require(pos == value.size(), ErrorKind::Parse,
            context + ": trailing characters in number '" + value + "'");
    return parsed;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, context + ": malformed number '" + value + "'");
  }
}

long long parse_integer(const std::string& value, const std::string& context) {
  try {
    std::size_t pos = 0;
    const long long parsed = std::stoll(value, &pos);
    require(pos == value.size(), ErrorKind::Parse,
            context + ": trailing characters in integer '" + value + "'");
    return parsed;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, context + ": malformed integer '" + value + "'");
  }
}

}  // namespace

ResolvedConfig parse_config(const std::optional<std::string>& config_path,
                            const std::vector<std::string>& overrides) {
  RawConfig raw;
  if (config_path) parse_file_into(*config_path, raw);
  for (const auto& entry : overrides) {
    const auto eq = entry.find('=');
    const std::string context = "flag '" + entry + "'";
    require(eq != std::string::npos, ErrorKind::Parse,
            context + ": expected key=value");
    raw.set(trim(entry.substr(0, eq)), trim(entry.substr(eq + 1)), context);
  }

  const std::string* case_name = raw.get("case");
  require(case_name != nullptr, ErrorKind::Parse, "missing required key 'case'");

  int resolution = 0;
  if (const auto* v = raw.get("resolution")) {
    resolution = static_cast<int>(parse_integer(*v, "resolution"));
    require(resolution > 0, ErrorKind::Parse, "resolution must be positive");
  }

  ResolvedConfig config;
  config.case_spec = make_case(*case_name, resolution);

  if (const auto* v = raw.get("end_time")) {
    config.case_spec.end_time = parse_double(*v, "end_time");
    require(config.case_spec.end_time >= 0.0, ErrorKind::Parse,
            "end_time must be non-negative");
  }

  config.damping.scheme = DampingScheme::ParticleSplit;
  if (const auto* v = raw.get("damping.scheme")) {
    if (*v == "explicit") {
      config.damping.scheme = DampingScheme::Explicit;
    } else if (*v == "particle_split") {
      config.damping.scheme = DampingScheme::ParticleSplit;
    } else if (*v == "pairwise_split") {
      config.damping.scheme = DampingScheme::PairwiseSplit;
    } else {
      fail(ErrorKind::Parse, "damping.scheme: unknown scheme '" + *v +
                                 "' (expected explicit, particle_split or "
                                 "pairwise_split)");
    }
  }

  config.damping.alpha = 0.2;
  if (const auto* v = raw.get("damping.alpha")) {
    config.damping.alpha = parse_double(*v, "damping.alpha");
  }
  require(config.damping.alpha > 0.0 && config.damping.alpha <= 1.0,
          ErrorKind::Parse, "damping.alpha must lie in (0, 1]");

  const auto* eta_value = raw.get("damping.eta");
  const auto* beta_value = raw.get("damping.beta");
  require(!(eta_value && beta_value), ErrorKind::Parse,
          "specify either damping.eta or damping.beta, not both");
  if (eta_value) {
    config.damping.eta = parse_double(*eta_value, "damping.eta");
    require(config.damping.eta >= 0.0, ErrorKind::Parse,
            "damping.eta must be non-negative");
  } else {
    const double beta =
        beta_value ? parse_double(*beta_value, "damping.beta")
                   : config.case_spec.default_beta;
    require(beta >= 0.0, ErrorKind::Parse, "damping.beta must be non-negative");
    config.damping.eta =
        beta == 0.0 ? 0.0
                    : artificial_viscosity(beta, config.case_spec.rho0,
                                           config.case_spec.young_modulus,
                                           config.case_spec.characteristic_length);
  }

  if (const auto* v = raw.get("seed")) {
    config.damping.seed =
        static_cast<std::uint64_t>(parse_integer(*v, "seed"));
  }
  config.options.seed = config.damping.seed;

  if (const auto* v = raw.get("threads")) {
    config.options.threads = static_cast<int>(parse_integer(*v, "threads"));
    require(config.options.threads >= 1, ErrorKind::Parse,
            "threads must be at least 1");
  }

  if (const auto* v = raw.get("output.dir")) config.options.output_dir = *v;

  config.options.output_interval = config.case_spec.default_output_interval;
  if (const auto* v = raw.get("output.interval")) {
    config.options.output_interval = parse_double(*v, "output.interval");
    require(config.options.output_interval > 0.0, ErrorKind::Parse,
            "output.interval must be positive");
  }

  if (const auto* v = raw.get("output.snapshots")) {
    if (*v == "none") {
      config.options.snapshots = SnapshotMode::None;
    } else if (*v == "ends") {
      config.options.snapshots = SnapshotMode::Ends;
    } else if (*v == "all") {
      config.options.snapshots = SnapshotMode::All;
    } else {
      fail(ErrorKind::Parse,
           "output.snapshots: expected none, ends or all, got '" + *v + "'");
    }
  }

  return config;
}

namespace {

void append_value(std::string& line, double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  line += buffer;
}

template <int D>
void record_probe(ProbeSeries& series, const ParticleSystem<D>& system,
                  std::size_t probe, double t) {
  ProbeSample sample;
  sample.t = t;
  const Vec<D> u = system.r[probe] - system.r0[probe];
  for (int d = 0; d < D; ++d) sample.u[static_cast<std::size_t>(d)] = u[d];
  series.samples.push_back(sample);
}

template <int D>
void check_finite(const ParticleSystem<D>& system, std::uint64_t step) {
  double total = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    total += system.v[i].squaredNorm() + system.r[i].squaredNorm();
  }
  if (std::isfinite(total)) return;
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (!system.v[i].allFinite() || !system.r[i].allFinite()) {
      fail(ErrorKind::NumericalFailure,
           "NaN detected at step " + std::to_string(step) + ", particle " +
               std::to_string(i));
    }
  }
}

void detect_settling(const ProbeSeries& series, RunReport& report) {
  const auto& samples = series.samples;
  if (samples.size() < 20) return;
  const std::size_t tail_begin = samples.size() - samples.size() / 10;
  double mean = 0.0;
  for (std::size_t k = tail_begin; k < samples.size(); ++k) {
    double norm = 0.0;
    for (double c : samples[k].u) norm += c * c;
    mean += std::sqrt(norm);
  }
  mean /= static_cast<double>(samples.size() - tail_begin);
  if (mean <= 0.0) return;

  double lo = mean, hi = 0.0;
  for (std::size_t k = tail_begin; k < samples.size(); ++k) {
    double norm = 0.0;
    for (double c : samples[k].u) norm += c * c;
    const double value = std::sqrt(norm);
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  report.settled = (hi - lo) < 0.01 * mean;
  if (!report.settled) return;

  // Earliest time from which |u| stays inside the 1% band around the tail mean.
  report.settle_time = samples.back().t;
  for (std::size_t k = samples.size(); k-- > 0;) {
    double norm = 0.0;
    for (double c : samples[k].u) norm += c * c;
    const double value = std::sqrt(norm);
    if (std::abs(value - mean) > 0.01 * mean) break;
    report.settle_time = samples[k].t;
  }
}

template <int D>
RunReport run_impl(const ResolvedConfig& config, ProbeSeries* series_out) {
  const auto total_start = Clock::now();
  const CaseSpec& spec = config.case_spec;
  const DampingConfig& damping = config.damping;
  const int threads = config.options.threads;

  CaseSetup<D> setup = build_case<D>(spec);
  auto& system = setup.system;

  RunReport report;
  report.case_name = spec.name;
  report.dim = D;
  report.threads = threads;

  const auto neighbor_start = Clock::now();
  const auto grid = build_cell_grid<D>(std::span<const Vec<D>>(system.r0),
                                       2.0 * setup.h);
  const auto blocks = block_decompose<D>(grid);
  const SmoothingKernel kernel(setup.h, D);
  const auto nbh = build_reference_neighborhoods<D>(
      std::span<const Vec<D>>(system.r0), std::span<const double>(system.V0),
      kernel, grid);
  compute_correction_matrices(system, nbh, threads);
  report.neighbor_seconds = seconds_since(neighbor_start);

  system.apply_constraints();
  compute_momentum_rhs(system, nbh, setup.material, setup.external, threads);
  compute_deformation_rate(system, nbh, threads);

  RandomSource rng(damping.seed);
  const bool damping_active = damping.eta > 0.0;
  ViscousBounds viscous{};
  if (damping_active) {
    viscous = viscous_dt_bounds(setup.h,
                                damping.nu_kin_applied(spec.rho0), D);
  }

  ProbeSeries series;
  series.dim = D;
  record_probe(series, system, setup.probe_index, 0.0);

  const std::string& out_dir = config.options.output_dir;
  const bool file_output = !out_dir.empty();
  if (file_output) {
    std::filesystem::create_directories(out_dir);
    if (config.options.snapshots != SnapshotMode::None) {
      write_snapshot(system, setup.material, out_dir + "/snapshot_initial.csv");
    }
  }

  std::vector<Vec<D>> viscous_accel;
  const double interval = config.options.output_interval;
  double next_mark = interval;
  double t = 0.0;
  std::uint64_t snapshot_counter = 0;

  while (t < spec.end_time) {
    StepSizes sizes = stable_dt(system, setup.material, setup.h);
    if (damping_active) {
      sizes.dt_viscous_explicit = viscous.explicit_bound;
      sizes.dt_viscous_implicit = viscous.implicit_bound;
      if (damping.scheme == DampingScheme::Explicit) {
        sizes.dt = std::min(sizes.dt, viscous.explicit_bound);
      } else if (damping.scheme == DampingScheme::ParticleSplit) {
        sizes.dt = std::min(sizes.dt, viscous.implicit_bound);
      }
    }
    const double dt = std::min(sizes.dt, spec.end_time - t);

    const auto elastic_start = Clock::now();
    verlet_step(system, nbh, setup.material, setup.external, dt, threads);
    report.elastic_seconds += seconds_since(elastic_start);

    if (damping_active) {
      const auto damping_start = Clock::now();
      const double eta_tilde = random_choice_eta(damping.eta, damping.alpha, rng);
      if (eta_tilde > 0.0) {
        ++report.damped_steps;
        if (damping.scheme == DampingScheme::Explicit) {
          explicit_damping_accel(system, nbh, eta_tilde, viscous_accel, threads);
          for (std::size_t i = 0; i < system.size(); ++i) {
            system.v[i] += dt * viscous_accel[i];
          }
        } else {
          strang_damping_sweep(system, nbh, grid, blocks, damping.scheme,
                               eta_tilde, dt, threads);
        }
        system.apply_constraints();
      }
      report.damping_seconds += seconds_since(damping_start);
    }

    t += dt;
    ++report.steps;
    check_finite(system, report.steps);

    if (t >= next_mark - 1e-12 * spec.end_time) {
      record_probe(series, system, setup.probe_index, t);
      while (next_mark <= t + 1e-12 * spec.end_time) next_mark += interval;
      if (file_output && config.options.snapshots == SnapshotMode::All) {
        char name[64];
        std::snprintf(name, sizeof(name), "/snapshot_%06llu.csv",
                      static_cast<unsigned long long>(++snapshot_counter));
        write_snapshot(system, setup.material, out_dir + name);
      }
    }
  }

  if (series.samples.back().t < t) {
    record_probe(series, system, setup.probe_index, t);
  }

  const Vec<D> final_u = system.r[setup.probe_index] - system.r0[setup.probe_index];
  for (int d = 0; d < D; ++d) {
    report.final_probe_u[static_cast<std::size_t>(d)] = final_u[d];
  }
  detect_settling(series, report);
  report.total_seconds = seconds_since(total_start);

  if (file_output) {
    write_probe_csv(series, out_dir + "/probe.csv");
    if (config.options.snapshots != SnapshotMode::None) {
      write_snapshot(system, setup.material, out_dir + "/snapshot_final.csv");
    }
    write_report_json(report, out_dir + "/report.json");
  }
  if (series_out) *series_out = std::move(series);
  return report;
}

}  // namespace

RunReport run_case(const ResolvedConfig& config, ProbeSeries* series_out) {
  if (config.case_spec.dim == 2) return run_impl<2>(config, series_out);
  return run_impl<3>(config, series_out);
}

void write_probe_csv(const ProbeSeries& series, const std::string& path) {
  require(!series.samples.empty(), ErrorKind::InvalidArgument,
          "probe series is empty");
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::Io, "cannot write '" + path + "'");
  out << (series.dim == 2 ? "t,ux,uy\n" : "t,ux,uy,uz\n");
  for (const auto& sample : series.samples) {
    std::string line;
    append_value(line, sample.t);
    for (int d = 0; d < series.dim; ++d) {
      line += ',';
      append_value(line, sample.u[static_cast<std::size_t>(d)]);
    }
    line += '\n';
    out << line;
  }
  require(out.good(), ErrorKind::Io, "write failed for '" + path + "'");
}

template <int D>
void write_snapshot(const ParticleSystem<D>& system, const Material& material,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::Io, "cannot write '" + path + "'");
  out << (D == 2 ? "id,x,y,vx,vy,von_mises\n" : "id,x,y,z,vx,vy,vz,von_mises\n");
  for (std::size_t i = 0; i < system.size(); ++i) {
    const double J = system.F[i].determinant();
    const Mat<D> S = second_pk<D>(system.F[i], material);
    const Mat<D> P = first_pk<D>(system.F[i], S);
    std::string line = std::to_string(i);
    for (int d = 0; d < D; ++d) {
      line += ',';
      append_value(line, system.r[i][d]);
    }
    for (int d = 0; d < D; ++d) {
      line += ',';
      append_value(line, system.v[i][d]);
    }
    line += ',';
    append_value(line, von_mises<D>(system.F[i], P, J));
    line += '\n';
    out << line;
  }
  require(out.good(), ErrorKind::Io, "write failed for '" + path + "'");
}

void write_report_json(const RunReport& report, const std::string& path) {
  nlohmann::json j;
  j["case"] = report.case_name;
  j["dim"] = report.dim;
  j["threads"] = report.threads;
  j["steps"] = report.steps;
  j["damped_steps"] = report.damped_steps;
  j["phase_seconds"] = {{"neighbor", report.neighbor_seconds},
                        {"elastic", report.elastic_seconds},
                        {"damping", report.damping_seconds}};
  j["total_seconds"] = report.total_seconds;
  std::vector<double> u(report.final_probe_u.begin(),
                        report.final_probe_u.begin() + report.dim);
  j["final_probe_u"] = u;
  j["settled"] = report.settled;
  j["settle_time"] = report.settle_time;

  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::Io, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

template void write_snapshot<2>(const ParticleSystem<2>&, const Material&,
                                const std::string&);
template void write_snapshot<3>(const ParticleSystem<3>&, const Material&,
                                const std::string&);

} // namespace tlsph
