#include "tlsph/tlsph.h"

#include <cstring>
#include <string>
#include <vector>

#include "tlsph/errors.hpp"
#include "tlsph/runner.hpp"

namespace {

thread_local std::string g_last_error;

tlsph_status status_of(tlsph::ErrorKind kind) {
  switch (kind) {
    case tlsph::ErrorKind::InvalidArgument: return TLSPH_ERR_INVALID_ARGUMENT;
    case tlsph::ErrorKind::Parse: return TLSPH_ERR_PARSE;
    case tlsph::ErrorKind::DegenerateGeometry: return TLSPH_ERR_DEGENERATE_GEOMETRY;
    case tlsph::ErrorKind::InvertedElement: return TLSPH_ERR_INVERTED_ELEMENT;
    case tlsph::ErrorKind::NumericalFailure: return TLSPH_ERR_NUMERICAL_FAILURE;
    case tlsph::ErrorKind::Io: return TLSPH_ERR_IO;
  }
  return TLSPH_ERR_INTERNAL;
}

template <typename Fn>
tlsph_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TLSPH_OK;
  } catch (const tlsph::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TLSPH_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TLSPH_ERR_INTERNAL;
  }
}

} // namespace

struct tlsph_sim {
  tlsph::ResolvedConfig config;
  tlsph::RunReport report;
  bool has_run = false;
};

extern "C" {

const char* tlsph_version(void) { return "1.0.0"; }

const char* tlsph_status_name(tlsph_status status) {
  switch (status) {
    case TLSPH_OK: return "ok";
    case TLSPH_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case TLSPH_ERR_PARSE: return "parse-error";
    case TLSPH_ERR_DEGENERATE_GEOMETRY: return "degenerate-geometry";
    case TLSPH_ERR_INVERTED_ELEMENT: return "inverted-element";
    case TLSPH_ERR_NUMERICAL_FAILURE: return "numerical-failure";
    case TLSPH_ERR_IO: return "io-error";
    case TLSPH_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* tlsph_last_error(void) { return g_last_error.c_str(); }

tlsph_status tlsph_sim_create(const char* config_path,
                              const char* const* overrides, size_t n_overrides,
                              tlsph_sim** out_sim) {
  if (out_sim == nullptr) {
    g_last_error = "out_sim must not be null";
    return TLSPH_ERR_INVALID_ARGUMENT;
  }
  *out_sim = nullptr;
  return guarded([&] {
    std::optional<std::string> path;
    if (config_path != nullptr) path = config_path;
    std::vector<std::string> override_list;
    override_list.reserve(n_overrides);
    for (size_t i = 0; i < n_overrides; ++i) {
      tlsph::require(overrides != nullptr && overrides[i] != nullptr,
                     tlsph::ErrorKind::InvalidArgument,
                     "override strings must not be null");
      override_list.emplace_back(overrides[i]);
    }
    auto sim = new tlsph_sim;
    sim->config = tlsph::parse_config(path, override_list);
    *out_sim = sim;
  });
}

void tlsph_sim_destroy(tlsph_sim* sim) { delete sim; }

tlsph_status tlsph_sim_run(tlsph_sim* sim) {
  if (sim == nullptr) {
    g_last_error = "sim must not be null";
    return TLSPH_ERR_INVALID_ARGUMENT;
  }
  if (sim->has_run) {
    g_last_error = "simulation has already run";
    return TLSPH_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    sim->report = tlsph::run_case(sim->config);
    sim->has_run = true;
  });
}

int tlsph_sim_dim(const tlsph_sim* sim) {
  return sim == nullptr ? 0 : sim->config.case_spec.dim;
}

int tlsph_sim_thread_count(const tlsph_sim* sim) {
  return sim == nullptr ? 0 : sim->config.options.threads;
}

uint64_t tlsph_sim_step_count(const tlsph_sim* sim) {
  return (sim != nullptr && sim->has_run) ? sim->report.steps : 0;
}

uint64_t tlsph_sim_damped_step_count(const tlsph_sim* sim) {
  return (sim != nullptr && sim->has_run) ? sim->report.damped_steps : 0;
}

double tlsph_sim_phase_seconds(const tlsph_sim* sim, const char* phase) {
  if (sim == nullptr || !sim->has_run || phase == nullptr) return -1.0;
  if (std::strcmp(phase, "neighbor") == 0) return sim->report.neighbor_seconds;
  if (std::strcmp(phase, "elastic") == 0) return sim->report.elastic_seconds;
  if (std::strcmp(phase, "damping") == 0) return sim->report.damping_seconds;
  if (std::strcmp(phase, "total") == 0) return sim->report.total_seconds;
  return -1.0;
}

tlsph_status tlsph_sim_probe_displacement(const tlsph_sim* sim, double* out,
                                          size_t capacity) {
  return guarded([&] {
    tlsph::require(sim != nullptr && out != nullptr,
                   tlsph::ErrorKind::InvalidArgument,
                   "sim and out must not be null");
    tlsph::require(sim->has_run, tlsph::ErrorKind::InvalidArgument,
                   "simulation has not run yet");
    const auto dim = static_cast<size_t>(sim->report.dim);
    tlsph::require(capacity >= dim, tlsph::ErrorKind::InvalidArgument,
                   "output capacity below case dimension");
    for (size_t d = 0; d < dim; ++d) out[d] = sim->report.final_probe_u[d];
  });
}

int tlsph_sim_settled(const tlsph_sim* sim) {
  return (sim != nullptr && sim->has_run && sim->report.settled) ? 1 : 0;
}

double tlsph_sim_settle_time(const tlsph_sim* sim) {
  return (sim != nullptr && sim->has_run) ? sim->report.settle_time : -1.0;
}

} // extern "C"
