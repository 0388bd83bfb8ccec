#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "tlsph/tlsph.h"

namespace {

tlsph_sim* create(const std::vector<std::string>& overrides,
                  tlsph_status expected = TLSPH_OK) {
  std::vector<const char*> ptrs;
  for (const auto& s : overrides) ptrs.push_back(s.c_str());
  tlsph_sim* sim = nullptr;
  const tlsph_status status =
      tlsph_sim_create(nullptr, ptrs.data(), ptrs.size(), &sim);
  CHECK(status == expected);
  return sim;
}

} // namespace

TEST_CASE("version and status names") {
  CHECK(tlsph_version() != nullptr);
  CHECK(std::strcmp(tlsph_status_name(TLSPH_OK), "ok") == 0);
  CHECK(std::strcmp(tlsph_status_name(TLSPH_ERR_PARSE), "parse-error") == 0);
}

TEST_CASE("create, run and query a small simulation") {
  const auto dir =
      (std::filesystem::temp_directory_path() / "tlsph_capi_out").string();
  std::filesystem::remove_all(dir);

  tlsph_sim* sim = create({"case=bending_cantilever", "resolution=6",
                           "end_time=0.02", "damping.eta=32",
                           "damping.alpha=0.2", "seed=1", "output.dir=" + dir,
                           "output.snapshots=ends"});
  REQUIRE(sim != nullptr);
  CHECK(tlsph_sim_dim(sim) == 3);
  CHECK(tlsph_sim_thread_count(sim) == 1);
  CHECK(tlsph_sim_step_count(sim) == 0);  // not run yet

  REQUIRE(tlsph_sim_run(sim) == TLSPH_OK);
  CHECK(tlsph_sim_step_count(sim) > 10);
  CHECK(tlsph_sim_damped_step_count(sim) <= tlsph_sim_step_count(sim));
  CHECK(tlsph_sim_phase_seconds(sim, "elastic") >= 0.0);
  CHECK(tlsph_sim_phase_seconds(sim, "total") > 0.0);
  CHECK(tlsph_sim_phase_seconds(sim, "bogus") < 0.0);

  double u[3] = {1e9, 1e9, 1e9};
  REQUIRE(tlsph_sim_probe_displacement(sim, u, 3) == TLSPH_OK);
  CHECK(u[1] < 0.0);  // the tip has started to sag

  // Running twice is rejected.
  CHECK(tlsph_sim_run(sim) == TLSPH_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(tlsph_last_error()) > 0);

  tlsph_sim_destroy(sim);
  CHECK(std::filesystem::exists(std::filesystem::path(dir) / "probe.csv"));
  CHECK(std::filesystem::exists(std::filesystem::path(dir) / "report.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("parse failures surface as status codes with messages") {
  tlsph_sim* sim = create({"case=unknown_case"}, TLSPH_ERR_PARSE);
  CHECK(sim == nullptr);
  CHECK(std::string(tlsph_last_error()).find("unknown case") != std::string::npos);

  sim = create({"case=bending_cantilever", "damping.alpha=0"}, TLSPH_ERR_PARSE);
  CHECK(sim == nullptr);

  sim = create({"case=bending_cantilever", "nonsense_key=1"}, TLSPH_ERR_PARSE);
  CHECK(sim == nullptr);
  CHECK(std::string(tlsph_last_error()).find("nonsense_key") != std::string::npos);
}

TEST_CASE("null-argument handling") {
  CHECK(tlsph_sim_create(nullptr, nullptr, 0, nullptr) ==
        TLSPH_ERR_INVALID_ARGUMENT);
  CHECK(tlsph_sim_run(nullptr) == TLSPH_ERR_INVALID_ARGUMENT);
  CHECK(tlsph_sim_dim(nullptr) == 0);
  CHECK(tlsph_sim_phase_seconds(nullptr, "total") < 0.0);
  tlsph_sim_destroy(nullptr);  // must be a safe no-op
}

TEST_CASE("probe query rejects insufficient capacity and pre-run calls") {
  tlsph_sim* sim = create({"case=bending_cantilever", "resolution=6",
                           "end_time=0.005", "output.dir="});
  REQUIRE(sim != nullptr);
  double u[3];
  CHECK(tlsph_sim_probe_displacement(sim, u, 3) == TLSPH_ERR_INVALID_ARGUMENT);
  REQUIRE(tlsph_sim_run(sim) == TLSPH_OK);
  CHECK(tlsph_sim_probe_displacement(sim, u, 2) == TLSPH_ERR_INVALID_ARGUMENT);
  CHECK(tlsph_sim_probe_displacement(sim, u, 3) == TLSPH_OK);
  tlsph_sim_destroy(sim);
}
