#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tlsph/errors.hpp"
#include "tlsph/runner.hpp"

using namespace tlsph;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("tlsph_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("flag overrides resolve a full configuration") {
  const ResolvedConfig config = parse_config(
      std::nullopt, {"case=bending_cantilever", "resolution=6",
                     "damping.scheme=pairwise_split", "damping.alpha=0.2",
                     "seed=42"});
  CHECK(config.case_spec.name == "bending_cantilever");
  CHECK(config.case_spec.resolution == 6);
  CHECK(config.damping.scheme == DampingScheme::PairwiseSplit);
  CHECK(config.damping.alpha == 0.2);
  CHECK(config.damping.seed == 42);
  // Defaults: beta-derived viscosity, case end time, case output interval.
  CHECK(config.damping.eta == doctest::Approx(31.8).epsilon(2e-3));
  CHECK(config.case_spec.end_time == 2.0);
  CHECK(config.options.output_interval == 0.005);
  CHECK(config.options.threads == 1);
}

TEST_CASE("config file parsing with comments; flags win over file values") {
  const auto dir = temp_dir("config");
  const auto path = (dir / "run.conf").string();
  {
    std::ofstream out(path);
    out << "# benchmark configuration\n";
    out << "case = falling_ball\n";
    out << "damping.alpha = 0.5   # will be overridden\n";
    out << "end_time = 1.5\n";
    out << "output.dir =\n";  // empty value disables file output
  }
  const ResolvedConfig config =
      parse_config(path, {"damping.alpha=0.25", "seed=7"});
  CHECK(config.case_spec.name == "falling_ball");
  CHECK(config.damping.alpha == 0.25);
  CHECK(config.case_spec.end_time == 1.5);
  CHECK(config.options.output_dir.empty());
  CHECK(config.damping.seed == 7);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config rejections carry context") {
  CHECK_THROWS_WITH_AS(parse_config(std::nullopt, {"resolution=6"}),
                       "missing required key 'case'", Error);
  CHECK_THROWS_AS(
      parse_config(std::nullopt, {"case=bending_cantilever", "alpha=0.2"}),
      Error);  // unknown key
  CHECK_THROWS_AS(parse_config(std::nullopt, {"case=bending_cantilever",
                                              "damping.alpha=0"}),
                  Error);  // open interval
  CHECK_THROWS_AS(parse_config(std::nullopt, {"case=bending_cantilever",
                                              "damping.alpha=1.2"}),
                  Error);
  CHECK_THROWS_AS(parse_config(std::nullopt, {"case=bending_cantilever",
                                              "damping.eta=1", "damping.beta=1"}),
                  Error);
  CHECK_THROWS_AS(parse_config(std::nullopt, {"case=bending_cantilever",
                                              "end_time=abc"}),
                  Error);
  CHECK_THROWS_AS(parse_config(std::nullopt, {"case=nope"}), Error);
}

TEST_CASE("probe CSV format round-trips doubles") {
  ProbeSeries series;
  series.dim = 3;
  series.samples.push_back({0.0, {0.0, 0.0, 0.0}});
  series.samples.push_back(
      {1.0 / 3.0, {-9.9e-3, 0.1234567890123456789, 2.5e-17}});

  const auto dir = temp_dir("csv");
  const auto path = (dir / "probe.csv").string();
  write_probe_csv(series, path);

  std::ifstream in(path, std::ios::binary);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,ux,uy,uz");

  std::string row;
  std::getline(in, row);  // first sample
  std::getline(in, row);  // second sample
  double t, ux, uy, uz;
  REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf", &t, &ux, &uy, &uz) == 4);
  CHECK(t == 1.0 / 3.0);
  CHECK(ux == -9.9e-3);
  CHECK(uy == 0.1234567890123456789);
  CHECK(uz == 2.5e-17);

  // LF endings, newline-terminated.
  const std::string raw = read_file(path);
  CHECK(raw.find('\r') == std::string::npos);
  CHECK(raw.back() == '\n');
  std::filesystem::remove_all(dir);
}

TEST_CASE("single-sample series gives a two-line file; time column monotone") {
  ProbeSeries series;
  series.dim = 2;
  series.samples.push_back({0.0, {0.0, 0.0, 0.0}});
  const auto dir = temp_dir("csv2");
  const auto path = (dir / "probe.csv").string();
  write_probe_csv(series, path);
  const std::string raw = read_file(path);
  CHECK(std::count(raw.begin(), raw.end(), '\n') == 2);

  ProbeSeries empty;
  empty.dim = 2;
  CHECK_THROWS_AS(write_probe_csv(empty, (dir / "x.csv").string()), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("end_time = 0 produces only the initial probe sample") {
  ResolvedConfig config = parse_config(
      std::nullopt,
      {"case=bending_cantilever", "resolution=6", "end_time=0"});
  config.options.output_dir.clear();
  ProbeSeries series;
  const RunReport report = run_case(config, &series);
  CHECK(report.steps == 0);
  REQUIRE(series.samples.size() == 1);
  CHECK(series.samples[0].t == 0.0);
  for (double c : series.samples[0].u) CHECK(c == 0.0);
}

TEST_CASE("initial snapshot of a stress-free state has zero von Mises column") {
  ResolvedConfig config = parse_config(
      std::nullopt, {"case=bending_cantilever", "resolution=6", "end_time=0"});
  const auto dir = temp_dir("snap");
  config.options.output_dir = dir.string();
  run_case(config);

  std::ifstream in(dir / "snapshot_initial.csv");
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "id,x,y,z,vx,vy,vz,von_mises");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++rows;
    const auto comma = line.rfind(',');
    CHECK(std::stod(line.substr(comma + 1)) == 0.0);
  }
  CHECK(rows == 18 * 6 * 6);
  std::filesystem::remove_all(dir);
}

TEST_CASE("short damped run: deterministic seeds and thread-count independence") {
  auto run_to_csv = [](int threads, std::uint64_t seed, const std::string& tag) {
    ResolvedConfig config = parse_config(
        std::nullopt,
        {"case=bending_cantilever", "resolution=6", "end_time=0.02",
         "damping.scheme=particle_split", "damping.eta=32", "damping.alpha=0.2",
         "seed=" + std::to_string(seed), "threads=" + std::to_string(threads),
         "output.snapshots=none"});
    const auto dir = temp_dir("det_" + tag);
    config.options.output_dir = dir.string();
    run_case(config);
    const std::string content = read_file((dir / "probe.csv").string());
    std::filesystem::remove_all(dir);
    return content;
  };

  const std::string serial = run_to_csv(1, 42, "serial");
  const std::string threaded = run_to_csv(4, 42, "threaded");
  const std::string repeat = run_to_csv(1, 42, "repeat");
  const std::string other_seed = run_to_csv(1, 43, "seed43");

  CHECK(serial == threaded);
  CHECK(serial == repeat);
  CHECK(serial != other_seed);
}

TEST_CASE("damped step fraction tracks alpha and the report is consistent") {
  ResolvedConfig config = parse_config(
      std::nullopt,
      {"case=bending_cantilever", "resolution=6", "end_time=0.15",
       "damping.scheme=particle_split", "damping.eta=32", "damping.alpha=0.2",
       "seed=3"});
  config.options.output_dir.clear();
  const RunReport report = run_case(config);
  REQUIRE(report.steps > 100);
  CHECK(report.damped_steps <= report.steps);

  // Binomial 3-sigma window around alpha.
  const double n = static_cast<double>(report.steps);
  const double sigma = std::sqrt(0.2 * 0.8 / n);
  const double fraction = static_cast<double>(report.damped_steps) / n;
  CHECK(std::abs(fraction - 0.2) <= 3.0 * sigma);

  CHECK(report.elastic_seconds >= 0.0);
  CHECK(report.damping_seconds >= 0.0);
  CHECK(report.neighbor_seconds >= 0.0);
  CHECK(report.elastic_seconds + report.damping_seconds +
            report.neighbor_seconds <=
        report.total_seconds + 1e-9);
}

TEST_CASE("report json is written next to the probe series") {
  ResolvedConfig config = parse_config(
      std::nullopt, {"case=bending_cantilever", "resolution=6",
                     "end_time=0.01", "output.snapshots=none"});
  const auto dir = temp_dir("report");
  config.options.output_dir = dir.string();
  run_case(config);
  const std::string raw = read_file((dir / "report.json").string());
  CHECK(raw.find("\"case\": \"bending_cantilever\"") != std::string::npos);
  CHECK(raw.find("\"steps\"") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "probe.csv"));
  std::filesystem::remove_all(dir);
}
