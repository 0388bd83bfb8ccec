#include "tlsph/cases.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "tlsph/errors.hpp"

namespace tlsph {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSmoothingRatio = 1.3;  // h = 1.3 dp
constexpr double kGravity = 9.8;
// Clamp extension into the wall, in layers: covers the kernel support so
// particles near the root have a full neighborhood of fixed material.
constexpr int kClampLayers = 3;
}  // namespace

template <int D>
void generate_box_lattice(ParticleSystem<D>& system, const Vec<D>& lo,
                          const Vec<D>& hi, double dp, double rho0) {
  require(dp > 0.0, ErrorKind::InvalidArgument, "lattice spacing must be positive");
  std::array<int, D> counts{};
  for (int d = 0; d < D; ++d) {
    const double extent = hi[d] - lo[d];
    require(extent >= dp * (1.0 - 1e-12), ErrorKind::InvalidArgument,
            "degenerate lattice dimension " + std::to_string(d));
    counts[d] = std::max(1, static_cast<int>(std::lround(extent / dp)));
  }

  const double volume = std::pow(dp, D);
  std::array<int, D> idx{};
  while (true) {
    Vec<D> p;
    for (int d = 0; d < D; ++d) p[d] = lo[d] + (idx[d] + 0.5) * dp;
    system.add_particle(p, volume, rho0);
    int d = 0;
    for (; d < D; ++d) {
      if (++idx[d] < counts[d]) break;
      idx[d] = 0;
    }
    if (d == D) break;
  }
}

void generate_disk(ParticleSystem<2>& system, const Vec2& center,
                   double diameter, double dp, double rho0) {
  require(dp > 0.0, ErrorKind::InvalidArgument, "lattice spacing must be positive");
  require(diameter >= 2.0 * dp, ErrorKind::InvalidArgument,
          "disk diameter must be at least 2 dp");
  const double radius = 0.5 * diameter;
  const int n = static_cast<int>(std::floor(radius / dp));
  const double volume = dp * dp;
  for (int j = -n; j <= n; ++j) {
    for (int i = -n; i <= n; ++i) {
      const Vec2 offset(i * dp, j * dp);
      if (offset.norm() <= radius) {
        system.add_particle(center + offset, volume, rho0);
      }
    }
  }
}

Vec3 rotational_body_force(const Vec3& r0, double L, double g, double h_len) {
  assert(r0[0] >= 0.0 && r0[0] <= L * (1.0 + 1e-12));
  const double gamma = (20.0 * g / h_len) * std::sin(kPi * r0[0] / (2.0 * L));
  return Vec3(0.0, r0[1] * gamma, r0[2] * gamma);
}

std::vector<CaseSpec> builtin_cases() {
  std::vector<CaseSpec> cases;

  {
    CaseSpec spec;
    spec.kind = CaseKind::BendingCantilever;
    spec.name = "bending_cantilever";
    spec.dim = 3;
    spec.resolution = 6;
    spec.length = 0.04;
    spec.thickness = 0.016;
    spec.young_modulus = 5.0e4;
    spec.poisson_ratio = 0.45;
    spec.rho0 = 1265.0;
    spec.model = ConstitutiveModel::NeoHookean;
    spec.gravity = kGravity;
    spec.characteristic_length = spec.length;
    spec.default_beta = 0.4;  // beta = d / l
    spec.end_time = 2.0;
    spec.default_output_interval = 0.005;
    spec.probe_target = {spec.length, 0.0, 0.0};
    cases.push_back(spec);
  }

  {
    CaseSpec spec = cases.back();
    spec.kind = CaseKind::TwistingCantilever;
    spec.name = "twisting_cantilever";
    spec.resolution = 12;
    spec.gravity = 0.0;  // the rotational body force replaces gravity
    spec.rotational_force = true;
    // Off-axis probe: the free-end corner sees the largest response.
    spec.probe_target = {spec.length, 0.5 * spec.thickness, 0.5 * spec.thickness};
    cases.push_back(spec);
  }

  {
    CaseSpec spec;
    spec.kind = CaseKind::FallingBall;
    spec.name = "falling_ball";
    spec.dim = 2;
    spec.resolution = 50;  // dp = 0.02 d
    spec.diameter = 1.0;
    spec.drop_clearance = 0.25;
    spec.young_modulus = 5.0e5;
    spec.poisson_ratio = 0.45;
    spec.rho0 = 1000.0;
    spec.model = ConstitutiveModel::LinearKirchhoff;
    spec.gravity = kGravity;
    spec.characteristic_length = spec.diameter;
    spec.default_beta = 1.0;
    spec.end_time = 6.0;
    spec.default_output_interval = 0.005;
    spec.probe_target = {0.0, spec.drop_clearance + 0.5 * spec.diameter, 0.0};
    cases.push_back(spec);
  }

  return cases;
}

CaseSpec make_case(const std::string& name, int resolution) {
  for (CaseSpec spec : builtin_cases()) {
    if (spec.name != name) continue;
    if (resolution > 0) spec.resolution = resolution;
    const double reference =
        spec.kind == CaseKind::FallingBall ? spec.diameter : spec.thickness;
    spec.dp = reference / spec.resolution;
    return spec;
  }
  fail(ErrorKind::Parse, "unknown case '" + name + "'");
}

namespace {

template <int D>
std::size_t nearest_particle(const ParticleSystem<D>& system, const Vec<D>& target) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < system.size(); ++i) {
    const double dist = (system.r0[i] - target).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

CaseSetup<3> build_cantilever(const CaseSpec& spec) {
  CaseSetup<3> setup;
  setup.material = material_from_young_poisson(spec.young_modulus,
                                               spec.poisson_ratio, spec.rho0,
                                               spec.model);
  const double dp = spec.dp;
  setup.h = kSmoothingRatio * dp;

  const double half = 0.5 * spec.thickness;
  const Vec3 lo(-kClampLayers * dp, -half, -half);
  const Vec3 hi(spec.length, half, half);
  generate_box_lattice<3>(setup.system, lo, hi, dp, spec.rho0);

  auto& system = setup.system;
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (system.r0[i][0] < 0.0) system.constrained[i] = 1;
  }

  setup.external.body.assign(system.size(), Vec3(0.0, -spec.gravity, 0.0));
  if (spec.rotational_force) {
    for (std::size_t i = 0; i < system.size(); ++i) {
      setup.external.body[i] =
          system.constrained[i]
              ? Vec3::Zero()
              : rotational_body_force(system.r0[i], spec.length, kGravity,
                                      spec.thickness);
    }
  }

  Vec3 target(spec.probe_target[0], spec.probe_target[1], spec.probe_target[2]);
  setup.probe_index = nearest_particle(system, target);
  return setup;
}

CaseSetup<2> build_ball(const CaseSpec& spec) {
  CaseSetup<2> setup;
  setup.material = material_from_young_poisson(spec.young_modulus,
                                               spec.poisson_ratio, spec.rho0,
                                               spec.model);
  const double dp = spec.dp;
  setup.h = kSmoothingRatio * dp;

  const Vec2 center(0.0, spec.drop_clearance + 0.5 * spec.diameter);
  generate_disk(setup.system, center, spec.diameter, dp, spec.rho0);

  setup.external.body.assign(setup.system.size(), Vec2(0.0, -spec.gravity));
  ContactPlane<2> floor;
  floor.point = Vec2::Zero();
  floor.normal = Vec2(0.0, 1.0);
  // Penalty stiffness K dp^(D-2) keeps penetration below one spacing; the
  // exponent vanishes in 2D.
  floor.stiffness = spec.contact_stiffness > 0.0 ? spec.contact_stiffness
                                                 : setup.material.K;
  setup.external.contact = floor;

  setup.probe_index = nearest_particle(setup.system, center);
  return setup;
}

} // namespace

template <int D>
CaseSetup<D> build_case(const CaseSpec& spec) {
  require(spec.dim == D, ErrorKind::InvalidArgument,
          "case '" + spec.name + "' is " + std::to_string(spec.dim) +
              "-dimensional");
  if constexpr (D == 3) {
    return build_cantilever(spec);
  } else {
    return build_ball(spec);
  }
}

template void generate_box_lattice<2>(ParticleSystem<2>&, const Vec2&,
                                      const Vec2&, double, double);
template void generate_box_lattice<3>(ParticleSystem<3>&, const Vec3&,
                                      const Vec3&, double, double);
template CaseSetup<2> build_case<2>(const CaseSpec&);
template CaseSetup<3> build_case<3>(const CaseSpec&);

} // namespace tlsph
