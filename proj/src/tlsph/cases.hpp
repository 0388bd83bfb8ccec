#ifndef TLSPH_CASES_HPP
#define TLSPH_CASES_HPP

#include <array>
#include <string>
#include <vector>

#include "tlsph/damping.hpp"
#include "tlsph/forces.hpp"
#include "tlsph/material.hpp"
#include "tlsph/particle_system.hpp"

namespace tlsph {

enum class CaseKind { BendingCantilever, TwistingCantilever, FallingBall };

/// Fully parameterized benchmark scenario. `resolution` counts particles
/// across the characteristic length (cantilever thickness, ball diameter);
/// dp follows from it. The kernel smoothing length is always 1.3 dp.
struct CaseSpec {
  CaseKind kind = CaseKind::BendingCantilever;
  std::string name;
  int dim = 3;
  int resolution = 0;
  double dp = 0.0;

  // geometry [m]
  double length = 0.0;     // cantilever length along x
  double thickness = 0.0;  // cantilever square cross-section edge
  double diameter = 0.0;   // ball
  double drop_clearance = 0.0;

  // material
  double young_modulus = 0.0;
  double poisson_ratio = 0.0;
  double rho0 = 0.0;
  ConstitutiveModel model = ConstitutiveModel::NeoHookean;

  // loading
  double gravity = 0.0;           // magnitude, applied along -y
  bool rotational_force = false;  // sinusoidal body force of the twisting case

  double characteristic_length = 0.0;  // L in the eta(beta) formula
  double default_beta = 0.0;
  double contact_stiffness = 0.0;  // penalty plane, falling ball only

  double end_time = 0.0;
  double default_output_interval = 0.0;
  std::array<double, 3> probe_target{};
};

/// Ready-to-run state for one case at a fixed dimension.
template <int D>
struct CaseSetup {
  ParticleSystem<D> system;
  Material material;
  ExternalAccel<D> external;
  double h = 0.0;                // smoothing length 1.3 dp
  std::size_t probe_index = 0;  // particle closest to the probe target
};

/// Appends a regular cell-centered lattice filling [lo, hi] with spacing dp,
/// per-particle volume dp^D and mass rho0 dp^D. Axis counts are
/// round(extent/dp), at least 1.
template <int D>
void generate_box_lattice(ParticleSystem<D>& system, const Vec<D>& lo,
                          const Vec<D>& hi, double dp, double rho0);

/// Appends a disk cut from a node-centered lattice (a particle always sits at
/// the center); keeps lattice points with |r0 - center| <= diameter/2.
void generate_disk(ParticleSystem<2>& system, const Vec2& center,
                   double diameter, double dp, double rho0);

/// Sinusoidal rotational body force of the twisting case, evaluated on the
/// reference position: (0, y*gamma, z*gamma) with
/// gamma = (20 g / h_len) sin(pi x / (2 L)).
Vec3 rotational_body_force(const Vec3& r0, double L, double g, double h_len);

/// The three built-in scenarios with the published parameters.
std::vector<CaseSpec> builtin_cases();

/// Looks up a built-in case by name and applies the resolution override
/// (0 keeps the default).
CaseSpec make_case(const std::string& name, int resolution);

/// Instantiates particles, constraints, probe and external forces.
template <int D>
CaseSetup<D> build_case(const CaseSpec& spec);

} // namespace tlsph

#endif // TLSPH_CASES_HPP
