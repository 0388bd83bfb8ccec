#ifndef TLSPH_PARTICLE_SYSTEM_HPP
#define TLSPH_PARTICLE_SYSTEM_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tlsph/math_types.hpp"

namespace tlsph {

/// Columnar per-particle state in the total-Lagrangian frame. Reference
/// quantities (r0, V0, rho0, masses) are fixed after construction; the
/// integrator owns the evolution of r, v, F and derived fields.
template <int D>
struct ParticleSystem {
  std::vector<Vec<D>> r0;    // reference positions
  std::vector<Vec<D>> r;     // current positions
  std::vector<Vec<D>> v;     // velocities
  std::vector<Vec<D>> a;     // accelerations (momentum RHS)
  std::vector<Mat<D>> F;     // deformation gradients
  std::vector<Mat<D>> dFdt;  // deformation rates
  std::vector<Mat<D>> B0;    // kernel correction matrices
  std::vector<double> V0;    // reference volumes
  std::vector<double> m;     // masses, m = rho0 * V0
  std::vector<double> rho0;  // reference densities
  std::vector<double> rho;   // current densities
  std::vector<std::uint8_t> constrained;  // clamp flag

  std::size_t size() const { return r0.size(); }

  void add_particle(const Vec<D>& position, double volume, double density) {
    r0.push_back(position);
    r.push_back(position);
    v.push_back(Vec<D>::Zero());
    a.push_back(Vec<D>::Zero());
    F.push_back(Mat<D>::Identity());
    dFdt.push_back(Mat<D>::Zero());
    B0.push_back(Mat<D>::Identity());
    V0.push_back(volume);
    m.push_back(density * volume);
    rho0.push_back(density);
    rho.push_back(density);
    constrained.push_back(0);
  }

  Vec<D> displacement(std::size_t i) const { return r[i] - r0[i]; }

  /// Zeroes velocities of clamped particles and pins them to the reference
  /// position. Called after every velocity or position write.
  void apply_constraints() {
    for (std::size_t i = 0; i < size(); ++i) {
      if (constrained[i]) {
        v[i].setZero();
        r[i] = r0[i];
      }
    }
  }
};

} // namespace tlsph

#endif // TLSPH_PARTICLE_SYSTEM_HPP
