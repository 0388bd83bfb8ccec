#ifndef TLSPH_INTEGRATOR_HPP
#define TLSPH_INTEGRATOR_HPP

#include "tlsph/forces.hpp"
#include "tlsph/material.hpp"
#include "tlsph/neighbors.hpp"
#include "tlsph/particle_system.hpp"

namespace tlsph {

/// Candidate step sizes. dt_acoustic combines the acoustic and body-force
/// criteria; the viscous entries are filled by the caller when damping is
/// active. dt is the minimum of the applicable bounds and never exceeds
/// dt_acoustic.
struct StepSizes {
  double dt_acoustic = 0.0;
  double dt_viscous_explicit = 0.0;
  double dt_viscous_implicit = 0.0;
  double dt = 0.0;
};

/// B0_i = (-sum_j V0_j r0_ij (x) grad0 W_ij)^-1. Fails loudly, naming the
/// particle, when the moment matrix is singular or has condition > 1e8.
template <int D>
void compute_correction_matrices(ParticleSystem<D>& system,
                                 const ReferenceNeighborhood<D>& nbh,
                                 int threads);

/// dF/dt_i = -(sum_j V0_j v_ij (x) grad0 W_ij) B0_i from current velocities.
template <int D>
void compute_deformation_rate(ParticleSystem<D>& system,
                              const ReferenceNeighborhood<D>& nbh, int threads);

/// rho_i = rho0_i / det(F_i); rejects inverted elements.
template <int D>
void update_density(ParticleSystem<D>& system, int threads);

/// a_i = (2/m_i) sum_j V0_i V0_j Ptilde_ij grad0 W_ij + external, with
/// Ptilde_ij = (P_i B0_i + P_j B0_j)/2.
template <int D>
void compute_momentum_rhs(ParticleSystem<D>& system,
                          const ReferenceNeighborhood<D>& nbh,
                          const Material& material,
                          const ExternalAccel<D>& external, int threads);

/// Position-based Verlet step: half-kick of F and r with the previous rates,
/// velocity update with the momentum RHS evaluated at the half-step
/// configuration, deformation-rate refresh from the new velocities, second
/// half-kick. Constraints are re-applied after every velocity and position
/// write. The acceleration is evaluated at the half step; for a constant
/// body force the scheme is exact.
template <int D>
void verlet_step(ParticleSystem<D>& system, const ReferenceNeighborhood<D>& nbh,
                 const Material& material, const ExternalAccel<D>& external,
                 double dt, int threads);

/// 0.6 * min(h / (c + |v|max), sqrt(h / |a|max)); the body-force bound is
/// dropped when |a|max is zero.
template <int D>
StepSizes stable_dt(const ParticleSystem<D>& system, const Material& material,
                    double h);

template <int D>
double total_kinetic_energy(const ParticleSystem<D>& system);

template <int D>
double total_strain_energy(const ParticleSystem<D>& system, const Material& material);

} // namespace tlsph

#endif // TLSPH_INTEGRATOR_HPP
