#ifndef TLSPH_DAMPING_HPP
#define TLSPH_DAMPING_HPP

#include <cstdint>
#include <random>

#include "tlsph/neighbors.hpp"
#include "tlsph/particle_system.hpp"

namespace tlsph {

enum class DampingScheme { Explicit, ParticleSplit, PairwiseSplit };

/// Dynamic-relaxation configuration. eta = 0 disables damping entirely.
/// alpha is the per-step probability that the viscous operator runs; when it
/// does, the viscosity is scaled to eta/alpha so the expectation stays eta.
struct DampingConfig {
  DampingScheme scheme = DampingScheme::ParticleSplit;
  double eta = 0.0;
  double alpha = 0.2;
  std::uint64_t seed = 0;

  double nu_kin(double rho0) const { return eta / rho0; }
  /// Kinematic viscosity actually applied on damping-active steps.
  double nu_kin_applied(double rho0) const { return eta / (alpha * rho0); }
};

/// eta = (beta/4) sqrt(rho0 E) L.
double artificial_viscosity(double beta, double rho0, double E, double L);

struct ViscousBounds {
  double explicit_bound = 0.0;  // 0.5 h^2 / (nu D)
  double implicit_bound = 0.0;  // 50  h^2 / (nu D)
};

ViscousBounds viscous_dt_bounds(double h, double nu_kin, int dim);

/// Deterministic seedable stream of uniforms in [0, 1). The mapping from raw
/// 64-bit draws to doubles is spelled out so runs are bit-reproducible across
/// standard libraries.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : gen_(seed) {}
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
};

/// Draws phi and returns eta/alpha with probability alpha, zero otherwise.
double random_choice_eta(double eta, double alpha, RandomSource& rng);

/// Explicit discretization of the viscous term:
/// a_i = (eta/m_i) sum_j G_ij v_ij, with G_ij cached in the neighborhood.
template <int D>
void explicit_damping_accel(const ParticleSystem<D>& system,
                            const ReferenceNeighborhood<D>& nbh, double eta,
                            std::vector<Vec<D>>& out, int threads);

/// Local implicit update of particle i and its neighbors by gradient descent
/// on the implicit viscous equation, followed by the momentum-conserving
/// neighbor correction. B_j = eta G_ij dt_half. Constrained particles act as
/// zero-velocity neighbors; writes to them are discarded.
template <int D>
void particle_split_update(std::size_t i, ParticleSystem<D>& system,
                           const ReferenceNeighborhood<D>& nbh, double eta,
                           double dt_half);

/// Implicit 2x2 pair update for (i, j) at CSR slot `slot` of particle i:
/// dv_i =  m_j B v_ij / (m_i m_j - (m_i + m_j) B), dv_j = -m_i B v_ij / (...),
/// which conserves pair momentum exactly and shrinks |v_ij|.
template <int D>
void pairwise_split_update(std::size_t i, std::int64_t slot,
                           ParticleSystem<D>& system,
                           const ReferenceNeighborhood<D>& nbh, double eta,
                           double dt_half);

/// One full damping operator application over the step dt: forward pass over
/// all particles (block order) with the local operator at dt/2, then the
/// mirrored reverse pass. For the pairwise scheme each particle's pair
/// sub-operators run ascending then descending with dt/4 each, realizing the
/// nested Strang composition. A zero eta_tilde returns immediately.
template <int D>
void strang_damping_sweep(ParticleSystem<D>& system,
                          const ReferenceNeighborhood<D>& nbh,
                          const CellGrid<D>& grid,
                          const BlockDecomposition<D>& blocks,
                          DampingScheme scheme, double eta_tilde, double dt,
                          int threads);

} // namespace tlsph

#endif // TLSPH_DAMPING_HPP
