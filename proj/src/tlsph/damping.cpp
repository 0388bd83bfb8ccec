#include "tlsph/damping.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "tlsph/errors.hpp"
#include "tlsph/parallel.hpp"

namespace tlsph {

double artificial_viscosity(double beta, double rho0, double E, double L) {
  require(beta >= 0.0 && rho0 > 0.0 && E > 0.0 && L > 0.0,
          ErrorKind::InvalidArgument, "artificial viscosity inputs must be positive");
  return 0.25 * beta * std::sqrt(rho0 * E) * L;
}

ViscousBounds viscous_dt_bounds(double h, double nu_kin, int dim) {
  require(h > 0.0 && nu_kin > 0.0, ErrorKind::InvalidArgument,
          "viscous bounds need positive h and viscosity");
  require(dim >= 1 && dim <= 3, ErrorKind::InvalidArgument,
          "dimension must be 1, 2 or 3");
  ViscousBounds bounds;
  bounds.explicit_bound = 0.5 * h * h / (nu_kin * dim);
  bounds.implicit_bound = 50.0 * h * h / (nu_kin * dim);
  return bounds;
}

double random_choice_eta(double eta, double alpha, RandomSource& rng) {
  require(alpha > 0.0 && alpha <= 1.0, ErrorKind::InvalidArgument,
          "random-choice probability must lie in (0, 1], got " + std::to_string(alpha));
  const double phi = rng.uniform();
  return phi < alpha ? eta / alpha : 0.0;
}

template <int D>
void explicit_damping_accel(const ParticleSystem<D>& system,
                            const ReferenceNeighborhood<D>& nbh, double eta,
                            std::vector<Vec<D>>& out, int threads) {
  out.resize(system.size());
  parallel_for_range(system.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Vec<D> acc = Vec<D>::Zero();
      for (auto s = nbh.begin(i); s < nbh.end(i); ++s) {
        const auto j = static_cast<std::size_t>(nbh.neighbor[s]);
        acc += nbh.pair_factor[s] * (system.v[i] - system.v[j]);
      }
      out[i] = (eta / system.m[i]) * acc;
    }
  });
}

template <int D>
void particle_split_update(std::size_t i, ParticleSystem<D>& system,
                           const ReferenceNeighborhood<D>& nbh, double eta,
                           double dt_half) {
  const auto lo = nbh.begin(i);
  const auto hi = nbh.end(i);
  if (lo == hi) return;

  // E_i = -sum_j B_j v_ij, with B_j = eta G_ij dt_half <= 0.
  Vec<D> residual = Vec<D>::Zero();
  double sum_b = 0.0;
  double sum_b2 = 0.0;
  for (auto s = lo; s < hi; ++s) {
    const auto j = static_cast<std::size_t>(nbh.neighbor[s]);
    const double b = eta * nbh.pair_factor[s] * dt_half;
    residual -= b * (system.v[i] - system.v[j]);
    sum_b += b;
    sum_b2 += b * b;
  }

  const double diag = sum_b - system.m[i];
  const Vec<D> rate = residual / (diag * diag + sum_b2);

  // Step 1: gradient-descent increments; neighbor values are predictions.
  const Vec<D> v_i_new = system.v[i] + diag * rate;

  // Step 2: momentum-conserving neighbor correction against the predictions.
  for (auto s = lo; s < hi; ++s) {
    const auto j = static_cast<std::size_t>(nbh.neighbor[s]);
    const double b = eta * nbh.pair_factor[s] * dt_half;
    const Vec<D> v_j_pred = system.v[j] - b * rate;
    if (!system.constrained[j]) {
      system.v[j] -= (b / system.m[j]) * (v_i_new - v_j_pred);
    }
  }
  system.v[i] = v_i_new;
}

template <int D>
void pairwise_split_update(std::size_t i, std::int64_t slot,
                           ParticleSystem<D>& system,
                           const ReferenceNeighborhood<D>& nbh, double eta,
                           double dt_half) {
  const auto j = static_cast<std::size_t>(nbh.neighbor[slot]);
  const double b = eta * nbh.pair_factor[slot] * dt_half;
  const double m_i = system.m[i];
  const double m_j = system.m[j];
  const double denom = m_i * m_j - (m_i + m_j) * b;
  assert(denom > 0.0);  // b <= 0 guarantees this
  const Vec<D> v_ij = system.v[i] - system.v[j];
  const Vec<D> scaled = (b / denom) * v_ij;
  system.v[i] += m_j * scaled;
  if (!system.constrained[j]) system.v[j] -= m_i * scaled;
}

namespace {

// Hands every particle of a cell to the local operator, honoring the sweep
// direction for the intra-cell order.
template <int D, typename LocalOp>
void run_cell(const CellGrid<D>& grid, int cell, SweepDirection direction,
              const LocalOp& op) {
  const auto& particles = grid.cells[static_cast<std::size_t>(cell)];
  if (direction == SweepDirection::Forward) {
    for (std::size_t k = 0; k < particles.size(); ++k) op(particles[k]);
  } else {
    for (std::size_t k = particles.size(); k-- > 0;) op(particles[k]);
  }
}

} // namespace

template <int D>
void strang_damping_sweep(ParticleSystem<D>& system,
                          const ReferenceNeighborhood<D>& nbh,
                          const CellGrid<D>& grid,
                          const BlockDecomposition<D>& blocks,
                          DampingScheme scheme, double eta_tilde, double dt,
                          int threads) {
  if (eta_tilde == 0.0) return;
  require(scheme != DampingScheme::Explicit, ErrorKind::InvalidArgument,
          "the explicit scheme is integrated directly, not swept");

  const double dt_half = 0.5 * dt;
  std::function<void(int, SweepDirection)> cell_task;

#ifndef NDEBUG
  auto check_stencil = [&](std::size_t i) {
    for (auto s = nbh.begin(i); s < nbh.end(i); ++s) {
      assert(stencil_adjacent(grid, grid.cell_of[i], grid.cell_of[nbh.neighbor[s]]));
    }
  };
#endif

  if (scheme == DampingScheme::ParticleSplit) {
    cell_task = [&](int cell, SweepDirection direction) {
      run_cell<D>(grid, cell, direction, [&](int p) {
        const auto i = static_cast<std::size_t>(p);
        if (system.constrained[i]) return;
#ifndef NDEBUG
        check_stencil(i);
#endif
        particle_split_update(i, system, nbh, eta_tilde, dt_half);
      });
    };
  } else {
    // Each particle's own operator is a palindrome over its pairs, so it is
    // applied identically on both passes; the pair step is half of dt_half.
    const double dt_pair = 0.5 * dt_half;
    cell_task = [&](int cell, SweepDirection direction) {
      run_cell<D>(grid, cell, direction, [&](int p) {
        const auto i = static_cast<std::size_t>(p);
        if (system.constrained[i]) return;
#ifndef NDEBUG
        check_stencil(i);
#endif
        const auto lo = nbh.begin(i);
        const auto hi = nbh.end(i);
        for (auto s = lo; s < hi; ++s) {
          pairwise_split_update(i, s, system, nbh, eta_tilde, dt_pair);
        }
        for (auto s = hi; s-- > lo;) {
          pairwise_split_update(i, s, system, nbh, eta_tilde, dt_pair);
        }
      });
    };
  }

  block_sweep<D>(blocks, cell_task, SweepSchedule::ForwardThenReverse, threads);
}

#define TLSPH_INSTANTIATE(D)                                                    \
  template void explicit_damping_accel<D>(const ParticleSystem<D>&,            \
                                          const ReferenceNeighborhood<D>&,     \
                                          double, std::vector<Vec<D>>&, int);  \
  template void particle_split_update<D>(std::size_t, ParticleSystem<D>&,      \
                                         const ReferenceNeighborhood<D>&,      \
                                         double, double);                      \
  template void pairwise_split_update<D>(std::size_t, std::int64_t,            \
                                         ParticleSystem<D>&,                   \
                                         const ReferenceNeighborhood<D>&,      \
                                         double, double);                      \
  template void strang_damping_sweep<D>(ParticleSystem<D>&,                    \
                                        const ReferenceNeighborhood<D>&,       \
                                        const CellGrid<D>&,                    \
                                        const BlockDecomposition<D>&,          \
                                        DampingScheme, double, double, int);

TLSPH_INSTANTIATE(2)
TLSPH_INSTANTIATE(3)
#undef TLSPH_INSTANTIATE

} // namespace tlsph
