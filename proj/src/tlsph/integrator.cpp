#include "tlsph/integrator.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tlsph/errors.hpp"
#include "tlsph/parallel.hpp"

namespace tlsph {

template <int D>
void compute_correction_matrices(ParticleSystem<D>& system,
                                 const ReferenceNeighborhood<D>& nbh,
                                 int threads) {
  const std::size_t n = system.size();
  std::vector<int> degenerate(n, 0);
  parallel_for_range(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Mat<D> moment = Mat<D>::Zero();
      for (auto s = nbh.begin(i); s < nbh.end(i); ++s) {
        const int j = nbh.neighbor[s];
        const double w = -system.V0[static_cast<std::size_t>(j)] *
                         nbh.dwdr0[s] * nbh.r0_len[s];
        moment += w * (nbh.e0[s] * nbh.e0[s].transpose());
      }
      Eigen::JacobiSVD<Mat<D>> svd(moment);
      const double smax = svd.singularValues()(0);
      const double smin = svd.singularValues()(D - 1);
      if (!(smin > 0.0) || smax / smin > 1e8) {
        degenerate[i] = 1;
        continue;
      }
      system.B0[i] = moment.inverse();
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    require(!degenerate[i], ErrorKind::DegenerateGeometry,
            "degenerate neighborhood: correction matrix of particle " +
                std::to_string(i) + " is singular or ill-conditioned");
  }
}

template <int D>
void compute_deformation_rate(ParticleSystem<D>& system,
                              const ReferenceNeighborhood<D>& nbh, int threads) {
  parallel_for_range(system.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Mat<D> rate = Mat<D>::Zero();
      for (auto s = nbh.begin(i); s < nbh.end(i); ++s) {
        const auto j = static_cast<std::size_t>(nbh.neighbor[s]);
        const Vec<D> v_ij = system.v[i] - system.v[j];
        rate -= system.V0[j] * nbh.dwdr0[s] * (v_ij * nbh.e0[s].transpose());
      }
      system.dFdt[i] = rate * system.B0[i];
    }
  });
}

template <int D>
void update_density(ParticleSystem<D>& system, int threads) {
  const std::size_t n = system.size();
  std::vector<int> inverted(n, 0);
  parallel_for_range(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double J = system.F[i].determinant();
      if (!(J > 0.0)) {
        inverted[i] = 1;
        continue;
      }
      system.rho[i] = system.rho0[i] / J;
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    require(!inverted[i], ErrorKind::InvertedElement,
            "inverted element: det(F) <= 0 for particle " + std::to_string(i));
  }
}

template <int D>
void compute_momentum_rhs(ParticleSystem<D>& system,
                          const ReferenceNeighborhood<D>& nbh,
                          const Material& material,
                          const ExternalAccel<D>& external, int threads) {
  const std::size_t n = system.size();
  // P_i B0_i per particle; stress evaluation may throw on inverted elements.
  std::vector<Mat<D>> stress_term(n);
  std::vector<int> inverted(n, 0);
  parallel_for_range(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      if (!(system.F[i].determinant() > 0.0)) {
        inverted[i] = 1;
        stress_term[i].setZero();
        continue;
      }
      const Mat<D> S = second_pk<D>(system.F[i], material);
      stress_term[i] = first_pk<D>(system.F[i], S) * system.B0[i];
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    require(!inverted[i], ErrorKind::InvertedElement,
            "inverted element: det(F) <= 0 for particle " + std::to_string(i));
  }

  parallel_for_range(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Vec<D> acc = Vec<D>::Zero();
      for (auto s = nbh.begin(i); s < nbh.end(i); ++s) {
        const auto j = static_cast<std::size_t>(nbh.neighbor[s]);
        acc += system.V0[i] * system.V0[j] * nbh.dwdr0[s] *
               ((stress_term[i] + stress_term[j]) * nbh.e0[s]);
      }
      system.a[i] = acc / system.m[i] + external.eval(i, system.r[i], system.m[i]);
    }
  });
}

template <int D>
void verlet_step(ParticleSystem<D>& system, const ReferenceNeighborhood<D>& nbh,
                 const Material& material, const ExternalAccel<D>& external,
                 double dt, int threads) {
  const std::size_t n = system.size();
  const double half = 0.5 * dt;

  // Midpoint stage: density from J^n, then half-kicks of F and r.
  update_density(system, threads);
  parallel_for_range(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      system.F[i] += half * system.dFdt[i];
      system.r[i] += half * system.v[i];
    }
  });
  system.apply_constraints();

  // Momentum RHS at the half-step configuration, full velocity kick.
  compute_momentum_rhs(system, nbh, material, external, threads);
  parallel_for_range(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) system.v[i] += dt * system.a[i];
  });
  system.apply_constraints();

  // Deformation rate from the new velocities, then the second half-kick.
  compute_deformation_rate(system, nbh, threads);
  update_density(system, threads);
  parallel_for_range(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      system.F[i] += half * system.dFdt[i];
      system.r[i] += half * system.v[i];
    }
  });
  system.apply_constraints();
}

template <int D>
StepSizes stable_dt(const ParticleSystem<D>& system, const Material& material,
                    double h) {
  double vmax = 0.0;
  double amax = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    vmax = std::max(vmax, system.v[i].norm());
    amax = std::max(amax, system.a[i].norm());
  }
  StepSizes sizes;
  double bound = h / (material.c + vmax);
  if (amax > 0.0) bound = std::min(bound, std::sqrt(h / amax));
  sizes.dt_acoustic = 0.6 * bound;
  sizes.dt = sizes.dt_acoustic;
  return sizes;
}

template <int D>
double total_kinetic_energy(const ParticleSystem<D>& system) {
  double energy = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    energy += 0.5 * system.m[i] * system.v[i].squaredNorm();
  }
  return energy;
}

template <int D>
double total_strain_energy(const ParticleSystem<D>& system,
                           const Material& material) {
  double energy = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    energy += system.V0[i] * strain_energy_density<D>(system.F[i], material);
  }
  return energy;
}

#define TLSPH_INSTANTIATE(D)                                                   \
  template void compute_correction_matrices<D>(ParticleSystem<D>&,            \
                                               const ReferenceNeighborhood<D>&, int); \
  template void compute_deformation_rate<D>(ParticleSystem<D>&,               \
                                            const ReferenceNeighborhood<D>&, int); \
  template void update_density<D>(ParticleSystem<D>&, int);                   \
  template void compute_momentum_rhs<D>(ParticleSystem<D>&,                   \
                                        const ReferenceNeighborhood<D>&,      \
                                        const Material&, const ExternalAccel<D>&, int); \
  template void verlet_step<D>(ParticleSystem<D>&, const ReferenceNeighborhood<D>&, \
                               const Material&, const ExternalAccel<D>&, double, int); \
  template StepSizes stable_dt<D>(const ParticleSystem<D>&, const Material&, double); \
  template double total_kinetic_energy<D>(const ParticleSystem<D>&);          \
  template double total_strain_energy<D>(const ParticleSystem<D>&, const Material&);

TLSPH_INSTANTIATE(2)
TLSPH_INSTANTIATE(3)
#undef TLSPH_INSTANTIATE

} // namespace tlsph
