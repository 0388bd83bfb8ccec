#ifndef TLSPH_MATERIAL_HPP
#define TLSPH_MATERIAL_HPP

#include "tlsph/math_types.hpp"

namespace tlsph {

enum class ConstitutiveModel { LinearKirchhoff, NeoHookean };

/// Isotropic elastic constants. K = lambda + 2 mu / 3, G = mu, and the sound
/// speed c = sqrt(K / rho0) also set the acoustic time-step bound.
struct Material {
  ConstitutiveModel model = ConstitutiveModel::LinearKirchhoff;
  double lambda = 0.0;
  double mu = 0.0;
  double K = 0.0;
  double G = 0.0;
  double E = 0.0;
  double nu = 0.0;
  double rho0 = 0.0;
  double c = 0.0;
};

/// Builds a Material from Young's modulus and Poisson ratio using the standard
/// isotropic conversions lambda = E nu / ((1+nu)(1-2nu)), mu = E / (2(1+nu)).
Material material_from_young_poisson(double E, double nu, double rho0,
                                     ConstitutiveModel model);

/// Second Piola-Kirchhoff stress from the deformation gradient.
/// Linear Kirchhoff: S = lambda tr(E) I + 2 mu E with E = (F^T F - I)/2.
/// Neo-Hookean:      S = mu (I - C^-1) + lambda ln(J) C^-1 with C = F^T F.
template <int D>
Mat<D> second_pk(const Mat<D>& F, const Material& mat);

/// First Piola-Kirchhoff stress P = F S.
template <int D>
Mat<D> first_pk(const Mat<D>& F, const Mat<D>& S) {
  return F * S;
}

/// Von Mises equivalent of the Cauchy stress sigma = J^-1 P F^T. The deviator
/// uses trace/D so a hydrostatic state maps to zero in either dimension.
template <int D>
double von_mises(const Mat<D>& F, const Mat<D>& P, double J);

/// Strain energy density per unit reference volume for the given model.
template <int D>
double strain_energy_density(const Mat<D>& F, const Material& mat);

} // namespace tlsph

#endif // TLSPH_MATERIAL_HPP
