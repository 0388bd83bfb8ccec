#include "tlsph/material.hpp"

#include <cmath>
#include <string>

#include "tlsph/errors.hpp"

namespace tlsph {

Material material_from_young_poisson(double E, double nu, double rho0,
                                     ConstitutiveModel model) {
  require(E > 0.0, ErrorKind::InvalidArgument,
          "Young's modulus must be positive, got " + std::to_string(E));
  require(nu >= 0.0 && nu < 0.5, ErrorKind::InvalidArgument,
          "Poisson ratio must lie in [0, 0.5), got " + std::to_string(nu));
  require(rho0 > 0.0, ErrorKind::InvalidArgument,
          "reference density must be positive, got " + std::to_string(rho0));

  Material mat;
  mat.model = model;
  mat.E = E;
  mat.nu = nu;
  mat.rho0 = rho0;
  mat.mu = E / (2.0 * (1.0 + nu));
  mat.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  mat.K = mat.lambda + 2.0 * mat.mu / 3.0;
  mat.G = mat.mu;
  mat.c = std::sqrt(mat.K / rho0);
  return mat;
}

template <int D>
Mat<D> second_pk(const Mat<D>& F, const Material& mat) {
  const double J = F.determinant();
  require(J > 0.0, ErrorKind::InvertedElement,
          "deformation gradient has non-positive determinant " + std::to_string(J));
  const Mat<D> C = F.transpose() * F;
  if (mat.model == ConstitutiveModel::LinearKirchhoff) {
    const Mat<D> green = 0.5 * (C - Mat<D>::Identity());
    return mat.lambda * green.trace() * Mat<D>::Identity() + 2.0 * mat.mu * green;
  }
  const Mat<D> C_inv = C.inverse();
  return mat.mu * (Mat<D>::Identity() - C_inv) + mat.lambda * std::log(J) * C_inv;
}

template <int D>
double von_mises(const Mat<D>& F, const Mat<D>& P, double J) {
  require(J > 0.0, ErrorKind::InvertedElement,
          "von Mises stress needs J > 0, got " + std::to_string(J));
  const Mat<D> cauchy = (P * F.transpose()) / J;
  const Mat<D> dev = cauchy - (cauchy.trace() / D) * Mat<D>::Identity();
  return std::sqrt(1.5 * (dev.array() * dev.array()).sum());
}

template <int D>
double strain_energy_density(const Mat<D>& F, const Material& mat) {
  const Mat<D> C = F.transpose() * F;
  const Mat<D> green = 0.5 * (C - Mat<D>::Identity());
  if (mat.model == ConstitutiveModel::LinearKirchhoff) {
    const double tr = green.trace();
    return 0.5 * mat.lambda * tr * tr +
           mat.mu * (green.array() * green.array()).sum();
  }
  const double logJ = std::log(F.determinant());
  return mat.mu * green.trace() - mat.mu * logJ + 0.5 * mat.lambda * logJ * logJ;
}

template Mat<2> second_pk<2>(const Mat<2>&, const Material&);
template Mat<3> second_pk<3>(const Mat<3>&, const Material&);
template double von_mises<2>(const Mat<2>&, const Mat<2>&, double);
template double von_mises<3>(const Mat<3>&, const Mat<3>&, double);
template double strain_energy_density<2>(const Mat<2>&, const Material&);
template double strain_energy_density<3>(const Mat<3>&, const Material&);

} // namespace tlsph
