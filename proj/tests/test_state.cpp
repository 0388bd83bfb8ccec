#include <doctest.h>

#include <cmath>
#include <random>

#include "tlsph/errors.hpp"
#include "tlsph/material.hpp"

using namespace tlsph;

namespace {

// Strain energy as a plain function of the (unsymmetrized) Green strain, for
// finite-difference checks of the closed-form neo-Hookean stress.
double neo_hookean_energy(const Mat3& green, const Material& mat) {
  const Mat3 C = Mat3::Identity() + 2.0 * green;
  const double logJ = 0.5 * std::log(C.determinant());
  return mat.mu * green.trace() - mat.mu * logJ + 0.5 * mat.lambda * logJ * logJ;
}

Mat3 random_deformation(std::mt19937& gen) {
  std::uniform_real_distribution<double> perturb(-0.05, 0.05);
  while (true) {
    Mat3 F = Mat3::Identity();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) F(r, c) += perturb(gen);
    }
    const double J = F.determinant();
    if (J > 0.9 && J < 1.1) return F;
  }
}

} // namespace

TEST_CASE("material conversion reproduces the published constants") {
  const Material mat = material_from_young_poisson(5.0e4, 0.45, 1265.0,
                                                   ConstitutiveModel::NeoHookean);
  CHECK(mat.mu == doctest::Approx(1.7241e4).epsilon(1e-4));
  CHECK(mat.lambda == doctest::Approx(1.5517e5).epsilon(1e-4));
  CHECK(mat.K == doctest::Approx(1.6667e5).epsilon(1e-4));
  CHECK(mat.c == doctest::Approx(11.48).epsilon(1e-3));
  // Cross-check against the independent bulk-modulus route E/(3(1-2nu)).
  CHECK(mat.K == doctest::Approx(5.0e4 / (3.0 * (1.0 - 0.9))).epsilon(1e-12));
}

TEST_CASE("material of the falling-ball case") {
  const Material mat = material_from_young_poisson(5.0e5, 0.45, 1000.0,
                                                   ConstitutiveModel::LinearKirchhoff);
  CHECK(mat.K == doctest::Approx(1.6667e6).epsilon(1e-4));
  CHECK(mat.c == doctest::Approx(40.8).epsilon(1e-2));
}

TEST_CASE("zero Poisson ratio gives lambda = 0") {
  const Material mat = material_from_young_poisson(2.0e5, 0.0, 1000.0,
                                                   ConstitutiveModel::LinearKirchhoff);
  CHECK(mat.lambda == doctest::Approx(0.0));
  CHECK(mat.mu == doctest::Approx(1.0e5).epsilon(1e-12));
  CHECK(mat.K == doctest::Approx(2.0e5 / 3.0).epsilon(1e-12));
}

TEST_CASE("incompressible limit and bad inputs are rejected") {
  CHECK_THROWS_AS(material_from_young_poisson(1e5, 0.5, 1000.0,
                                              ConstitutiveModel::NeoHookean),
                  Error);
  CHECK_THROWS_AS(material_from_young_poisson(-1e5, 0.3, 1000.0,
                                              ConstitutiveModel::NeoHookean),
                  Error);
  CHECK_THROWS_AS(material_from_young_poisson(1e5, 0.3, -1.0,
                                              ConstitutiveModel::NeoHookean),
                  Error);
}

TEST_CASE("K round-trips against lambda + 2 mu / 3") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> young(1e3, 1e9);
  std::uniform_real_distribution<double> poisson(0.0, 0.499);
  for (int trial = 0; trial < 200; ++trial) {
    const Material mat = material_from_young_poisson(
        young(gen), poisson(gen), 1000.0, ConstitutiveModel::LinearKirchhoff);
    CHECK(mat.K == doctest::Approx(mat.lambda + 2.0 * mat.mu / 3.0)
                       .epsilon(1e-12));
  }
}

TEST_CASE("stress vanishes in the reference state for both models") {
  for (auto model : {ConstitutiveModel::LinearKirchhoff, ConstitutiveModel::NeoHookean}) {
    const Material mat = material_from_young_poisson(5e4, 0.45, 1265.0, model);
    const Mat3 S = second_pk<3>(Mat3::Identity(), mat);
    CHECK(S.norm() == 0.0);
    const Mat2 S2 = second_pk<2>(Mat2::Identity(), mat);
    CHECK(S2.norm() == 0.0);
  }
}

TEST_CASE("linear model matches the plug-in uniaxial evaluation") {
  const Material mat = material_from_young_poisson(5e4, 0.45, 1265.0,
                                                   ConstitutiveModel::LinearKirchhoff);
  Mat3 F = Mat3::Identity();
  F(0, 0) = 1.01;
  const double e11 = 0.5 * (1.01 * 1.01 - 1.0);
  CHECK(e11 == doctest::Approx(0.01005).epsilon(1e-12));
  const Mat3 S = second_pk<3>(F, mat);
  Mat3 expected = mat.lambda * e11 * Mat3::Identity();
  expected(0, 0) += 2.0 * mat.mu * e11;
  CHECK((S - expected).norm() <= 1e-12 * expected.norm());
}

TEST_CASE("neo-Hookean stress matches finite differences of the energy") {
  const Material mat = material_from_young_poisson(5e4, 0.45, 1265.0,
                                                   ConstitutiveModel::NeoHookean);
  std::mt19937 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3 F = random_deformation(gen);
    const Mat3 green = 0.5 * (F.transpose() * F - Mat3::Identity());
    const Mat3 S = second_pk<3>(F, mat);
    const double eps = 1e-6;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        Mat3 plus = green, minus = green;
        plus(r, c) += eps;
        minus(r, c) -= eps;
        const double fd =
            (neo_hookean_energy(plus, mat) - neo_hookean_energy(minus, mat)) /
            (2.0 * eps);
        CHECK(S(r, c) == doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("stress is objective: S(QF) == S(F)") {
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979);
  for (auto model : {ConstitutiveModel::LinearKirchhoff, ConstitutiveModel::NeoHookean}) {
    const Material mat = material_from_young_poisson(5e4, 0.45, 1265.0, model);
    for (int trial = 0; trial < 50; ++trial) {
      const Mat3 F = random_deformation(gen);
      const Mat3 Q =
          Eigen::AngleAxisd(angle(gen), Vec3::Random().normalized()).toRotationMatrix();
      const Mat3 S = second_pk<3>(F, mat);
      const Mat3 S_rotated = second_pk<3>((Q * F).eval(), mat);
      CHECK((S - S_rotated).norm() <= 1e-10 * (1.0 + S.norm()));
    }
  }
}

TEST_CASE("inverted elements are rejected") {
  const Material mat = material_from_young_poisson(5e4, 0.45, 1265.0,
                                                   ConstitutiveModel::NeoHookean);
  Mat3 F = Mat3::Identity();
  F(0, 0) = -1.0;
  CHECK_THROWS_AS(second_pk<3>(F, mat), Error);
}

TEST_CASE("first Piola-Kirchhoff stress is the product F S") {
  const Mat3 S_zero = Mat3::Zero();
  Mat3 F = Mat3::Identity();
  F(0, 1) = 0.3;
  CHECK(first_pk<3>(F, S_zero).norm() == 0.0);

  Mat3 S = Mat3::Zero();
  S(0, 0) = 2.0e4;
  S(1, 2) = -3.0e3;
  S(2, 1) = -3.0e3;
  CHECK((first_pk<3>(Mat3::Identity(), S) - S).norm() == 0.0);

  std::mt19937 gen(17);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Mat3 Fr, Sr;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        Fr(r, c) = entry(gen);
        Sr(r, c) = entry(gen);
      }
    }
    // Independent triple-loop product.
    Mat3 expected = Mat3::Zero();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        for (int k = 0; k < 3; ++k) expected(r, c) += Fr(r, k) * Sr(k, c);
      }
    }
    CHECK((first_pk<3>(Fr, Sr) - expected).norm() <= 1e-14 * expected.norm());
  }
}

TEST_CASE("von Mises stress identities") {
  // Zero stress.
  CHECK(von_mises<3>(Mat3::Identity(), Mat3::Zero(), 1.0) == 0.0);

  // Pure hydrostatic Cauchy stress has zero deviator. With F = I and J = 1,
  // P equals the Cauchy stress.
  const Mat3 hydrostatic = -3.2e4 * Mat3::Identity();
  CHECK(von_mises<3>(Mat3::Identity(), hydrostatic, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  const Mat2 hydro2 = 1.7e3 * Mat2::Identity();
  CHECK(von_mises<2>(Mat2::Identity(), hydro2, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Uniaxial Cauchy stress diag(s, 0, 0) maps to s.
  Mat3 uniaxial = Mat3::Zero();
  uniaxial(0, 0) = 4.5e3;
  CHECK(von_mises<3>(Mat3::Identity(), uniaxial, 1.0) ==
        doctest::Approx(4.5e3).epsilon(1e-12));

  CHECK_THROWS_AS(von_mises<3>(Mat3::Identity(), uniaxial, 0.0), Error);
}
