#ifndef TLSPH_MATH_TYPES_HPP
#define TLSPH_MATH_TYPES_HPP

#include <Eigen/Dense>

namespace tlsph {

using Real = double;

template <int D>
using Vec = Eigen::Matrix<Real, D, 1>;

template <int D>
using Mat = Eigen::Matrix<Real, D, D>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;
using Mat2 = Mat<2>;
using Mat3 = Mat<3>;

constexpr int ipow3(int d) { return d == 2 ? 9 : 27; }

} // namespace tlsph

#endif // TLSPH_MATH_TYPES_HPP
