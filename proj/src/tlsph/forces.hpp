#ifndef TLSPH_FORCES_HPP
#define TLSPH_FORCES_HPP

#include <optional>
#include <vector>

#include "tlsph/math_types.hpp"

namespace tlsph {

/// Linear penalty plane: a particle penetrating the half-space below the
/// plane feels a restoring acceleration stiffness * penetration * normal / m.
template <int D>
struct ContactPlane {
  Vec<D> point = Vec<D>::Zero();
  Vec<D> normal = Vec<D>::Zero();  // unit length, pointing out of the wall
  double stiffness = 0.0;

  Vec<D> acceleration(const Vec<D>& position, double mass) const {
    const double gap = (position - point).dot(normal);
    if (gap >= 0.0) return Vec<D>::Zero();
    return (stiffness * (-gap) / mass) * normal;
  }
};

/// External acceleration field: a fixed per-particle body term (gravity or a
/// prescribed body force evaluated on the reference configuration) plus an
/// optional contact plane evaluated at the current position.
template <int D>
struct ExternalAccel {
  std::vector<Vec<D>> body;  // empty means zero everywhere
  std::optional<ContactPlane<D>> contact;

  Vec<D> eval(std::size_t i, const Vec<D>& position, double mass) const {
    Vec<D> acc = body.empty() ? Vec<D>::Zero() : body[i];
    if (contact) acc += contact->acceleration(position, mass);
    return acc;
  }
};

} // namespace tlsph

#endif // TLSPH_FORCES_HPP
