#include "tlsph/kernel.hpp"

#include <cmath>
#include <string>

#include "tlsph/errors.hpp"

namespace tlsph {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SmoothingKernel::SmoothingKernel(double h, int dim) : h_(h), dim_(dim) {
  require(h > 0.0, ErrorKind::InvalidArgument,
          "smoothing length must be positive, got " + std::to_string(h));
  require(dim == 2 || dim == 3, ErrorKind::InvalidArgument,
          "kernel dimension must be 2 or 3, got " + std::to_string(dim));
  sigma_ = (dim == 2) ? 7.0 / (4.0 * kPi * h * h)
                      : 21.0 / (16.0 * kPi * h * h * h);
}

double SmoothingKernel::value(double r) const {
  require(r >= 0.0, ErrorKind::InvalidArgument, "kernel radius must be non-negative");
  const double q = r / h_;
  if (q >= 2.0) return 0.0;
  const double t = 1.0 - 0.5 * q;
  const double t2 = t * t;
  return sigma_ * t2 * t2 * (1.0 + 2.0 * q);
}

double SmoothingKernel::grad_mag(double r) const {
  require(r >= 0.0, ErrorKind::InvalidArgument, "kernel radius must be non-negative");
  const double q = r / h_;
  if (q >= 2.0) return 0.0;
  const double t = 1.0 - 0.5 * q;
  return -5.0 * q * (sigma_ / h_) * t * t * t;
}

} // namespace tlsph
