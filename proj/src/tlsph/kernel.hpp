#ifndef TLSPH_KERNEL_HPP
#define TLSPH_KERNEL_HPP

namespace tlsph {

/// Wendland C2 quintic smoothing kernel with compact support 2h.
///
/// W(q) = sigma * (1 - q/2)^4 * (1 + 2q) for q = r/h in [0, 2],
/// with sigma = 7/(4 pi h^2) in 2D and 21/(16 pi h^3) in 3D.
class SmoothingKernel {
 public:
  SmoothingKernel(double h, int dim);

  double h() const { return h_; }
  int dim() const { return dim_; }
  double support_radius() const { return 2.0 * h_; }
  double normalization() const { return sigma_; }

  /// Kernel weight W(r); zero for r >= 2h.
  double value(double r) const;

  /// Radial derivative dW/dr; non-positive everywhere, zero at r = 0 and
  /// beyond the support.
  double grad_mag(double r) const;

 private:
  double h_;
  double sigma_;
  int dim_;
};

} // namespace tlsph

#endif // TLSPH_KERNEL_HPP
