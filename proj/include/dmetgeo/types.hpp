#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace dmetgeo {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Complex = std::complex<double>;

// 1 Angstrom in Bohr. User-facing lengths are Angstrom, everything behind the
// integral layer is atomic units (Bohr / Hartree).
inline constexpr double kBohrPerAngstrom = 1.8897259886;

/// Dense rank-4 tensor with equal extents, row-major (p,q,r,s).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), v_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int p, int q, int r, int s) { return v_[index(p, q, r, s)]; }
  double operator()(int p, int q, int r, int s) const { return v_[index(p, q, r, s)]; }

  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

  void setZero() { std::fill(v_.begin(), v_.end(), 0.0); }

 private:
  std::size_t index(int p, int q, int r, int s) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  }

  int n_ = 0;
  std::vector<double> v_;
};

}  // namespace dmetgeo
