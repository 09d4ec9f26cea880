#pragma once

#include <array>

#include "mpt/core.hpp"

namespace mpt {

// Levi-Civita symbol.
inline int eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

// Complex rank-2 tensor on R^3, row-major (r, i).
class Rank2TensorC {
 public:
  Rank2TensorC() : m_(CMat3::Zero()) {}
  explicit Rank2TensorC(const CMat3& m) : m_(m) {}

  static Rank2TensorC Zero() { return Rank2TensorC(); }
  static Rank2TensorC Identity(cplx scale = 1.0) {
    return Rank2TensorC(scale * CMat3::Identity());
  }

  cplx& operator()(int r, int i) { return m_(r, i); }
  cplx operator()(int r, int i) const { return m_(r, i); }
  const CMat3& mat() const { return m_; }
  CMat3& mat() { return m_; }

  double norm() const { return m_.norm(); }
  bool all_finite() const { return m_.allFinite(); }

  // max_{r,i} |T_ri - T_ir| <= tol * max(norm, floor)
  bool is_symmetric(double tol, double abs_floor = 0.0) const;
  // within tol of a scalar multiple of the identity
  bool is_isotropic(double tol, double abs_floor = 0.0) const;
  double symmetry_defect() const;  // ||T - T^t|| / max(||T||, eps)

  Rank2TensorC operator+(const Rank2TensorC& o) const { return Rank2TensorC(m_ + o.m_); }
  Rank2TensorC operator-(const Rank2TensorC& o) const { return Rank2TensorC(m_ - o.m_); }
  Rank2TensorC operator*(cplx s) const { return Rank2TensorC(m_ * s); }
  CVec3 apply(const CVec3& v) const { return m_ * v; }

 private:
  CMat3 m_;
};

// Complex rank-3 tensor on R^3, indexed (m, s, i).
class Rank3TensorC {
 public:
  Rank3TensorC() { c_.fill(cplx(0.0, 0.0)); }

  cplx& operator()(int m, int s, int i) { return c_[idx(m, s, i)]; }
  cplx operator()(int m, int s, int i) const { return c_[idx(m, s, i)]; }

  double norm() const;
  bool all_finite() const;

  Rank3TensorC operator-(const Rank3TensorC& o) const;

 private:
  static int idx(int m, int s, int i) { return (m * 3 + s) * 3 + i; }
  std::array<cplx, 27> c_;
};

}  // namespace mpt
