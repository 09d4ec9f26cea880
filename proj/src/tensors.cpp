#include "mpt/tensors.hpp"

namespace mpt {

bool Rank2TensorC::is_symmetric(double tol, double abs_floor) const {
  const double scale = std::max(m_.norm(), abs_floor);
  if (scale == 0.0) return true;
  return (m_ - m_.transpose()).norm() <= tol * scale;
}

bool Rank2TensorC::is_isotropic(double tol, double abs_floor) const {
  const cplx trace = m_.trace() / 3.0;
  const double scale = std::max(m_.norm(), abs_floor);
  if (scale == 0.0) return true;
  return (m_ - trace * CMat3::Identity()).norm() <= tol * scale;
}

double Rank2TensorC::symmetry_defect() const {
  const double scale = m_.norm();
  if (scale == 0.0) return 0.0;
  return (m_ - CMat3(m_.transpose())).norm() / scale;
}

double Rank3TensorC::norm() const {
  double s = 0.0;
  for (const auto& v : c_) s += std::norm(v);
  return std::sqrt(s);
}

bool Rank3TensorC::all_finite() const {
  for (const auto& v : c_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Rank3TensorC Rank3TensorC::operator-(const Rank3TensorC& o) const {
  Rank3TensorC r;
  for (int m = 0; m < 3; ++m)
    for (int s = 0; s < 3; ++s)
      for (int i = 0; i < 3; ++i) r(m, s, i) = (*this)(m, s, i) - o(m, s, i);
  return r;
}

}  // namespace mpt
