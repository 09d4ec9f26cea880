#pragma once

#include "mpt/core.hpp"

namespace mpt {

// Value, gradient and Hessian (w.r.t. x) of the Helmholtz free-space kernel
//   G_k(x,z) = e^{ik|x-z|} / (4 pi |x-z|),
// reducing to the Laplace kernel at k = 0.
struct GreensDerivatives {
  cplx value;
  CVec3 grad;
  CMat3 hess;
};

GreensDerivatives greens_eval(const Vec3& x, const Vec3& z, double k);

// Max relative deviation between the analytic derivatives and central
// differences of step h: grad checked against differences of value, hess
// against differences of grad. Validation helper, not a production path.
double greens_check_fd(const Vec3& x, const Vec3& z, double k, double h);

}  // namespace mpt
