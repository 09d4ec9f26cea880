#pragma once

#include "mpt/solve.hpp"

namespace mpt {

enum class FieldIntegralKind { Moment, CurlMoment, CrossMomentM };

// Quadrature integrals over the interior cells (unit coordinates).
CVec3 field_moment(const DiscreteVectorField& f);        // int_B (e_i x xi + theta)
CVec3 field_curl_moment(const DiscreteVectorField& f);   // int_B (e_i + curl(theta)/2)
CMat3 field_cross_moment(const DiscreteVectorField& f);  // X(m,s) = int_B xi_m (e_i x xi + theta)_s
CVec3 field_check_moment(const DiscreteVectorField& f);  // int_B xi x (theta + e_i x xi)

// Spec-facing dispatcher; CrossMomentM returns row m of the cross moment.
CVec3 field_integrals(const DiscreteVectorField& f, FieldIntegralKind kind, int m = 0);

// Bilinear (unconjugated) pair integrals used by the symmetric bilinear form.
// region: 0 interior, 1 exterior, -1 both.
cplx pair_dot_integral(const DiscreteVectorField& a, const DiscreteVectorField& b, int region);
cplx pair_curl_integral_mu(const DiscreteVectorField& a, const DiscreteVectorField& b);
cplx curl_axis_integral(const DiscreteVectorField& a, int axis_r);  // int_B e_r . curl(theta)
// int_B s_a . s_b with s = (k a)^2 eps_r theta + nu e_i x xi (strong-form substitution).
cplx pair_strong_integral(const DiscreteVectorField& a, const DiscreteVectorField& b);

// int_B e_r . grad(vartheta_i), one column of the scalar-solution moments.
CVec3 scalar_grad_moment(const DiscreteScalarField& f);

}  // namespace mpt
