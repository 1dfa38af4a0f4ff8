#pragma once

#include "cmg/group.hpp"

namespace cmg::groups {

/// Group-algebra elements are coefficient vectors over the element basis.
/// Convolution product: (a*b)_w = sum_{uv=w} a_u b_v.
CVector ga_multiply(const ReflectionGroup& g, const CVector& a, const CVector& b);

/// Coefficient vector of the identity element.
CVector ga_identity(const ReflectionGroup& g);

/// Matrix of left multiplication by a on the group algebra, element basis.
CMatrix left_regular_matrix(const ReflectionGroup& g, const CVector& a);

}  // namespace cmg::groups
