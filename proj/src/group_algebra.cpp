#include "cmg/group_algebra.hpp"

#include "cmg/errors.hpp"

namespace cmg::groups {

CVector ga_multiply(const ReflectionGroup& g, const CVector& a, const CVector& b) {
  if (a.size() != g.size() || b.size() != g.size())
    throw DimensionError("ga_multiply: coefficient vector length must equal |W|");
  CVector out = CVector::Zero(g.size());
  for (int u = 0; u < g.size(); ++u) {
    if (a(u) == Complex(0, 0)) continue;
    for (int v = 0; v < g.size(); ++v) {
      if (b(v) == Complex(0, 0)) continue;
      out(g.product(u, v)) += a(u) * b(v);
    }
  }
  return out;
}

CVector ga_identity(const ReflectionGroup& g) {
  CVector out = CVector::Zero(g.size());
  out(0) = Complex(1, 0);
  return out;
}

CMatrix left_regular_matrix(const ReflectionGroup& g, const CVector& a) {
  if (a.size() != g.size())
    throw DimensionError("left_regular_matrix: coefficient vector length must equal |W|");
  CMatrix m = CMatrix::Zero(g.size(), g.size());
  for (int w = 0; w < g.size(); ++w) {
    if (a(w) == Complex(0, 0)) continue;
    for (int j = 0; j < g.size(); ++j) m(g.product(w, j), j) += a(w);
  }
  return m;
}

}  // namespace cmg::groups
