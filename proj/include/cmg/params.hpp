#pragma once

#include "cmg/group.hpp"

namespace cmg::groups {

/// Parameter indexed by (hyperplane orbit, j mod e_Omega).
struct ParamK {
  std::vector<std::vector<Complex>> per_orbit;  // [orbit][j], 0 <= j < e_Omega

  /// k_{H,j} for arbitrary integer j, reduced mod e of the orbit.
  Complex at(int orbit, long long j) const {
    const auto& row = per_orbit[orbit];
    const long long e = static_cast<long long>(row.size());
    return row[static_cast<std::size_t>(((j % e) + e) % e)];
  }
};

/// Parameter constant on conjugacy classes of reflections.
struct ParamC {
  std::vector<Complex> by_class;  // indexed by reflection class id

  Complex of_reflection(const ReflectionInventory& inv, int reflection_pos) const {
    return by_class[inv.reflection_class[reflection_pos]];
  }
};

/// Zero parameters of the right shape.
ParamK zero_k(const ReflectionInventory& inv);
ParamC zero_c(const ReflectionInventory& inv);

/// The unique c with
///   sum_{(Omega,j)} sum_{H in Omega} (k_{H,j}-k_{H,j+1}) e_H eps_{H,j}
///     = sum_s (eps(s)-1) c(s) s.
/// Verifies the identity by expanding both sides in the group algebra.
ParamC k_to_c(const ReflectionGroup& g, const ReflectionInventory& inv, const ParamK& k,
              double tol = 1e-8);

/// The unique k with k_{Omega,0} = 0 and k_to_c(k) = c.
ParamK c_to_k(const ReflectionGroup& g, const ReflectionInventory& inv, const ParamC& c);

/// The central group-algebra element sum_s (eps(s)-1) c(s) s.
CVector euler_element(const ReflectionGroup& g, const ReflectionInventory& inv,
                      const ParamC& c);

/// True when k is constant along the tau-action on hyperplane orbits,
/// where tau maps hyperplanes by alpha -> alpha o tau^{-1}.
bool k_is_tau_stable(const ReflectionGroup& g, const ReflectionInventory& inv,
                     const ParamK& k, const CMatrix& tau, double tol = 1e-8);

/// True when c(tau s tau^{-1}) = c(s) for every reflection s.
bool c_is_tau_stable(const ReflectionGroup& g, const ReflectionInventory& inv,
                     const ParamC& c, const CMatrix& tau, double tol = 1e-8);

}  // namespace cmg::groups
