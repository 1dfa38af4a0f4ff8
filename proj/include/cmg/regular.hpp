#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cmg/group.hpp"

namespace cmg::regular {

using groups::CMatrix;
using groups::Complex;
using groups::CVector;
using groups::ReflectionGroup;
using groups::ReflectionInventory;

/// A zeta_d-regular element: its zeta_d-eigenspace meets V_reg.
struct RegularElementFind {
  int element_index = -1;
  int d = 1;
  Complex zeta;
  CVector witness;  // regular vector in the eigenspace, deterministic choice
};

/// Scans W for an element whose zeta_d-eigenspace is contained in no
/// reflecting hyperplane; zeta_d = exp(2*pi*i*power/d) with gcd(power,d)=1.
/// Returns the first hit in element order together with a regular witness.
std::optional<RegularElementFind> find_regular_element(const ReflectionGroup& g,
                                                       const ReflectionInventory& inv,
                                                       int d, int power = 1,
                                                       double tol = 1e-8);

enum class TauKind { inner_regular, general };

/// A regular automorphism of finite order of the normalizer of W.
struct RegularAutomorphism {
  CMatrix tau;
  int order = 1;
  CVector witness;  // tau-fixed regular vector
  TauKind kind = TauKind::general;
  int d = 0;            // inner-regular data
  Complex zeta;
  int wd_index = -1;
};

/// tau_d = zeta_d^{-1} w_d from a scan result.
RegularAutomorphism make_tau_inner(const ReflectionGroup& g, const ReflectionInventory& inv,
                                   const RegularElementFind& find);

/// General normalizer element: verifies membership in the normalizer, finite
/// order, and the existence of a tau-fixed regular vector.
RegularAutomorphism make_tau_general(const ReflectionGroup& g, const ReflectionInventory& inv,
                                     const CMatrix& tau_matrix, double tol = 1e-8);

/// The pair (V^tau, W^tau) with the restricted action.
struct FixedPair {
  CMatrix v_tau_basis;                 // orthonormal columns spanning V^tau
  std::vector<int> w_tau;              // elements with tau w tau^{-1} = w
  std::vector<CMatrix> restricted;     // action of each on V^tau, same order
};

FixedPair fixed_pair(const ReflectionGroup& g, const RegularAutomorphism& tau,
                     double tol = 1e-8);

struct SpringerReport {
  bool faithful = false;
  bool reflection_generated = false;
  bool order_match = false;
  int restricted_reflections = 0;
  int dim_v_tau = 0;
  int order_w_tau = 0;
  bool pass() const { return faithful && reflection_generated && order_match; }
};

/// Checks that W^tau acts faithfully on V^tau as a group generated by its
/// own reflections (codim-1 fixed spaces inside V^tau).
SpringerReport springer_verify(const ReflectionGroup& g, const RegularAutomorphism& tau,
                               double tol = 1e-8);

/// Deterministic regular vector in the column span of basis: the first small
/// integer combination of the columns avoiding all hyperplanes.
std::optional<CVector> first_regular_combination(const ReflectionGroup& g,
                                                 const ReflectionInventory& inv,
                                                 const CMatrix& basis, double tol = 1e-8);

/// Seeded tau-fixed regular point: witness perturbed inside V^tau.
CVector perturbed_fixed_regular(const ReflectionGroup& g, const ReflectionInventory& inv,
                                const RegularAutomorphism& tau, std::uint64_t seed,
                                double tol = 1e-8);

}  // namespace cmg::regular
