#pragma once

#include <cstdint>
#include <vector>

#include "cmg/char_table.hpp"
#include "cmg/group.hpp"
#include "cmg/params.hpp"
#include "cmg/regular.hpp"

namespace cmg::gaudin {

using chars::CharacterTable;
using groups::CMatrix;
using groups::Complex;
using groups::CVector;
using groups::ParamC;
using groups::ReflectionGroup;
using groups::ReflectionInventory;

/// The specialized operator D_y^{k,v} = sum_s eps(s) c(s) <y,alpha_s>/<v,alpha_s> s
/// as a group-algebra coefficient vector. Throws NotRegularError naming the
/// hyperplane when some alpha_s(v) vanishes.
CVector build_dy(const ReflectionGroup& g, const ReflectionInventory& inv, const ParamC& c,
                 const CVector& v, const CVector& y, double tol = 1e-8);

/// Left-regular matrices of D_{e_1},...,D_{e_n} for the standard basis of V.
std::vector<CMatrix> dy_matrices(const ReflectionGroup& g, const ReflectionInventory& inv,
                                 const ParamC& c, const CVector& v, double tol = 1e-8);

/// One eigenvalue covector of the Gaudin family on an isotypic block.
struct CovectorEntry {
  CVector vstar;        // coordinates in the basis dual to the standard basis
  int multiplicity = 0; // within the isotypic block (a multiple of chi(1))
  bool unstable = false;
};

/// Joint generalized eigenvalue covectors of the Gaudin operators on the
/// isotypic component of one irreducible character.
struct CovectorSpectrum {
  int chi_row = -1;
  CVector base_point;
  std::vector<CovectorEntry> entries;
  double max_commutator = 0.0;  // residual over operator pairs in the block
  double cluster_residual = 0.0;
};

/// Projects the Gaudin operators to the image of the central idempotent of
/// chi and decomposes the block into joint generalized eigenspaces; the
/// eigenvalue tuple of a cluster is the covector in dual coordinates.
CovectorSpectrum chi_spectrum(const ReflectionGroup& g, const ReflectionInventory& inv,
                              const CharacterTable& table, const ParamC& c, const CVector& v,
                              int chi_row, double tol = 1e-8, std::uint64_t seed = 0);

/// Indices of the spectrum entries fixed by the contragredient tau-action,
/// <y, tau.vstar> = <tau^{-1} y, vstar>. Requires tau(base_point) = base_point.
std::vector<int> tau_fixed_covectors(const CovectorSpectrum& spec, const CMatrix& tau,
                                     double tol = 1e-8);

/// Max over the standard basis of |conj_tau(D_y) - D_{tau(y)}| in the
/// left-regular representation; requires tau(v) = v and tau-stable c.
double equivariance_check(const ReflectionGroup& g, const ReflectionInventory& inv,
                          const ParamC& c, const CVector& v,
                          const regular::RegularAutomorphism& tau,
                          const std::vector<int>& elem_perm, double tol = 1e-8);

}  // namespace cmg::gaudin
