#include "cmg/gaudin.hpp"

#include <algorithm>
#include <cmath>

#include "cmg/errors.hpp"
#include "cmg/group_algebra.hpp"
#include "cmg/numerics.hpp"

namespace cmg::gaudin {

using numerics::pair_form;

CVector build_dy(const ReflectionGroup& g, const ReflectionInventory& inv, const ParamC& c,
                 const CVector& v, const CVector& y, double tol) {
  if (v.size() != g.dim() || y.size() != g.dim())
    throw DimensionError("build_dy: vectors must have dim V entries");
  CVector coeff = CVector::Zero(g.size());
  for (std::size_t r = 0; r < inv.reflections.size(); ++r) {
    const auto& refl = inv.reflections[r];
    const Complex denom = pair_form(refl.alpha, v);
    if (std::abs(denom) <= tol * v.norm() * refl.alpha.norm())
      throw NotRegularError("build_dy: base point lies on hyperplane " +
                            std::to_string(refl.hyperplane_id));
    const Complex num = pair_form(refl.alpha, y);
    coeff(refl.element_index) +=
        refl.det_value * c.of_reflection(inv, static_cast<int>(r)) * num / denom;
  }
  return coeff;
}

std::vector<CMatrix> dy_matrices(const ReflectionGroup& g, const ReflectionInventory& inv,
                                 const ParamC& c, const CVector& v, double tol) {
  std::vector<CMatrix> ops;
  for (int i = 0; i < g.dim(); ++i) {
    CVector y = CVector::Zero(g.dim());
    y(i) = Complex(1, 0);
    ops.push_back(groups::left_regular_matrix(g, build_dy(g, inv, c, v, y, tol)));
  }
  return ops;
}

CovectorSpectrum chi_spectrum(const ReflectionGroup& g, const ReflectionInventory& inv,
                              const CharacterTable& table, const ParamC& c, const CVector& v,
                              int chi_row, double tol, std::uint64_t seed) {
  if (chi_row < 0 || chi_row >= table.count()) throw InputError("chi_spectrum: bad row");
  const int deg = table.degrees[chi_row];
  const int block_dim = deg * deg;

  // Orthonormal basis of the isotypic image of e_chi; the left-regular
  // projector of a central idempotent is Hermitian in the element basis.
  CVector e = chars::central_idempotent(g, table, chi_row);
  CMatrix p = groups::left_regular_matrix(g, e);
  p = (p + p.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(p);
  int count = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) ++count;
  if (count != block_dim)
    throw NumericalError("chi_spectrum: isotypic rank differs from chi(1)^2");
  CMatrix basis(g.size(), block_dim);
  int col = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) basis.col(col++) = es.eigenvectors().col(i);

  auto full_ops = dy_matrices(g, inv, c, v, tol);
  std::vector<CMatrix> ops;
  ops.reserve(full_ops.size());
  for (const auto& op : full_ops) ops.push_back(basis.adjoint() * op * basis);

  CovectorSpectrum spec;
  spec.chi_row = chi_row;
  spec.base_point = v;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      spec.max_commutator = std::max(spec.max_commutator,
                                     numerics::commutator_norm(ops[i], ops[j]));

  auto clusters = numerics::joint_generalized_eigenspaces(ops, tol, seed);
  int total = 0;
  for (const auto& cl : clusters) {
    CovectorEntry entry;
    entry.vstar = cl.eigenvalues;
    entry.multiplicity = cl.multiplicity;
    entry.unstable = cl.unstable;
    spec.cluster_residual = std::max(spec.cluster_residual, cl.residual);
    total += cl.multiplicity;
    if (cl.multiplicity % deg != 0)
      throw NumericalError("chi_spectrum: multiplicity not divisible by chi(1)");
    spec.entries.push_back(std::move(entry));
  }
  if (total != block_dim)
    throw NumericalError("chi_spectrum: multiplicities do not sum to chi(1)^2");
  return spec;
}

std::vector<int> tau_fixed_covectors(const CovectorSpectrum& spec, const CMatrix& tau,
                                     double tol) {
  if ((tau * spec.base_point - spec.base_point).norm() > tol * (1.0 + spec.base_point.norm()))
    throw InputError("tau_fixed_covectors: base point is not tau-fixed");
  const CMatrix action = tau.inverse().transpose();  // contragredient on coordinates
  std::vector<int> fixed;
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    const CVector& vs = spec.entries[i].vstar;
    const CVector moved = action * vs;
    if ((moved - vs).cwiseAbs().maxCoeff() <= tol * (1.0 + vs.cwiseAbs().maxCoeff()))
      fixed.push_back(static_cast<int>(i));
  }
  return fixed;
}

double equivariance_check(const ReflectionGroup& g, const ReflectionInventory& inv,
                          const ParamC& c, const CVector& v,
                          const regular::RegularAutomorphism& tau,
                          const std::vector<int>& elem_perm, double tol) {
  if ((tau.tau * v - v).norm() > tol * (1.0 + v.norm()))
    throw InputError("equivariance_check: base point is not tau-fixed");
  if (!groups::c_is_tau_stable(g, inv, c, tau.tau, tol))
    throw ParameterError("equivariance_check: c is not tau-stable");

  double residual = 0.0;
  for (int i = 0; i < g.dim(); ++i) {
    CVector y = CVector::Zero(g.dim());
    y(i) = Complex(1, 0);
    CVector d = build_dy(g, inv, c, v, y, tol);
    CVector d_tau_y = build_dy(g, inv, c, v, tau.tau * y, tol);
    // Conjugating the group-algebra element by tau permutes coefficients:
    // coefficient of tau w tau^{-1} in tau D tau^{-1} equals that of w in D.
    CVector conjugated = CVector::Zero(g.size());
    for (int w = 0; w < g.size(); ++w) conjugated(elem_perm[w]) = d(w);
    CMatrix lhs = groups::left_regular_matrix(g, conjugated);
    CMatrix rhs = groups::left_regular_matrix(g, d_tau_y);
    residual = std::max(residual, (lhs - rhs).norm());
  }
  return residual;
}

}  // namespace cmg::gaudin
