#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace cmg::numerics {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// One joint generalized eigenspace of a commuting operator family.
struct SpectralCluster {
  /// One eigenvalue per input operator.
  CVector eigenvalues;
  /// Dimension of the joint generalized eigenspace (= basis columns).
  int multiplicity = 0;
  /// Orthonormal columns spanning the cluster subspace.
  CMatrix basis;
  /// True when the cluster sits within [tol, 10*tol] of a neighbour.
  bool unstable = false;
  /// Max over operators of the relative annihilation/invariance residual.
  double residual = 0.0;
};

/// Frobenius norm of ab - ba. Throws DimensionError on shape mismatch.
double commutator_norm(const CMatrix& a, const CMatrix& b);

/// Decomposes C^n into joint generalized eigenspaces of a commuting family.
///
/// Takes the Schur form of a seeded random combination of the operators,
/// groups its eigenvalues by single-linkage at threshold tol*(1+|A|), and
/// refines each invariant subspace by per-operator eigenvalues. Multiplicities
/// always sum to n; clusters closer than 10*tol to a neighbour are flagged
/// unstable rather than rejected.
std::vector<SpectralCluster> joint_generalized_eigenspaces(
    const std::vector<CMatrix>& ops, double tol, std::uint64_t seed);

/// Orthonormal basis of ker(m), columns with singular value <= tol*scale.
CMatrix kernel_basis(const CMatrix& m, double tol);

/// Throws DimensionError unless every entry of m is finite.
void require_finite(const CMatrix& m, const char* what);

/// Linear pairing <functional, v> = sum_i functional_i v_i (no conjugation).
inline Complex pair_form(const CVector& functional, const CVector& v) {
  return (functional.transpose() * v)(0);
}

}  // namespace cmg::numerics
