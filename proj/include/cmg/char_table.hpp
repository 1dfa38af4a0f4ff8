#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmg/group.hpp"

namespace cmg::chars {

using groups::CMatrix;
using groups::Complex;
using groups::CVector;
using groups::ReflectionGroup;

struct ConjugacyClasses {
  std::vector<int> class_of;                // element -> class
  std::vector<int> representatives;         // class -> smallest element index
  std::vector<int> sizes;
  std::vector<std::vector<int>> members;
  int count() const { return static_cast<int>(representatives.size()); }
};

/// Orbit partition of the element set under conjugation.
ConjugacyClasses conjugacy_classes(const ReflectionGroup& g);

/// Complex character table: one row per irreducible, one column per class.
struct CharacterTable {
  ConjugacyClasses classes;
  Eigen::MatrixXcd rows;       // rows.rows() == classes.count()
  std::vector<int> degrees;    // chi(1), positive integers
  std::vector<std::string> labels;

  int count() const { return static_cast<int>(degrees.size()); }
  Complex value(int row, int element) const { return rows(row, classes.class_of[element]); }
  /// chi evaluated on a group-algebra element.
  Complex value_on(const ReflectionGroup& g, int row, const CVector& coeffs) const;
};

/// Character table by simultaneous eigenvectors of the class-sum
/// multiplication matrices (Burnside). Built-in S_n groups instead take their
/// rows from Murnaghan-Nakayama values, labelled by partitions.
CharacterTable character_table(const ReflectionGroup& g, double tol = 1e-8,
                               std::uint64_t seed = 0);

/// e_chi = (chi(1)/|W|) sum_w chi(w^{-1}) w.
CVector central_idempotent(const ReflectionGroup& g, const CharacterTable& table, int row);

/// Action of a normalizer element on W and on Irr(W).
struct TauData {
  CMatrix tau_matrix;
  int order = 1;                  // matrix order
  std::vector<int> elem_perm;     // w -> tau w tau^{-1}
  std::vector<int> class_perm;
  std::vector<int> irr_perm;      // row -> row of chi(tau^{-1} . tau)
  std::vector<char> stable;       // irr_perm fixed points
  std::optional<int> proportional_to;  // w with tau = scalar * M_w, if any
  Complex scalar;                      // that scalar
};

/// Verifies tau normalizes W and computes the induced permutations.
/// Throws NormalizerError when conjugation leaves the element set.
TauData tau_data(const ReflectionGroup& g, const CharacterTable& table,
                 const CMatrix& tau_matrix, double tol = 1e-8);

/// |chi~(tau)|^2 for a tau-stable row: the squared absolute trace of tau in
/// any extension of chi to W<tau>. Inner tau (proportional to an element w)
/// reads |chi(w)|^2 off the table; otherwise an explicit intertwiner of a
/// unitarized irreducible model is constructed.
double extended_norm_sq(const ReflectionGroup& g, const CharacterTable& table,
                        const TauData& tau, int row, double tol = 1e-8,
                        std::uint64_t seed = 0);

/// Least j >= 0 such that chi occurs in the j-th symmetric power of V.
int b_invariant(const ReflectionGroup& g, const CharacterTable& table, int row);

}  // namespace cmg::chars
