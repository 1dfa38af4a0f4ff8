#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cmg/numerics.hpp"

namespace cmg::groups {

using numerics::CMatrix;
using numerics::Complex;
using numerics::CVector;

/// Exact form of a monomial matrix with root-of-unity entries:
/// M e_j = zeta^exps[j] e_perm[j], zeta = exp(2*pi*i/root_order).
struct Monomial {
  std::vector<int> perm;
  std::vector<int> exps;
  bool operator==(const Monomial& o) const { return perm == o.perm && exps == o.exps; }
};

struct MonomialHasher {
  std::size_t operator()(const Monomial& a) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](int v) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (int p : a.perm) mix(p);
    for (int e : a.exps) mix(e);
    return h;
  }
};

enum class BuiltinKind { none, symmetric, cyclic, dihedral, wreath };

/// A finite matrix group closed under multiplication and inversion, with a
/// distinguished identity at index 0. Immutable after construction.
class ReflectionGroup {
 public:
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const CMatrix& element(int i) const { return elements_[i]; }
  int product(int i, int j) const;
  int inverse(int i) const { return inv_table_[i]; }
  const std::vector<int>& generator_indices() const { return generator_indices_; }
  Complex det(int i) const { return dets_[i]; }
  int element_order(int i) const;

  /// Index of the element equal to m within tolerance, if any.
  std::optional<int> find_element(const CMatrix& m) const;

  /// Word in the generators reaching element i from the identity.
  std::vector<int> word(int i) const;

  bool is_exact() const { return exact_.has_value(); }
  BuiltinKind builtin() const { return builtin_; }
  /// Builtin parameters: symmetric {n}, cyclic {e}, dihedral {e}, wreath {d, r}.
  const std::vector<int>& builtin_params() const { return builtin_params_; }
  const std::string& name() const { return name_; }

  static constexpr double kMatchTol = 1e-10;

 private:
  friend ReflectionGroup generate_group(const std::vector<CMatrix>&, int);
  friend ReflectionGroup generate_exact(const std::vector<Monomial>&, int, int);
  friend void tag_builtin(ReflectionGroup&, BuiltinKind, std::vector<int>, std::string);
  friend void finalize_group(ReflectionGroup&);

  void index_elements();
  std::optional<int> lookup(const CMatrix& m) const;

  int dim_ = 0;
  std::vector<CMatrix> elements_;
  std::vector<int> inv_table_;
  std::vector<int> generator_indices_;
  std::vector<Complex> dets_;
  std::vector<std::pair<int, int>> bfs_parent_;  // (parent element, generator)
  std::vector<int> mult_table_;                  // full table when small, else empty
  std::optional<std::pair<int, std::vector<Monomial>>> exact_;  // (root_order, elems)
  std::unordered_map<Monomial, int, MonomialHasher> exact_index_;
  std::unordered_map<long long, std::vector<int>> buckets_;  // quantized lookup
  BuiltinKind builtin_ = BuiltinKind::none;
  std::vector<int> builtin_params_;
  std::string name_;
};

/// Closure of the generators under multiplication. Uses exact monomial
/// arithmetic when every generator is a monomial matrix with root-of-unity
/// entries, floating point with entrywise tolerance otherwise.
ReflectionGroup generate_group(const std::vector<CMatrix>& generators, int cap = 20000);

/// Built-in constructors.
ReflectionGroup make_symmetric(int n, int cap = 20000);   // S_n permuting C^n
ReflectionGroup make_cyclic(int e);                       // mu_e on C
ReflectionGroup make_dihedral(int e, int cap = 20000);    // G(e,e,2) on C^2
ReflectionGroup make_wreath(int d, int r, int cap = 20000);  // G(d,1,r) on C^r

/// A classified reflection of the group.
struct Reflection {
  int element_index = -1;
  CVector alpha;        // hyperplane functional, first nonzero coordinate = 1
  CVector coroot;       // spans the stable complement, alpha(coroot) = 1
  Complex det_value;    // eps(s), root of unity != 1
  int hyperplane_id = -1;
  int orbit_id = -1;
};

struct HyperplaneOrbit {
  int orbit_id = -1;
  std::vector<int> hyperplane_ids;
  int e = 0;  // common |W_H| over the orbit
};

/// Full reflection/hyperplane inventory of a group.
struct ReflectionInventory {
  std::vector<Reflection> reflections;
  std::vector<CVector> hyperplane_alphas;       // one normalized alpha per hyperplane
  std::vector<int> hyperplane_orbit;            // hyperplane -> orbit
  std::vector<int> hyperplane_e;                // |W_H| per hyperplane
  std::vector<std::vector<int>> stabilizers;    // W_H element indices (identity first)
  std::vector<HyperplaneOrbit> orbits;
  // Conjugacy classes of reflections (indices into `reflections`).
  std::vector<int> reflection_class;            // per reflection
  std::vector<std::vector<int>> reflection_classes;  // class -> reflection positions
  int reflection_of_element(int element_index) const;  // -1 when not a reflection

  std::vector<int> refl_of_elem_;  // filled by classify_reflections
};

/// Classifies reflections, hyperplanes and orbits. Throws HypothesisError if
/// the group is not generated by its reflections.
ReflectionInventory classify_reflections(const ReflectionGroup& g, double tol = 1e-8);

/// True iff alpha_H(v) != 0 for every hyperplane (modulus > tol*|v|*|alpha|).
bool is_regular_vector(const ReflectionGroup& g, const ReflectionInventory& inv,
                       const CVector& v, double tol = 1e-8);

/// The primitive idempotent (1/e_H) sum_{w in W_H} eps(w)^j w as group-algebra
/// coefficients over the element basis.
CVector epsilon_idempotent(const ReflectionGroup& g, const ReflectionInventory& inv,
                           int hyperplane_id, int j);

}  // namespace cmg::groups
