#include "cmg/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "cmg/errors.hpp"

namespace cmg::groups {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex root_of_unity(int k, int m) {
  const double angle = 2.0 * kPi * (((k % m) + m) % m) / m;
  return Complex(std::cos(angle), std::sin(angle));
}

CMatrix monomial_matrix(const Monomial& mono, int root_order) {
  const int n = static_cast<int>(mono.perm.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(mono.perm[j], j) = root_of_unity(mono.exps[j], root_order);
  return m;
}

Monomial monomial_product(const Monomial& a, const Monomial& b, int m) {
  const int n = static_cast<int>(a.perm.size());
  Monomial out;
  out.perm.resize(n);
  out.exps.resize(n);
  for (int j = 0; j < n; ++j) {
    out.perm[j] = a.perm[b.perm[j]];
    out.exps[j] = (b.exps[j] + a.exps[b.perm[j]]) % m;
  }
  return out;
}

Monomial monomial_inverse(const Monomial& a, int m) {
  const int n = static_cast<int>(a.perm.size());
  Monomial out;
  out.perm.resize(n);
  out.exps.resize(n);
  for (int j = 0; j < n; ++j) {
    out.perm[a.perm[j]] = j;
    out.exps[a.perm[j]] = (m - a.exps[j]) % m;
  }
  return out;
}

// Quantized linear fingerprint of a matrix; true duplicates land in the same
// or an adjacent bucket, so lookups probe three keys.
constexpr double kBucketWidth = 1e-6;

long long bucket_key(const CMatrix& m) {
  double acc = 0.0;
  int idx = 1;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      acc += m(i, j).real() * std::sin(0.7 * idx) + m(i, j).imag() * std::cos(1.3 * idx);
      ++idx;
    }
  return static_cast<long long>(std::floor(acc / kBucketWidth));
}

bool matrices_match(const CMatrix& a, const CMatrix& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

// Detects whether m is monomial with entries that are exact root_order-th
// roots of unity (within tol); returns the exact form.
std::optional<Monomial> detect_monomial(const CMatrix& m, int root_order, double tol) {
  const int n = static_cast<int>(m.rows());
  Monomial mono;
  mono.perm.assign(n, -1);
  mono.exps.assign(n, 0);
  std::vector<bool> row_used(n, false);
  for (int j = 0; j < n; ++j) {
    int hit = -1;
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(m(i, j));
      if (a > tol) {
        if (hit >= 0) return std::nullopt;
        hit = i;
      }
    }
    if (hit < 0 || row_used[hit]) return std::nullopt;
    const Complex entry = m(hit, j);
    if (std::abs(std::abs(entry) - 1.0) > tol) return std::nullopt;
    const double angle = std::arg(entry);
    const double steps = angle * root_order / (2.0 * kPi);
    const long long k = std::llround(steps);
    if (std::abs(steps - static_cast<double>(k)) > root_order * tol) return std::nullopt;
    row_used[hit] = true;
    mono.perm[j] = hit;
    mono.exps[j] = static_cast<int>(((k % root_order) + root_order) % root_order);
  }
  return mono;
}

// Smallest root order <= limit making every generator an exact monomial.
std::optional<int> common_root_order(const std::vector<CMatrix>& gens, double tol) {
  constexpr int kLimit = 240;
  for (int m = 1; m <= kLimit; ++m) {
    bool ok = true;
    for (const auto& g : gens)
      if (!detect_monomial(g, m, tol)) {
        ok = false;
        break;
      }
    if (ok) return m;
  }
  return std::nullopt;
}

constexpr int kFullTableLimit = 1024;

}  // namespace

void ReflectionGroup::index_elements() {
  buckets_.clear();
  for (int i = 0; i < size(); ++i) buckets_[bucket_key(elements_[i])].push_back(i);
  exact_index_.clear();
  if (exact_)
    for (int i = 0; i < size(); ++i) exact_index_.emplace(exact_->second[i], i);
}

std::optional<int> ReflectionGroup::lookup(const CMatrix& m) const {
  const long long key = bucket_key(m);
  for (long long k = key - 1; k <= key + 1; ++k) {
    auto it = buckets_.find(k);
    if (it == buckets_.end()) continue;
    for (int idx : it->second)
      if (matrices_match(elements_[idx], m, kMatchTol)) return idx;
  }
  return std::nullopt;
}

std::optional<int> ReflectionGroup::find_element(const CMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) return std::nullopt;
  return lookup(m);
}

int ReflectionGroup::product(int i, int j) const {
  if (!mult_table_.empty()) return mult_table_[static_cast<std::size_t>(i) * size() + j];
  if (exact_) {
    Monomial prod = monomial_product(exact_->second[i], exact_->second[j], exact_->first);
    auto it = exact_index_.find(prod);
    if (it == exact_index_.end()) throw InternalError("group product left the element set");
    return it->second;
  }
  auto idx = lookup(elements_[i] * elements_[j]);
  if (!idx) throw InternalError("group product left the element set");
  return *idx;
}

int ReflectionGroup::element_order(int i) const {
  int order = 1;
  int cur = i;
  while (cur != 0) {
    cur = product(cur, i);
    ++order;
    if (order > size()) throw InternalError("element order exceeds group size");
  }
  return order;
}

std::vector<int> ReflectionGroup::word(int i) const {
  std::vector<int> w;
  while (i != 0) {
    w.push_back(bfs_parent_[i].second);
    i = bfs_parent_[i].first;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

void finalize_group(ReflectionGroup& g) {
  g.index_elements();
  const int n = g.size();
  if (n <= kFullTableLimit) {
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i) * n + j] = g.product(i, j);
    g.mult_table_ = std::move(table);
  }
  g.inv_table_.assign(n, -1);
  g.dets_.resize(n);
  for (int i = 0; i < n; ++i) g.dets_[i] = g.element(i).determinant();
  for (int i = 0; i < n; ++i) {
    if (g.inv_table_[i] >= 0) continue;
    // Walk powers until identity; the previous power is the inverse.
    int prev = i, cur = g.product(i, i);
    while (cur != 0) {
      prev = cur;
      cur = g.product(cur, i);
    }
    g.inv_table_[i] = (g.product(i, prev) == 0) ? prev : -1;
    if (g.inv_table_[i] < 0) throw InternalError("inverse not found");
  }
}

ReflectionGroup generate_exact(const std::vector<Monomial>& gens, int root_order, int cap) {
  if (gens.empty()) throw InputError("generate_group: no generators");
  const int n = static_cast<int>(gens[0].perm.size());
  ReflectionGroup g;
  g.dim_ = n;

  std::unordered_map<Monomial, int, MonomialHasher> seen;
  std::vector<Monomial> elems;
  Monomial id;
  id.perm.resize(n);
  id.exps.assign(n, 0);
  std::iota(id.perm.begin(), id.perm.end(), 0);
  elems.push_back(id);
  seen.emplace(id, 0);
  g.bfs_parent_.push_back({0, -1});

  std::deque<int> queue = {0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      Monomial next = monomial_product(gens[gi], elems[cur], root_order);
      auto [it, inserted] = seen.emplace(next, static_cast<int>(elems.size()));
      if (inserted) {
        if (static_cast<int>(elems.size()) >= cap)
          throw GenerationError("generate_group: cap exceeded (group infinite or too large)");
        elems.push_back(next);
        g.bfs_parent_.push_back({cur, static_cast<int>(gi)});
        queue.push_back(static_cast<int>(elems.size()) - 1);
      }
    }
  }

  g.elements_.reserve(elems.size());
  for (const auto& e : elems) g.elements_.push_back(monomial_matrix(e, root_order));
  for (const auto& mono : gens) {
    auto it = seen.find(mono);
    g.generator_indices_.push_back(it->second);
  }
  g.exact_ = {root_order, std::move(elems)};
  finalize_group(g);
  return g;
}

ReflectionGroup generate_group(const std::vector<CMatrix>& generators, int cap) {
  if (generators.empty()) throw InputError("generate_group: no generators");
  const int n = static_cast<int>(generators[0].rows());
  for (const auto& m : generators) {
    if (m.rows() != n || m.cols() != n)
      throw InputError("generate_group: generators must be square of equal size");
    numerics::require_finite(m, "generate_group");
    if (std::abs(m.determinant()) < 1e-12)
      throw InputError("generate_group: non-invertible generator");
  }

  if (auto root = common_root_order(generators, 1e-12)) {
    std::vector<Monomial> gens;
    for (const auto& m : generators) gens.push_back(*detect_monomial(m, *root, 1e-12));
    return generate_exact(gens, *root, cap);
  }

  ReflectionGroup g;
  g.dim_ = n;
  g.elements_.push_back(CMatrix::Identity(n, n));
  g.bfs_parent_.push_back({0, -1});
  g.index_elements();

  std::deque<int> queue = {0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
      CMatrix next = generators[gi] * g.elements_[cur];
      if (!next.allFinite() || next.cwiseAbs().maxCoeff() > 1e8)
        throw GenerationError("generate_group: cap exceeded (group infinite or too large)");
      if (!g.lookup(next)) {
        if (g.size() >= cap)
          throw GenerationError("generate_group: cap exceeded (group infinite or too large)");
        g.elements_.push_back(next);
        g.bfs_parent_.push_back({cur, static_cast<int>(gi)});
        g.buckets_[bucket_key(next)].push_back(g.size() - 1);
        queue.push_back(g.size() - 1);
      }
    }
  }
  for (const auto& m : generators) g.generator_indices_.push_back(*g.lookup(m));
  finalize_group(g);
  return g;
}

void tag_builtin(ReflectionGroup& g, BuiltinKind kind, std::vector<int> params,
                 std::string name) {
  g.builtin_ = kind;
  g.builtin_params_ = std::move(params);
  g.name_ = std::move(name);
}

ReflectionGroup make_symmetric(int n, int cap) {
  if (n < 1) throw InputError("make_symmetric: n must be >= 1");
  std::vector<Monomial> gens;
  for (int i = 0; i + 1 < n; ++i) {
    Monomial t;
    t.perm.resize(n);
    t.exps.assign(n, 0);
    std::iota(t.perm.begin(), t.perm.end(), 0);
    std::swap(t.perm[i], t.perm[i + 1]);
    gens.push_back(t);
  }
  if (gens.empty()) {  // S_1 on C^1
    Monomial id;
    id.perm = {0};
    id.exps = {0};
    gens.push_back(id);
  }
  auto g = generate_exact(gens, 1, cap);
  tag_builtin(g, BuiltinKind::symmetric, {n}, "S" + std::to_string(n));
  return g;
}

ReflectionGroup make_cyclic(int e) {
  if (e < 1) throw InputError("make_cyclic: e must be >= 1");
  Monomial s;
  s.perm = {0};
  s.exps = {1 % e};
  auto g = generate_exact({s}, e, e + 1);
  tag_builtin(g, BuiltinKind::cyclic, {e}, "mu" + std::to_string(e));
  return g;
}

ReflectionGroup make_dihedral(int e, int cap) {
  if (e < 2) throw InputError("make_dihedral: e must be >= 2");
  // G(e,e,2): anti-diagonal monomials with inverse root-of-unity entries.
  Monomial s, t;
  s.perm = {1, 0};
  s.exps = {0, 0};
  t.perm = {1, 0};
  t.exps = {1, e - 1};
  auto g = generate_exact({s, t}, e, cap);
  tag_builtin(g, BuiltinKind::dihedral, {e}, "G(" + std::to_string(e) + "," + std::to_string(e) + ",2)");
  return g;
}

ReflectionGroup make_wreath(int d, int r, int cap) {
  if (d < 1 || r < 1) throw InputError("make_wreath: d and r must be >= 1");
  std::vector<Monomial> gens;
  for (int i = 0; i + 1 < r; ++i) {
    Monomial t;
    t.perm.resize(r);
    t.exps.assign(r, 0);
    std::iota(t.perm.begin(), t.perm.end(), 0);
    std::swap(t.perm[i], t.perm[i + 1]);
    gens.push_back(t);
  }
  Monomial zeta;
  zeta.perm.resize(r);
  zeta.exps.assign(r, 0);
  std::iota(zeta.perm.begin(), zeta.perm.end(), 0);
  zeta.exps[0] = 1 % d;
  gens.push_back(zeta);
  auto g = generate_exact(gens, d, cap);
  tag_builtin(g, BuiltinKind::wreath, {d, r},
              "G(" + std::to_string(d) + ",1," + std::to_string(r) + ")");
  return g;
}

namespace {

// Normalizes a functional so its first coordinate of significant modulus is 1.
CVector normalize_alpha(CVector a, double tol) {
  const double top = a.cwiseAbs().maxCoeff();
  for (int i = 0; i < a.size(); ++i)
    if (std::abs(a(i)) > tol * top) return a / a(i);
  throw InternalError("normalize_alpha: zero functional");
}

bool proportional(const CVector& a, const CVector& b, double tol) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return false;
  const Complex inner = (a.adjoint() * b)(0);
  return std::abs(std::abs(inner) - na * nb) <= tol * na * nb;
}

}  // namespace

int ReflectionInventory::reflection_of_element(int element_index) const {
  if (element_index < 0 || element_index >= static_cast<int>(refl_of_elem_.size())) return -1;
  return refl_of_elem_[element_index];
}

ReflectionInventory classify_reflections(const ReflectionGroup& g, double tol) {
  ReflectionInventory inv;
  const int n = g.dim();
  inv.refl_of_elem_.assign(g.size(), -1);

  for (int i = 1; i < g.size(); ++i) {
    CMatrix shifted = g.element(i) - CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > tol * scale) ++rank;
    if (rank != 1) continue;

    Reflection r;
    r.element_index = i;
    // shifted = sigma * u * v^adj up to rank one: kernel = {x : v^adj x = 0},
    // so the functional is conj(v); the image column u spans the complement.
    r.alpha = normalize_alpha(svd.matrixV().col(0).conjugate(), tol);
    r.coroot = svd.matrixU().col(0);
    const Complex pairing = numerics::pair_form(r.alpha, r.coroot);
    if (std::abs(pairing) < tol) throw InternalError("classify_reflections: coroot lies in its hyperplane");
    r.coroot /= pairing;
    r.det_value = g.det(i);
    inv.refl_of_elem_[i] = static_cast<int>(inv.reflections.size());
    inv.reflections.push_back(std::move(r));
  }

  // Group reflections by hyperplane (proportional functionals).
  for (auto& r : inv.reflections) {
    int found = -1;
    for (std::size_t h = 0; h < inv.hyperplane_alphas.size(); ++h)
      if (proportional(inv.hyperplane_alphas[h], r.alpha, tol)) {
        found = static_cast<int>(h);
        break;
      }
    if (found < 0) {
      found = static_cast<int>(inv.hyperplane_alphas.size());
      inv.hyperplane_alphas.push_back(r.alpha);
    }
    r.hyperplane_id = found;
  }

  const int n_hyp = static_cast<int>(inv.hyperplane_alphas.size());
  inv.stabilizers.assign(n_hyp, {0});
  for (std::size_t ri = 0; ri < inv.reflections.size(); ++ri)
    inv.stabilizers[inv.reflections[ri].hyperplane_id].push_back(
        inv.reflections[ri].element_index);
  inv.hyperplane_e.resize(n_hyp);
  for (int h = 0; h < n_hyp; ++h)
    inv.hyperplane_e[h] = static_cast<int>(inv.stabilizers[h].size());

  // Orbits of hyperplanes under the W-action alpha -> alpha o w^{-1}.
  inv.hyperplane_orbit.assign(n_hyp, -1);
  int next_orbit = 0;
  for (int h = 0; h < n_hyp; ++h) {
    if (inv.hyperplane_orbit[h] >= 0) continue;
    std::deque<int> queue = {h};
    inv.hyperplane_orbit[h] = next_orbit;
    HyperplaneOrbit orbit;
    orbit.orbit_id = next_orbit;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      orbit.hyperplane_ids.push_back(cur);
      for (int gi : g.generator_indices()) {
        CVector moved = g.element(g.inverse(gi)).transpose() * inv.hyperplane_alphas[cur];
        int target = -1;
        for (int h2 = 0; h2 < n_hyp; ++h2)
          if (proportional(inv.hyperplane_alphas[h2], moved, tol)) {
            target = h2;
            break;
          }
        if (target < 0) throw InternalError("classify_reflections: hyperplane orbit left the set");
        if (inv.hyperplane_orbit[target] < 0) {
          inv.hyperplane_orbit[target] = next_orbit;
          queue.push_back(target);
        }
      }
    }
    std::sort(orbit.hyperplane_ids.begin(), orbit.hyperplane_ids.end());
    orbit.e = inv.hyperplane_e[orbit.hyperplane_ids[0]];
    for (int hid : orbit.hyperplane_ids)
      if (inv.hyperplane_e[hid] != orbit.e)
        throw InternalError("classify_reflections: e_H not constant on an orbit");
    inv.orbits.push_back(std::move(orbit));
    ++next_orbit;
  }
  for (auto& r : inv.reflections) r.orbit_id = inv.hyperplane_orbit[r.hyperplane_id];

  // Conjugacy classes of reflections under the full group.
  inv.reflection_class.assign(inv.reflections.size(), -1);
  int next_class = 0;
  for (std::size_t ri = 0; ri < inv.reflections.size(); ++ri) {
    if (inv.reflection_class[ri] >= 0) continue;
    std::deque<int> queue = {static_cast<int>(ri)};
    inv.reflection_class[ri] = next_class;
    std::vector<int> members;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      members.push_back(cur);
      const int elem = inv.reflections[cur].element_index;
      for (int gi : g.generator_indices()) {
        int conj = g.product(g.product(gi, elem), g.inverse(gi));
        int cr = inv.refl_of_elem_[conj];
        if (cr < 0) throw InternalError("conjugate of a reflection is not a reflection");
        if (inv.reflection_class[cr] < 0) {
          inv.reflection_class[cr] = next_class;
          queue.push_back(cr);
        }
      }
    }
    std::sort(members.begin(), members.end());
    inv.reflection_classes.push_back(std::move(members));
    ++next_class;
  }

  // Hypothesis check: W is generated by its reflections.
  std::vector<bool> reached(g.size(), false);
  reached[0] = true;
  std::deque<int> queue = {0};
  int count = 1;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const auto& r : inv.reflections) {
      int next = g.product(r.element_index, cur);
      if (!reached[next]) {
        reached[next] = true;
        ++count;
        queue.push_back(next);
      }
    }
  }
  if (count != g.size())
    throw HypothesisError("group is not generated by its reflections");

  return inv;
}

bool is_regular_vector(const ReflectionGroup&, const ReflectionInventory& inv,
                       const CVector& v, double tol) {
  const double vn = v.norm();
  for (const auto& alpha : inv.hyperplane_alphas)
    if (std::abs(numerics::pair_form(alpha, v)) <= tol * vn * alpha.norm()) return false;
  return true;
}

CVector epsilon_idempotent(const ReflectionGroup& g, const ReflectionInventory& inv,
                           int hyperplane_id, int j) {
  if (hyperplane_id < 0 || hyperplane_id >= static_cast<int>(inv.stabilizers.size()))
    throw InputError("epsilon_idempotent: invalid hyperplane id");
  const auto& stab = inv.stabilizers[hyperplane_id];
  const int e = static_cast<int>(stab.size());
  CVector coeff = CVector::Zero(g.size());
  for (int w : stab) coeff(w) += std::pow(g.det(w), j) / static_cast<double>(e);
  return coeff;
}

}  // namespace cmg::groups
