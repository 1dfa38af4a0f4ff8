#include "cmg/regular.hpp"

#include <cmath>
#include <random>

#include "cmg/errors.hpp"
#include "cmg/numerics.hpp"

namespace cmg::regular {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Enumerates integer coefficient vectors by increasing sup-norm, then
// lexicographically, and returns the first combination of the basis columns
// that is a regular vector.
std::optional<CVector> search_integer_combination(const ReflectionGroup& g,
                                                  const ReflectionInventory& inv,
                                                  const CMatrix& basis, double tol) {
  const int k = static_cast<int>(basis.cols());
  if (k == 0) return std::nullopt;
  constexpr int kMaxSup = 40;
  std::vector<int> coeff(k);
  for (int sup = 1; sup <= kMaxSup; ++sup) {
    // odometer over {-sup..sup}^k
    std::fill(coeff.begin(), coeff.end(), -sup);
    while (true) {
      bool on_shell = false;
      for (int c : coeff)
        if (std::abs(c) == sup) on_shell = true;
      if (on_shell) {
        CVector v = CVector::Zero(basis.rows());
        for (int i = 0; i < k; ++i) v += static_cast<double>(coeff[i]) * basis.col(i);
        if (v.norm() > 1e-12 && is_regular_vector(g, inv, v, tol)) return v;
      }
      int pos = k - 1;
      while (pos >= 0 && coeff[pos] == sup) {
        coeff[pos] = -sup;
        --pos;
      }
      if (pos < 0) break;
      ++coeff[pos];
    }
  }
  return std::nullopt;
}

int matrix_order(const CMatrix& m, int cap) {
  const int n = static_cast<int>(m.rows());
  CMatrix power = m;
  for (int ord = 1; ord <= cap; ++ord) {
    if ((power - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-9) return ord;
    power = power * m;
  }
  throw InputError("tau has no finite order within cap");
}

}  // namespace

std::optional<CVector> first_regular_combination(const ReflectionGroup& g,
                                                 const ReflectionInventory& inv,
                                                 const CMatrix& basis, double tol) {
  return search_integer_combination(g, inv, basis, tol);
}

std::optional<RegularElementFind> find_regular_element(const ReflectionGroup& g,
                                                       const ReflectionInventory& inv,
                                                       int d, int power, double tol) {
  if (d < 1) throw InputError("find_regular_element: d must be >= 1");
  if (std::gcd(d, power < 0 ? -power : power) != 1 && d > 1)
    throw InputError("find_regular_element: power must be coprime to d");
  const Complex zeta(std::cos(2.0 * kPi * power / d), std::sin(2.0 * kPi * power / d));
  const int n = g.dim();

  for (int w = 0; w < g.size(); ++w) {
    if (g.element_order(w) % d != 0) continue;  // needs a primitive d-th root eigenvalue
    CMatrix shifted = g.element(w) - zeta * CMatrix::Identity(n, n);
    CMatrix eigenspace = numerics::kernel_basis(shifted, tol);
    if (eigenspace.cols() == 0) continue;
    // The eigenspace meets V_reg iff it lies inside no hyperplane.
    bool inside_some = false;
    for (const auto& alpha : inv.hyperplane_alphas) {
      if ((alpha.transpose() * eigenspace).cwiseAbs().maxCoeff() <= tol * alpha.norm()) {
        inside_some = true;
        break;
      }
    }
    if (inside_some) continue;
    auto witness = search_integer_combination(g, inv, eigenspace, tol);
    if (!witness)
      throw InternalError("find_regular_element: no integer witness in a regular eigenspace");
    RegularElementFind out;
    out.element_index = w;
    out.d = d;
    out.zeta = zeta;
    out.witness = *witness;
    return out;
  }
  return std::nullopt;
}

RegularAutomorphism make_tau_inner(const ReflectionGroup& g, const ReflectionInventory& inv,
                                   const RegularElementFind& find) {
  RegularAutomorphism tau;
  tau.kind = TauKind::inner_regular;
  tau.d = find.d;
  tau.zeta = find.zeta;
  tau.wd_index = find.element_index;
  tau.tau = (Complex(1, 0) / find.zeta) * g.element(find.element_index);
  tau.witness = find.witness;
  tau.order = matrix_order(tau.tau, g.size() * std::max(find.d, 1) + 1);
  // The witness sits in the zeta-eigenspace of w_d, hence is tau-fixed.
  if ((tau.tau * tau.witness - tau.witness).norm() > 1e-8 * tau.witness.norm())
    throw InternalError("make_tau_inner: witness is not tau-fixed");
  if (!is_regular_vector(g, inv, tau.witness))
    throw InternalError("make_tau_inner: witness is not regular");
  return tau;
}

RegularAutomorphism make_tau_general(const ReflectionGroup& g, const ReflectionInventory& inv,
                                     const CMatrix& tau_matrix, double tol) {
  const int n = g.dim();
  if (tau_matrix.rows() != n || tau_matrix.cols() != n)
    throw InputError("make_tau_general: dimension mismatch");
  if (std::abs(tau_matrix.determinant()) < 1e-12)
    throw InputError("make_tau_general: tau must be invertible");

  const CMatrix tau_inv = tau_matrix.inverse();
  for (int gi : g.generator_indices())
    if (!g.find_element(tau_matrix * g.element(gi) * tau_inv))
      throw NormalizerError("make_tau_general: tau does not normalize W");

  RegularAutomorphism tau;
  tau.kind = TauKind::general;
  tau.tau = tau_matrix;
  tau.order = matrix_order(tau_matrix, 10000);

  CMatrix fixed = numerics::kernel_basis(tau_matrix - CMatrix::Identity(n, n), tol);
  auto witness = search_integer_combination(g, inv, fixed, tol);
  if (!witness)
    throw NotRegularError("make_tau_general: tau fixes no regular vector (V_reg^tau empty)");
  tau.witness = *witness;
  return tau;
}

FixedPair fixed_pair(const ReflectionGroup& g, const RegularAutomorphism& tau, double tol) {
  const int n = g.dim();
  FixedPair fp;
  fp.v_tau_basis = numerics::kernel_basis(tau.tau - CMatrix::Identity(n, n), tol);

  const CMatrix tau_inv = tau.tau.inverse();
  for (int w = 0; w < g.size(); ++w) {
    const CMatrix& m = g.element(w);
    if ((tau.tau * m * tau_inv - m).cwiseAbs().maxCoeff() <= tol * (1.0 + m.cwiseAbs().maxCoeff()))
      fp.w_tau.push_back(w);
  }

  // Cross-check for inner-regular tau: W^tau is the centralizer of w_d.
  if (tau.kind == TauKind::inner_regular) {
    std::vector<int> centralizer;
    for (int w = 0; w < g.size(); ++w)
      if (g.product(w, tau.wd_index) == g.product(tau.wd_index, w)) centralizer.push_back(w);
    if (centralizer != fp.w_tau)
      throw InternalError("fixed_pair: W^tau differs from the centralizer of w_d");
  }

  const int k = static_cast<int>(fp.v_tau_basis.cols());
  for (int w : fp.w_tau) {
    CMatrix image = g.element(w) * fp.v_tau_basis;
    CMatrix restr = fp.v_tau_basis.adjoint() * image;
    if ((fp.v_tau_basis * restr - image).cwiseAbs().maxCoeff() > 1e-7)
      throw InternalError("fixed_pair: V^tau is not stable under W^tau");
    (void)k;
    fp.restricted.push_back(std::move(restr));
  }
  return fp;
}

SpringerReport springer_verify(const ReflectionGroup& g, const RegularAutomorphism& tau,
                               double tol) {
  FixedPair fp = fixed_pair(g, tau, tol);
  const int k = static_cast<int>(fp.v_tau_basis.cols());
  const int m = static_cast<int>(fp.w_tau.size());

  SpringerReport report;
  report.dim_v_tau = k;
  report.order_w_tau = m;

  // Faithful: distinct elements restrict to distinct matrices.
  report.faithful = true;
  for (int a = 0; a < m && report.faithful; ++a)
    for (int b = a + 1; b < m; ++b)
      if ((fp.restricted[a] - fp.restricted[b]).cwiseAbs().maxCoeff() <= tol) {
        report.faithful = false;
        break;
      }

  // Reflections of the restricted action: codim-1 fixed space inside V^tau.
  std::vector<int> reflection_positions;
  for (int a = 0; a < m; ++a) {
    CMatrix shifted = fp.restricted[a] - CMatrix::Identity(k, k);
    Eigen::JacobiSVD<CMatrix> svd(shifted);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * scale) ++rank;
    if (rank == 1) reflection_positions.push_back(a);
  }
  report.restricted_reflections = static_cast<int>(reflection_positions.size());

  // Subgroup of W^tau generated by the restricted reflections, by index closure.
  std::vector<bool> in_w_tau(g.size(), false);
  for (int w : fp.w_tau) in_w_tau[w] = true;
  std::vector<bool> reached(g.size(), false);
  reached[0] = true;
  int count = 1;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int pos : reflection_positions) {
      int next = g.product(fp.w_tau[pos], cur);
      if (!in_w_tau[next])
        throw InternalError("springer_verify: closure left W^tau");
      if (!reached[next]) {
        reached[next] = true;
        ++count;
        stack.push_back(next);
      }
    }
  }
  report.reflection_generated = (count == m);
  report.order_match = report.faithful;  // faithful restriction preserves the order
  return report;
}

CVector perturbed_fixed_regular(const ReflectionGroup& g, const ReflectionInventory& inv,
                                const RegularAutomorphism& tau, std::uint64_t seed,
                                double tol) {
  CMatrix basis = numerics::kernel_basis(tau.tau - CMatrix::Identity(g.dim(), g.dim()), tol);
  if (basis.cols() == 0) throw NotRegularError("perturbed_fixed_regular: V^tau is zero");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int attempt = 0; attempt < 256; ++attempt) {
    CVector v = tau.witness;
    for (int c = 0; c < basis.cols(); ++c)
      v += 0.25 * Complex(unif(rng), unif(rng)) * basis.col(c) * tau.witness.norm();
    if (is_regular_vector(g, inv, v, tol) &&
        (tau.tau * v - v).norm() <= 1e-8 * v.norm())
      return v;
  }
  throw InternalError("perturbed_fixed_regular: no regular perturbation found");
}

}  // namespace cmg::regular
