#include "cmg/char_table.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "cmg/errors.hpp"
#include "cmg/group_algebra.hpp"
#include "cmg/numerics.hpp"
#include "cmg/sn.hpp"

namespace cmg::chars {

using numerics::joint_generalized_eigenspaces;

Complex CharacterTable::value_on(const ReflectionGroup& g, int row, const CVector& coeffs) const {
  Complex acc(0, 0);
  for (int w = 0; w < g.size(); ++w)
    if (coeffs(w) != Complex(0, 0)) acc += coeffs(w) * rows(row, classes.class_of[w]);
  return acc;
}

ConjugacyClasses conjugacy_classes(const ReflectionGroup& g) {
  ConjugacyClasses cc;
  cc.class_of.assign(g.size(), -1);
  for (int i = 0; i < g.size(); ++i) {
    if (cc.class_of[i] >= 0) continue;
    const int id = cc.count();
    cc.class_of[i] = id;
    std::vector<int> members;
    std::deque<int> queue = {i};
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      members.push_back(cur);
      for (int gi : g.generator_indices()) {
        int conj = g.product(g.product(gi, cur), g.inverse(gi));
        if (cc.class_of[conj] < 0) {
          cc.class_of[conj] = id;
          queue.push_back(conj);
        }
      }
    }
    std::sort(members.begin(), members.end());
    cc.representatives.push_back(members.front());
    cc.sizes.push_back(static_cast<int>(members.size()));
    cc.members.push_back(std::move(members));
  }
  return cc;
}

namespace {

std::vector<int> matrix_to_permutation(const CMatrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(n, -1);
  for (int j = 0; j < n; ++j) {
    int best = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(m(i, j)) > std::abs(m(best, j))) best = i;
    perm[j] = best;
  }
  return perm;
}

CharacterTable table_for_symmetric(const ReflectionGroup& g, ConjugacyClasses classes) {
  const int n = g.builtin_params()[0];
  auto lambdas = sn::partitions_of(n);
  const int cl = classes.count();
  if (static_cast<int>(lambdas.size()) != cl)
    throw InternalError("symmetric group: class count differs from p(n)");

  std::vector<sn::Partition> class_type(cl);
  for (int c = 0; c < cl; ++c)
    class_type[c] = sn::cycle_type(matrix_to_permutation(g.element(classes.representatives[c])));

  CharacterTable t;
  t.classes = std::move(classes);
  t.rows.resize(lambdas.size(), cl);
  for (std::size_t r = 0; r < lambdas.size(); ++r) {
    for (int c = 0; c < cl; ++c)
      t.rows(r, c) = Complex(static_cast<double>(sn::mn_character(lambdas[r], class_type[c])), 0);
    t.degrees.push_back(static_cast<int>(sn::hook_dim(lambdas[r])));
    t.labels.push_back(sn::partition_string(lambdas[r]));
  }
  return t;
}

// Values rounded for the deterministic row ordering only.
bool row_less(const Eigen::RowVectorXcd& a, const Eigen::RowVectorXcd& b) {
  for (int i = 0; i < a.size(); ++i) {
    const double ar = std::round(a(i).real() * 1e6), br = std::round(b(i).real() * 1e6);
    if (ar != br) return ar > br;
    const double ai = std::round(a(i).imag() * 1e6), bi = std::round(b(i).imag() * 1e6);
    if (ai != bi) return ai > bi;
  }
  return false;
}

}  // namespace

CharacterTable character_table(const ReflectionGroup& g, double tol, std::uint64_t seed) {
  ConjugacyClasses classes = conjugacy_classes(g);
  if (g.builtin() == groups::BuiltinKind::symmetric)
    return table_for_symmetric(g, std::move(classes));

  const int cl = classes.count();
  const int order = g.size();

  // Structure constants: C_i C_k = sum_j a_{ikj} C_j, as matrices A_i with
  // (A_i)_{kj} = a_{ikj}; every central character is a joint eigenvector.
  std::vector<CMatrix> mats(cl, CMatrix::Zero(cl, cl));
  std::vector<long long> counts(cl);
  for (int i = 0; i < cl; ++i) {
    for (int k = 0; k < cl; ++k) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int x : classes.members[i])
        for (int y : classes.members[k]) ++counts[classes.class_of[g.product(x, y)]];
      for (int j = 0; j < cl; ++j) {
        if (counts[j] % classes.sizes[j] != 0)
          throw InternalError("character_table: inconsistent class structure constants");
        mats[i](k, j) = Complex(static_cast<double>(counts[j] / classes.sizes[j]), 0);
      }
    }
  }

  std::vector<numerics::SpectralCluster> clusters;
  try {
    clusters = joint_generalized_eigenspaces(mats, tol, seed);
  } catch (const Error& e) {
    throw NumericalError(std::string("character_table: eigenvector clustering failed: ") + e.what());
  }
  if (static_cast<int>(clusters.size()) != cl)
    throw NumericalError("character_table: central character count differs from class count");

  CharacterTable t;
  t.rows.resize(cl, cl);
  int row = 0;
  for (const auto& cluster : clusters) {
    if (cluster.multiplicity != 1)
      throw NumericalError("character_table: joint eigenspace not simple");
    // omega(C_j) = |C_j| chi(g_j) / chi(1); recover the degree from the
    // second orthogonality relation at the identity.
    double inv_sq = 0.0;
    for (int j = 0; j < cl; ++j)
      inv_sq += std::norm(cluster.eigenvalues(j)) / classes.sizes[j];
    const double deg_real = std::sqrt(order / inv_sq);
    const int deg = static_cast<int>(std::llround(deg_real));
    if (deg < 1 || std::abs(deg_real - deg) > 1e-4)
      throw NumericalError("character_table: non-integer degree");
    for (int j = 0; j < cl; ++j)
      t.rows(row, j) = cluster.eigenvalues(j) * static_cast<double>(deg) /
                       static_cast<double>(classes.sizes[j]);
    t.degrees.push_back(deg);
    ++row;
  }

  // Deterministic order: degree, then rounded values.
  std::vector<int> perm(cl);
  for (int i = 0; i < cl; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (t.degrees[a] != t.degrees[b]) return t.degrees[a] < t.degrees[b];
    return row_less(t.rows.row(a), t.rows.row(b));
  });
  Eigen::MatrixXcd sorted(cl, cl);
  std::vector<int> sorted_deg(cl);
  for (int i = 0; i < cl; ++i) {
    sorted.row(i) = t.rows.row(perm[i]);
    sorted_deg[i] = t.degrees[perm[i]];
  }
  t.rows = std::move(sorted);
  t.degrees = std::move(sorted_deg);
  for (int i = 0; i < cl; ++i) t.labels.push_back("chi" + std::to_string(i));

  // Sanity: sum of squared degrees and row orthogonality.
  long long sq = 0;
  for (int d : t.degrees) sq += static_cast<long long>(d) * d;
  if (sq != order) throw NumericalError("character_table: sum of squared degrees != |W|");
  for (int r = 0; r < cl; ++r)
    for (int s = 0; s < cl; ++s) {
      Complex acc(0, 0);
      for (int j = 0; j < cl; ++j)
        acc += t.rows(r, j) * std::conj(t.rows(s, j)) * static_cast<double>(classes.sizes[j]);
      acc /= static_cast<double>(order);
      const double want = (r == s) ? 1.0 : 0.0;
      if (std::abs(acc - want) > 1e-6)
        throw NumericalError("character_table: orthogonality residual too large");
    }

  t.classes = std::move(classes);
  return t;
}

CVector central_idempotent(const ReflectionGroup& g, const CharacterTable& table, int row) {
  if (row < 0 || row >= table.count()) throw InputError("central_idempotent: bad row");
  CVector coeff(g.size());
  const double scale = static_cast<double>(table.degrees[row]) / g.size();
  for (int w = 0; w < g.size(); ++w)
    coeff(w) = scale * table.rows(row, table.classes.class_of[g.inverse(w)]);
  return coeff;
}

TauData tau_data(const ReflectionGroup& g, const CharacterTable& table,
                 const CMatrix& tau_matrix, double tol) {
  const int n = g.dim();
  if (tau_matrix.rows() != n || tau_matrix.cols() != n)
    throw InputError("tau_data: dimension mismatch");
  if (std::abs(tau_matrix.determinant()) < 1e-12)
    throw InputError("tau_data: tau must be invertible");

  TauData td;
  td.tau_matrix = tau_matrix;
  const CMatrix tau_inv = tau_matrix.inverse();

  td.elem_perm.resize(g.size());
  for (int w = 0; w < g.size(); ++w) {
    auto idx = g.find_element(tau_matrix * g.element(w) * tau_inv);
    if (!idx) throw NormalizerError("tau_data: conjugation leaves the group");
    td.elem_perm[w] = *idx;
  }

  constexpr int kOrderCap = 10000;
  CMatrix power = tau_matrix;
  td.order = 1;
  while ((power - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9) {
    power = power * tau_matrix;
    ++td.order;
    if (td.order > kOrderCap) throw InputError("tau_data: tau has no finite order within cap");
  }

  const int cl = table.classes.count();
  td.class_perm.resize(cl);
  for (int c = 0; c < cl; ++c)
    td.class_perm[c] = table.classes.class_of[td.elem_perm[table.classes.representatives[c]]];
  std::vector<int> class_perm_inv(cl);
  for (int c = 0; c < cl; ++c) class_perm_inv[td.class_perm[c]] = c;

  // Row permutation: (tau . chi)(w) = chi(tau^{-1} w tau).
  td.irr_perm.assign(table.count(), -1);
  for (int r = 0; r < table.count(); ++r) {
    Eigen::RowVectorXcd pulled(cl);
    for (int c = 0; c < cl; ++c) pulled(c) = table.rows(r, class_perm_inv[c]);
    for (int s = 0; s < table.count(); ++s)
      if ((pulled - table.rows.row(s)).cwiseAbs().maxCoeff() <= 1e-6) {
        td.irr_perm[r] = s;
        break;
      }
    if (td.irr_perm[r] < 0) throw InternalError("tau_data: permuted row not found in the table");
  }
  td.stable.resize(table.count());
  for (int r = 0; r < table.count(); ++r) td.stable[r] = (td.irr_perm[r] == r) ? 1 : 0;

  // Inner detection: tau proportional to a group element.
  td.scalar = Complex(0, 0);
  for (int w = 0; w < g.size(); ++w) {
    const CMatrix& m = g.element(w);
    int bi = 0, bj = 0;
    double best = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          bi = i;
          bj = j;
        }
    if (std::abs(tau_matrix(bi, bj)) < 1e-12) continue;
    const Complex ratio = tau_matrix(bi, bj) / m(bi, bj);
    if ((tau_matrix - ratio * m).cwiseAbs().maxCoeff() <= tol * (1.0 + std::abs(ratio))) {
      td.proportional_to = w;
      td.scalar = ratio;
      break;
    }
  }
  return td;
}

namespace {

// Orthonormal basis of the isotypic image of the central idempotent.
CMatrix isotypic_basis(const ReflectionGroup& g, const CharacterTable& table, int row) {
  CVector e = central_idempotent(g, table, row);
  CMatrix p = groups::left_regular_matrix(g, e);
  p = (p + p.adjoint()) / 2.0;  // e_chi is self-adjoint in the element basis
  Eigen::SelfAdjointEigenSolver<CMatrix> es(p);
  const int expected = table.degrees[row] * table.degrees[row];
  int count = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) ++count;
  if (count != expected)
    throw NumericalError("isotypic projector rank differs from chi(1)^2");
  CMatrix basis(g.size(), expected);
  int col = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) basis.col(col++) = es.eigenvectors().col(i);
  return basis;
}

// Left-regular permutation matrix of a group element.
CMatrix left_perm_matrix(const ReflectionGroup& g, int w) {
  CMatrix m = CMatrix::Zero(g.size(), g.size());
  for (int j = 0; j < g.size(); ++j) m(g.product(w, j), j) = Complex(1, 0);
  return m;
}

// One unitary irreducible copy inside the isotypic block, split off with a
// random Hermitian right-multiplication (an element of the commutant).
CMatrix irreducible_model_basis(const ReflectionGroup& g, const CharacterTable& table,
                                int row, double tol, std::uint64_t seed) {
  const int deg = table.degrees[row];
  CMatrix basis = isotypic_basis(g, table, row);
  if (deg == 1) return basis;

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector a(g.size());
  for (int w = 0; w < g.size(); ++w) a(w) = Complex(gauss(rng), gauss(rng));
  for (int w = 0; w < g.size(); ++w) {
    const Complex sym = (a(w) + std::conj(a(g.inverse(w)))) / 2.0;
    a(w) = sym;
    a(g.inverse(w)) = std::conj(sym);
  }
  CMatrix right = CMatrix::Zero(g.size(), g.size());
  for (int w = 0; w < g.size(); ++w)
    for (int j = 0; j < g.size(); ++j) right(g.product(j, w), j) += a(w);

  CMatrix block = basis.adjoint() * right * basis;
  block = (block + block.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(block);

  // Eigenvalues come in groups of size deg; one group spans one copy.
  const auto& ev = es.eigenvalues();
  const double scale = 1.0 + std::abs(ev(ev.size() - 1) - ev(0));
  int start = 0;
  while (start < ev.size()) {
    int stop = start + 1;
    while (stop < ev.size() && ev(stop) - ev(stop - 1) <= 1e-7 * scale) ++stop;
    if (stop - start == deg) {
      CMatrix u = es.eigenvectors().middleCols(start, deg);
      return basis * u;
    }
    start = stop;
  }
  throw NumericalError("irreducible splitting: no eigenvalue cluster of size chi(1)");
}

CMatrix rho_of(const ReflectionGroup& g, const CMatrix& model, int w) {
  return model.adjoint() * (left_perm_matrix(g, w) * model);
}

}  // namespace

double extended_norm_sq(const ReflectionGroup& g, const CharacterTable& table,
                        const TauData& tau, int row, double tol, std::uint64_t seed) {
  if (row < 0 || row >= table.count()) throw InputError("extended_norm_sq: bad row");
  if (!tau.stable[row])
    throw InputError("extended_norm_sq: character is not tau-stable");

  if (tau.proportional_to) {
    const Complex v = table.rows(row, table.classes.class_of[*tau.proportional_to]);
    return std::norm(v);
  }

  const int deg = table.degrees[row];
  CMatrix model = irreducible_model_basis(g, table, row, tol, seed);

  // Validate the model: rho multiplicative and unitary on generators.
  for (int gi : g.generator_indices()) {
    CMatrix r = rho_of(g, model, gi);
    if ((r * r.adjoint() - CMatrix::Identity(deg, deg)).cwiseAbs().maxCoeff() > 1e-7)
      throw NumericalError("irreducible model is not unitary");
  }

  // Intertwiner: T rho(w) = rho(tau w tau^{-1}) T for all generators.
  const int d2 = deg * deg;
  const int ng = static_cast<int>(g.generator_indices().size());
  CMatrix system(static_cast<Eigen::Index>(ng) * d2, d2);
  for (int gi = 0; gi < ng; ++gi) {
    const int w = g.generator_indices()[gi];
    CMatrix r = rho_of(g, model, w);
    CMatrix rc = rho_of(g, model, tau.elem_perm[w]);
    // vec(T rho - rho' T) = (rho^T (x) I - I (x) rho') vec(T)
    CMatrix kr = CMatrix::Zero(d2, d2);
    for (int i = 0; i < deg; ++i)
      for (int j = 0; j < deg; ++j)
        for (int p = 0; p < deg; ++p) {
          kr(i + deg * j, i + deg * p) += r(p, j);        // (rho^T (x) I)
          kr(i + deg * j, p + deg * j) -= rc(i, p);       // (I (x) rho')
        }
    system.middleRows(static_cast<Eigen::Index>(gi) * d2, d2) = kr;
  }
  Eigen::JacobiSVD<CMatrix> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? std::max(1.0, sv(0)) : 1.0;
  if (sv(sv.size() - 1) > 1e-7 * smax)
    throw InternalError("extended_norm_sq: no intertwiner found (character not stable)");
  if (sv.size() >= 2 && sv(sv.size() - 2) <= 1e-7 * smax)
    throw InternalError("extended_norm_sq: intertwiner space not one-dimensional");
  CVector vecT = svd.matrixV().col(d2 - 1);
  CMatrix t(deg, deg);
  for (int j = 0; j < deg; ++j)
    for (int i = 0; i < deg; ++i) t(i, j) = vecT(i + deg * j);

  // Normalize unitary: T^dag T is scalar by Schur's lemma.
  CMatrix tt = t.adjoint() * t;
  const Complex c = tt.trace() / static_cast<double>(deg);
  if ((tt - c * CMatrix::Identity(deg, deg)).cwiseAbs().maxCoeff() > 1e-6 * std::abs(c))
    throw InternalError("extended_norm_sq: T^dag T is not scalar");
  t /= std::sqrt(std::abs(c));

  // Consistency with the finite extension: tau^q lands in W; T^q must agree
  // with rho(tau^q) up to a unimodular scalar.
  int q = -1;
  CMatrix power = tau.tau_matrix;
  int wq = -1;
  for (int j = 1; j <= tau.order; ++j) {
    if (auto idx = g.find_element(power)) {
      q = j;
      wq = *idx;
      break;
    }
    power = power * tau.tau_matrix;
  }
  if (q < 0) throw InternalError("extended_norm_sq: no power of tau lies in W");
  CMatrix tq = CMatrix::Identity(deg, deg);
  for (int j = 0; j < q; ++j) tq = tq * t;
  CMatrix rq = rho_of(g, model, wq);
  CMatrix ratio = tq * rq.inverse();
  const Complex gamma = ratio.trace() / static_cast<double>(deg);
  if ((ratio - gamma * CMatrix::Identity(deg, deg)).cwiseAbs().maxCoeff() >
          1e-5 * (1.0 + std::abs(gamma)) ||
      std::abs(std::abs(gamma) - 1.0) > 1e-5)
    throw Error("extended_norm_sq: unsupported tau (extension scaling equation unsolvable)");

  return std::norm(t.trace());
}

int b_invariant(const ReflectionGroup& g, const CharacterTable& table, int row) {
  if (row < 0 || row >= table.count()) throw InputError("b_invariant: bad row");
  const int cl = table.classes.count();
  const int n = g.dim();

  std::vector<std::vector<Complex>> eigs(cl);
  for (int c = 0; c < cl; ++c) {
    Eigen::ComplexEigenSolver<CMatrix> es(g.element(table.classes.representatives[c]), false);
    const CVector& e = es.eigenvalues();
    eigs[c].assign(e.data(), e.data() + e.size());
  }

  // Every irreducible occurs in the coinvariant algebra, whose top degree is
  // the number of reflections; that bounds the search.
  int refl = 0;
  for (int i = 1; i < g.size(); ++i) {
    CMatrix shifted = g.element(i) - CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(shifted);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv(0));
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > 1e-8 * scale) ++rank;
    if (rank == 1) ++refl;
  }
  const int cap = refl + n + 2;

  // The character of S^j(V) at w is h_j(eigenvalues of w); Newton's identity
  // j h_j = sum_{t=1..j} p_t h_{j-t} extends the columns degree by degree.
  std::vector<std::vector<Complex>> h(cl, std::vector<Complex>{Complex(1, 0)});
  std::vector<std::vector<Complex>> p(cl, std::vector<Complex>{Complex(0, 0)});
  for (int j = 0; j <= cap; ++j) {
    Complex acc(0, 0);
    for (int c = 0; c < cl; ++c) {
      if (static_cast<int>(h[c].size()) <= j) {
        Complex pj(0, 0);
        for (const Complex& lam : eigs[c]) pj += std::pow(lam, j);
        p[c].push_back(pj);
        Complex sum(0, 0);
        for (int t = 1; t <= j; ++t) sum += p[c][t] * h[c][j - t];
        h[c].push_back(sum / static_cast<double>(j));
      }
      acc += static_cast<double>(table.classes.sizes[c]) * h[c][j] *
             std::conj(table.rows(row, c));
    }
    acc /= static_cast<double>(g.size());
    if (acc.real() > 0.5) return j;
  }
  throw InternalError("b_invariant: no occurrence found below the degree cap");
}

}  // namespace cmg::chars
