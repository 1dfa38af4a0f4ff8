#include "cmg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cmg/errors.hpp"

namespace cmg::numerics {

namespace {

double fro(const CMatrix& m) { return m.norm(); }

// Union-find for single-linkage grouping.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<int>> single_linkage(const CVector& values, double threshold) {
  const int n = static_cast<int>(values.size());
  Dsu dsu(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(values(i) - values(j)) <= threshold) dsu.unite(i, j);
  std::vector<std::vector<int>> groups;
  std::vector<int> root_to_group(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = dsu.find(i);
    if (root_to_group[r] < 0) {
      root_to_group[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[root_to_group[r]].push_back(i);
  }
  return groups;
}

// Swaps the diagonal entries at positions (p-1, p) of the upper-triangular
// Schur factor t by a unitary similarity, updating u accordingly.
void swap_schur_positions(CMatrix& t, CMatrix& u, int p) {
  const Complex a = t(p - 1, p - 1);
  const Complex b = t(p - 1, p);
  const Complex d = t(p, p);
  // Eigenvector of [[a, b], [0, d]] for eigenvalue d.
  const Complex x0 = b;
  const Complex x1 = d - a;
  const double r = std::hypot(std::abs(x0), std::abs(x1));
  if (r == 0.0) return;  // already scalar, nothing to move
  const Complex c = x0 / r;
  const Complex s = x1 / r;
  const int n = static_cast<int>(t.rows());
  // G = [[c, -conj(s)], [s, conj(c)]]; apply G^* on the left, G on the right.
  for (int j = 0; j < n; ++j) {
    const Complex t0 = t(p - 1, j), t1 = t(p, j);
    t(p - 1, j) = std::conj(c) * t0 + std::conj(s) * t1;
    t(p, j) = -s * t0 + c * t1;
  }
  for (int i = 0; i < n; ++i) {
    const Complex t0 = t(i, p - 1), t1 = t(i, p);
    t(i, p - 1) = c * t0 + s * t1;
    t(i, p) = -std::conj(s) * t0 + std::conj(c) * t1;
    const Complex u0 = u(i, p - 1), u1 = u(i, p);
    u(i, p - 1) = c * u0 + s * u1;
    u(i, p) = -std::conj(s) * u0 + std::conj(c) * u1;
  }
  t(p, p - 1) = Complex(0, 0);
}

// Orthonormal basis of the spectral subspace belonging to the given Schur
// diagonal positions: bubbles them to the front of a copy and reads the
// leading Schur vectors.
CMatrix schur_cluster_basis(const CMatrix& t_in, const CMatrix& u_in,
                            std::vector<int> members) {
  CMatrix t = t_in;
  CMatrix u = u_in;
  std::sort(members.begin(), members.end());
  for (int target = 0; target < static_cast<int>(members.size()); ++target) {
    int pos = members[target];
    for (int p = pos; p > target; --p) swap_schur_positions(t, u, p);
    // Positions of the remaining members shift right by one if they were
    // left of the moved entry; since members is sorted they never are.
  }
  return u.leftCols(static_cast<int>(members.size()));
}

struct LocalCluster {
  CVector eigenvalues;
  CMatrix basis;  // orthonormal, in the coordinates of the current level
  double residual = 0.0;
};

constexpr int kMaxDepth = 48;

std::vector<LocalCluster> split(const std::vector<CMatrix>& ops, double tol,
                                std::mt19937_64& rng, int depth) {
  if (depth > kMaxDepth)
    throw InternalError("joint_generalized_eigenspaces: recursion depth exceeded");
  const int n = static_cast<int>(ops[0].rows());
  const int k = static_cast<int>(ops.size());

  std::vector<double> op_scale(k);
  for (int i = 0; i < k; ++i) op_scale[i] = 1.0 + fro(ops[i]);

  // Random combination on the unit sphere; separates distinct joint
  // eigenvalue tuples with probability 1.
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector coeff(k);
  for (int i = 0; i < k; ++i) coeff(i) = Complex(gauss(rng), gauss(rng));
  coeff /= coeff.norm();
  CMatrix combo = CMatrix::Zero(n, n);
  for (int i = 0; i < k; ++i) combo += coeff(i) * ops[i];

  Eigen::ComplexSchur<CMatrix> schur(combo, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw NumericalError("joint_generalized_eigenspaces: Schur decomposition failed");
  const CMatrix& t = schur.matrixT();
  const CMatrix& u = schur.matrixU();

  const double combo_threshold = tol * (1.0 + fro(combo));
  auto groups = single_linkage(t.diagonal(), combo_threshold);

  std::vector<LocalCluster> out;
  for (const auto& members : groups) {
    const int m = static_cast<int>(members.size());
    CMatrix basis =
        (m == n) ? CMatrix(CMatrix::Identity(n, n)) : schur_cluster_basis(t, u, members);

    // Compress every operator to the invariant subspace.
    std::vector<CMatrix> compressed(k);
    std::vector<CMatrix> images(k);
    for (int i = 0; i < k; ++i) {
      images[i] = ops[i] * basis;
      compressed[i] = basis.adjoint() * images[i];
    }

    // Per-operator refinement: if some operator has genuinely distinct
    // eigenvalues inside the subspace, recurse on the compressed family.
    bool needs_split = false;
    std::vector<CVector> eigs(k);
    for (int i = 0; i < k; ++i) {
      if (m == 1) {
        eigs[i] = compressed[i].diagonal();
        continue;
      }
      Eigen::ComplexEigenSolver<CMatrix> es(compressed[i], /*vectors=*/false);
      eigs[i] = es.eigenvalues();
      double spread = 0.0;
      for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q)
          spread = std::max(spread, std::abs(eigs[i](p) - eigs[i](q)));
      if (spread > tol * op_scale[i]) needs_split = true;
    }

    bool accepted_split = false;
    if (needs_split && m > 1) {
      auto sub = split(compressed, tol, rng, depth + 1);
      if (sub.size() > 1) {
        // A valid refinement keeps every subcluster invariant; a spurious one
        // (split of a genuine Jordan structure) shows a large residual.
        double worst = 0.0;
        for (const auto& sc : sub) {
          for (int i = 0; i < k; ++i) {
            CMatrix im = compressed[i] * sc.basis;
            CMatrix cm = sc.basis.adjoint() * im;
            worst = std::max(worst, (im - sc.basis * cm).norm() / op_scale[i]);
          }
        }
        if (worst <= 100.0 * tol) {
          for (auto& sc : sub) {
            LocalCluster lifted;
            lifted.eigenvalues = sc.eigenvalues;
            lifted.basis = basis * sc.basis;
            lifted.residual = std::max(sc.residual, worst);
            out.push_back(std::move(lifted));
          }
          accepted_split = true;
        }
      }
    }
    if (accepted_split) continue;

    LocalCluster cluster;
    cluster.eigenvalues = CVector(k);
    double residual = 0.0;
    for (int i = 0; i < k; ++i) {
      cluster.eigenvalues(i) = eigs[i].mean();
      // Annihilation check: (op - lambda I)^m on the subspace, scaled.
      CMatrix nil = compressed[i] - cluster.eigenvalues(i) * CMatrix::Identity(m, m);
      CMatrix power = CMatrix::Identity(m, m);
      double scale_pow = 1.0;
      for (int e = 0; e < m; ++e) {
        power = nil * power;
        scale_pow *= op_scale[i];
      }
      residual = std::max(residual, power.norm() / scale_pow);
      // Invariance residual of the subspace itself.
      residual = std::max(residual,
                          (images[i] - basis * compressed[i]).norm() / op_scale[i]);
    }
    cluster.basis = std::move(basis);
    cluster.residual = residual;
    out.push_back(std::move(cluster));
  }
  return out;
}

}  // namespace

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw DimensionError(std::string(what) + ": non-finite entries");
}

double commutator_norm(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError("commutator_norm: operands must be square of equal size");
  require_finite(a, "commutator_norm");
  require_finite(b, "commutator_norm");
  return (a * b - b * a).norm();
}

CMatrix kernel_basis(const CMatrix& m, double tol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = sv.size() > 0 ? std::max(1.0, sv(0)) : 1.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * scale) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

std::vector<SpectralCluster> joint_generalized_eigenspaces(
    const std::vector<CMatrix>& ops, double tol, std::uint64_t seed) {
  if (ops.empty()) throw DimensionError("joint_generalized_eigenspaces: empty family");
  if (tol <= 0) throw InputError("joint_generalized_eigenspaces: tol must be positive");
  const int n = static_cast<int>(ops[0].rows());
  double max_scale = 0.0;
  for (const auto& op : ops) {
    if (op.rows() != n || op.cols() != n)
      throw DimensionError("joint_generalized_eigenspaces: operators must be square, equal size");
    require_finite(op, "joint_generalized_eigenspaces");
    max_scale = std::max(max_scale, fro(op));
  }
  const double comm_threshold = tol * (1.0 + max_scale);
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (commutator_norm(ops[i], ops[j]) > comm_threshold)
        throw CommutativityError("joint_generalized_eigenspaces: operators do not commute within tolerance");

  std::mt19937_64 rng(seed);
  auto local = split(ops, tol, rng, 0);

  // Merge clusters whose eigenvalue tuples coincide within tolerance in every
  // coordinate (the random combination separated them only by accident).
  std::vector<double> op_scale(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) op_scale[i] = 1.0 + fro(ops[i]);
  auto tuples_close = [&](const CVector& a, const CVector& b) {
    for (int i = 0; i < a.size(); ++i)
      if (std::abs(a(i) - b(i)) > tol * op_scale[i]) return false;
    return true;
  };
  std::vector<LocalCluster> merged;
  for (auto& c : local) {
    bool absorbed = false;
    for (auto& m : merged) {
      if (tuples_close(c.eigenvalues, m.eigenvalues)) {
        CMatrix joined(n, m.basis.cols() + c.basis.cols());
        joined << m.basis, c.basis;
        Eigen::HouseholderQR<CMatrix> qr(joined);
        m.basis = CMatrix(qr.householderQ()).leftCols(joined.cols());
        m.residual = std::max(m.residual, c.residual);
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(std::move(c));
  }

  std::vector<SpectralCluster> result;
  int total = 0;
  for (auto& c : merged) {
    SpectralCluster sc;
    sc.eigenvalues = c.eigenvalues;
    sc.multiplicity = static_cast<int>(c.basis.cols());
    sc.basis = std::move(c.basis);
    sc.residual = c.residual;
    total += sc.multiplicity;
    result.push_back(std::move(sc));
  }
  if (total != n)
    throw InternalError("joint_generalized_eigenspaces: multiplicities do not sum to dimension");

  // Flag ill-conditioned clustering: nearest neighbour within [tol, 10*tol]
  // in the scaled metric.
  for (std::size_t a = 0; a < result.size(); ++a) {
    for (std::size_t b = a + 1; b < result.size(); ++b) {
      double dist = 0.0;
      for (int i = 0; i < result[a].eigenvalues.size(); ++i)
        dist = std::max(dist, std::abs(result[a].eigenvalues(i) - result[b].eigenvalues(i)) /
                                  op_scale[i]);
      if (dist <= 10.0 * tol) {
        result[a].unstable = true;
        result[b].unstable = true;
      }
    }
  }

  // Deterministic order: lexicographic by eigenvalue tuple.
  std::sort(result.begin(), result.end(), [](const SpectralCluster& a, const SpectralCluster& b) {
    for (int i = 0; i < a.eigenvalues.size(); ++i) {
      if (a.eigenvalues(i).real() != b.eigenvalues(i).real())
        return a.eigenvalues(i).real() < b.eigenvalues(i).real();
      if (a.eigenvalues(i).imag() != b.eigenvalues(i).imag())
        return a.eigenvalues(i).imag() < b.eigenvalues(i).imag();
    }
    return false;
  });
  return result;
}

}  // namespace cmg::numerics
