#include "cmg/params.hpp"

#include <cmath>

#include "cmg/errors.hpp"

namespace cmg::groups {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex unit_root(int k, int e) {
  const double angle = 2.0 * kPi * (((k % e) + e) % e) / e;
  return Complex(std::cos(angle), std::sin(angle));
}

bool proportional(const CVector& a, const CVector& b, double tol) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return false;
  const Complex inner = (a.adjoint() * b)(0);
  return std::abs(std::abs(inner) - na * nb) <= tol * na * nb;
}

int find_hyperplane(const ReflectionInventory& inv, const CVector& functional, double tol) {
  for (std::size_t h = 0; h < inv.hyperplane_alphas.size(); ++h)
    if (proportional(inv.hyperplane_alphas[h], functional, tol)) return static_cast<int>(h);
  return -1;
}

// Index i with det = zeta_e^i, read off the argument.
int det_power(Complex det, int e) {
  const double steps = std::arg(det) * e / (2.0 * kPi);
  long long k = std::llround(steps);
  if (std::abs(steps - static_cast<double>(k)) > 1e-6)
    throw InternalError("det of a stabilizer element is not an e-th root of unity");
  return static_cast<int>(((k % e) + e) % e);
}

}  // namespace

ParamK zero_k(const ReflectionInventory& inv) {
  ParamK k;
  for (const auto& orbit : inv.orbits)
    k.per_orbit.emplace_back(orbit.e, Complex(0, 0));
  return k;
}

ParamC zero_c(const ReflectionInventory& inv) {
  ParamC c;
  c.by_class.assign(inv.reflection_classes.size(), Complex(0, 0));
  return c;
}

CVector euler_element(const ReflectionGroup& g, const ReflectionInventory& inv,
                      const ParamC& c) {
  CVector z = CVector::Zero(g.size());
  for (std::size_t r = 0; r < inv.reflections.size(); ++r) {
    const auto& refl = inv.reflections[r];
    z(refl.element_index) += (refl.det_value - Complex(1, 0)) * c.of_reflection(inv, static_cast<int>(r));
  }
  return z;
}

ParamC k_to_c(const ReflectionGroup& g, const ReflectionInventory& inv, const ParamK& k,
              double tol) {
  if (k.per_orbit.size() != inv.orbits.size())
    throw ParameterError("k_to_c: parameter does not match the orbit set");
  for (std::size_t o = 0; o < inv.orbits.size(); ++o)
    if (static_cast<int>(k.per_orbit[o].size()) != inv.orbits[o].e)
      throw ParameterError("k_to_c: parameter row length must be e_Omega");

  ParamC c = zero_c(inv);
  std::vector<bool> assigned(c.by_class.size(), false);
  for (std::size_t r = 0; r < inv.reflections.size(); ++r) {
    const auto& refl = inv.reflections[r];
    const int e = inv.hyperplane_e[refl.hyperplane_id];
    const int orbit = refl.orbit_id;
    Complex num(0, 0);
    for (int j = 0; j < e; ++j)
      num += (k.at(orbit, j) - k.at(orbit, j + 1)) * std::pow(refl.det_value, j);
    const Complex value = num / (refl.det_value - Complex(1, 0));
    const int cls = inv.reflection_class[r];
    if (!assigned[cls]) {
      c.by_class[cls] = value;
      assigned[cls] = true;
    } else if (std::abs(c.by_class[cls] - value) > tol * (1.0 + std::abs(value))) {
      throw InternalError("k_to_c: value not constant on a reflection conjugacy class");
    }
  }

  // Residual check: expand both sides of the defining identity.
  CVector lhs = CVector::Zero(g.size());
  for (const auto& orbit : inv.orbits)
    for (int h : orbit.hyperplane_ids)
      for (int j = 0; j < orbit.e; ++j) {
        const Complex coeff =
            (k.at(orbit.orbit_id, j) - k.at(orbit.orbit_id, j + 1)) * static_cast<double>(orbit.e);
        lhs += coeff * epsilon_idempotent(g, inv, h, j);
      }
  CVector rhs = euler_element(g, inv, c);
  double scale = 1.0 + std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff());
  if ((lhs - rhs).cwiseAbs().maxCoeff() > tol * scale)
    throw InternalError("k_to_c: group-algebra identity residual exceeds tolerance");
  return c;
}

ParamK c_to_k(const ReflectionGroup& g, const ReflectionInventory& inv, const ParamC& c) {
  if (c.by_class.size() != inv.reflection_classes.size())
    throw ParameterError("c_to_k: parameter does not match the reflection classes");
  ParamK k = zero_k(inv);
  for (const auto& orbit : inv.orbits) {
    const int e = orbit.e;
    const int h = orbit.hyperplane_ids[0];
    // f_i = (zeta^i - 1) c(w_i) where w_i in W_H has det zeta_e^i.
    std::vector<Complex> f(e, Complex(0, 0));
    for (int w : inv.stabilizers[h]) {
      if (w == 0) continue;
      const int pos = inv.reflection_of_element(w);
      const int i = det_power(g.det(w), e);
      f[i] = (unit_root(i, e) - Complex(1, 0)) * c.of_reflection(inv, pos);
    }
    // Inverse DFT recovers the cyclic differences d_j = k_j - k_{j+1}.
    std::vector<Complex> d(e, Complex(0, 0));
    for (int j = 0; j < e; ++j) {
      Complex acc(0, 0);
      for (int i = 0; i < e; ++i) acc += f[i] * unit_root(-i * j, e);
      d[j] = acc / static_cast<double>(e);
    }
    auto& row = k.per_orbit[orbit.orbit_id];
    row[0] = Complex(0, 0);
    for (int j = 0; j + 1 < e; ++j) row[j + 1] = row[j] - d[j];
  }
  return k;
}

bool k_is_tau_stable(const ReflectionGroup& g, const ReflectionInventory& inv,
                     const ParamK& k, const CMatrix& tau, double tol) {
  const CMatrix tau_inv_t = tau.inverse().transpose();
  for (std::size_t h = 0; h < inv.hyperplane_alphas.size(); ++h) {
    CVector moved = tau_inv_t * inv.hyperplane_alphas[h];
    const int target = find_hyperplane(inv, moved, tol);
    if (target < 0) return false;  // tau does not permute the arrangement
    const int o1 = inv.hyperplane_orbit[h];
    const int o2 = inv.hyperplane_orbit[target];
    if (k.per_orbit[o1].size() != k.per_orbit[o2].size()) return false;
    for (std::size_t j = 0; j < k.per_orbit[o1].size(); ++j)
      if (std::abs(k.per_orbit[o1][j] - k.per_orbit[o2][j]) >
          tol * (1.0 + std::abs(k.per_orbit[o1][j])))
        return false;
  }
  return true;
}

bool c_is_tau_stable(const ReflectionGroup& g, const ReflectionInventory& inv,
                     const ParamC& c, const CMatrix& tau, double tol) {
  const CMatrix tau_inv = tau.inverse();
  for (std::size_t r = 0; r < inv.reflections.size(); ++r) {
    const int elem = inv.reflections[r].element_index;
    auto conj = g.find_element(tau * g.element(elem) * tau_inv);
    if (!conj) return false;
    const int cr = inv.reflection_of_element(*conj);
    if (cr < 0) return false;
    const Complex a = c.of_reflection(inv, static_cast<int>(r));
    const Complex b = c.of_reflection(inv, cr);
    if (std::abs(a - b) > tol * (1.0 + std::abs(a))) return false;
  }
  return true;
}

}  // namespace cmg::groups
