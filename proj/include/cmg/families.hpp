#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmg/char_table.hpp"
#include "cmg/gaudin.hpp"
#include "cmg/params.hpp"
#include "cmg/regular.hpp"
#include "cmg/sn.hpp"

namespace cmg::families {

using chars::CharacterTable;
using chars::TauData;
using groups::ParamC;
using groups::ParamK;
using groups::ReflectionGroup;
using groups::ReflectionInventory;

enum class Provenance { euler_bound, user, singleton_smooth };

std::string provenance_string(Provenance p);

/// Partition of the character rows into candidate families.
struct FamilyPartition {
  std::vector<std::vector<int>> blocks;
  Provenance provenance = Provenance::euler_bound;
};

/// Level sets of chi -> omega_chi(z_k) for the central element
/// z_k = sum_s (eps(s)-1) c_k(s) s. The true family partition refines every
/// block, so this is an upper bound, not the exact partition.
FamilyPartition euler_partition(const ReflectionGroup& g, const ReflectionInventory& inv,
                                const CharacterTable& table, const ParamK& k,
                                double tol = 1e-8);

/// All-singleton partition; only certifiable for the built-in S_n at
/// k_{Omega,0} != k_{Omega,1}, refused otherwise.
FamilyPartition singleton_partition(const ReflectionGroup& g, const CharacterTable& table,
                                    const ParamK& k);

/// Partition from explicit blocks of row indices (expert input).
FamilyPartition user_partition(const CharacterTable& table,
                               const std::vector<std::vector<int>>& blocks);

/// Sum of extended_norm_sq over the tau-stable rows of the block.
double criterion_sum(const std::vector<double>& norms, const TauData& tau,
                     const std::vector<int>& block);

/// Per-character fixed-point check: every tau-stable chi with nonzero
/// twisted norm must have a tau-fixed eigenvalue covector.
struct CharCheck {
  int chi_row = -1;
  std::string label;
  double norm_sq = 0.0;
  bool asserted = false;  // norm above tolerance, membership asserted
  int n_entries = 0;
  int n_tau_fixed = 0;
  bool pass = true;
};

struct TheoremAReport {
  std::vector<CharCheck> checks;
  bool all_pass = true;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

TheoremAReport theorem_a_report(const ReflectionGroup& g, const ReflectionInventory& inv,
                                const CharacterTable& table, const ParamK& k,
                                const regular::RegularAutomorphism& tau, const TauData& td,
                                const groups::CVector& v, double tol = 1e-8,
                                std::uint64_t seed = 0, int jobs = 1);

/// Block-level findings for the unproved converse.
struct BlockFinding {
  std::vector<int> chi_rows;
  double criterion = 0.0;
  bool tau_stable_block = true;
  std::vector<int> fixed_counts;  // per tau-stable chi of the block
  std::string verdict;            // "pass" | "FAIL" | evidence labels
};

struct ConjectureBReport {
  FamilyPartition partition;
  std::vector<BlockFinding> blocks;
  bool theorem_side_pass = true;  // assertions from the proved direction
  double sum_criteria = 0.0;
  int order_w_tau = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

ConjectureBReport conjecture_b_report(const ReflectionGroup& g, const ReflectionInventory& inv,
                                      const CharacterTable& table, const ParamK& k,
                                      const regular::RegularAutomorphism& tau,
                                      const TauData& td, const groups::CVector& v,
                                      const FamilyPartition& partition, double tol = 1e-8,
                                      std::uint64_t seed = 0, int jobs = 1);

/// One row of the S_n criterion table: |chi_lambda(w_d)|^2 against the
/// squared dimension of the quotient character.
struct JeanRow {
  sn::Partition lambda;
  bool in_part_n_d = false;
  long long chi_at_wd = 0;
  long long lhs = 0;  // |chi_lambda(w_d)|^2
  long long rhs = 0;  // chi_{quo_d(lambda)}(1)^2 when member, else 0
  bool equal = false;
};

struct JeanReport {
  int n = 0, d = 0;
  std::vector<JeanRow> rows;
  bool all_equal = true;
};

/// Exact integer comparison for every partition of n (requires k0 != k1 so
/// the singleton partition argument applies).
JeanReport jean_report_sn(int n, int d, const ParamK& k);

}  // namespace cmg::families
