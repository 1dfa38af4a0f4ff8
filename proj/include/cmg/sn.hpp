#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmg::sn {

/// Weakly decreasing list of positive parts.
using Partition = std::vector<int>;

/// d-tuple of partitions.
struct Multipartition {
  std::vector<Partition> components;
  int total_size() const;
  bool operator==(const Multipartition& o) const { return components == o.components; }
};

/// All partitions of n in descending lexicographic order, (n) first.
std::vector<Partition> partitions_of(int n);

int partition_size(const Partition& p);
std::string partition_string(const Partition& p);

/// Character value chi_lambda at the class of cycle type ct, by rim-hook
/// recursion. Conventions: chi_(n) = 1, chi_(1^n) = sign.
long long mn_character(const Partition& lambda, const Partition& cycle_type);

/// d-core: the partition left after removing all rim d-hooks.
Partition d_core(const Partition& lambda, int d);

/// d-quotient on a beta-set whose bead count is the smallest multiple of d
/// that is >= the number of parts; component i collects runner i.
Multipartition d_quotient(const Partition& lambda, int d);

/// Partitions of n whose d-core is the unique partition of j, where j is the
/// element of {0,1} with d | n-j. Throws InputError when d is not such.
std::vector<Partition> part_n_d(int n, int d);

/// All d-multipartitions of r.
std::vector<Multipartition> multipartitions(int r, int d);

/// chi_mu(1) for G(d,1,r): multinomial(r; |mu^0|,...) times the product of
/// hook-length dimensions of the components.
long long multipartition_dim(const Multipartition& mu);

/// Hook-length dimension of a single partition.
long long hook_dim(const Partition& p);

/// The product of r disjoint d-cycles (1..d)(d+1..2d)..., fixing the last
/// j points; images 0-based. Throws InputError unless d | n or d | n-1.
std::vector<int> regular_wd(int n, int d);

/// Cycle type of a permutation given by 0-based images.
Partition cycle_type(const std::vector<int>& perm);

/// True iff d | n or d | n-1 (d >= 1): the regular numbers of S_n.
bool is_regular_number_sn(int n, int d);

}  // namespace cmg::sn
