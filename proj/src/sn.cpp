#include "cmg/sn.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "cmg/errors.hpp"

namespace cmg::sn {

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

int Multipartition::total_size() const {
  int s = 0;
  for (const auto& c : components) s += partition_size(c);
  return s;
}

std::string partition_string(const Partition& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    os << p[i];
  }
  os << ')';
  return os.str();
}

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw InputError("partitions_of: n must be >= 0");
  std::vector<Partition> out;
  Partition cur;
  // Descending lexicographic enumeration, (n) first.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

namespace {

// Beta numbers lambda_i + (L - i), 1-based i, padded to L parts.
std::vector<int> beta_set(const Partition& lambda, int length) {
  std::vector<int> beta;
  for (int i = 0; i < length; ++i) {
    const int part = i < static_cast<int>(lambda.size()) ? lambda[i] : 0;
    beta.push_back(part + (length - 1 - i));
  }
  return beta;  // strictly decreasing
}

Partition partition_from_beta(std::vector<int> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<int>());
  Partition p;
  const int length = static_cast<int>(beta.size());
  for (int i = 0; i < length; ++i) {
    const int part = beta[i] - (length - 1 - i);
    if (part > 0) p.push_back(part);
  }
  return p;
}

long long mn_rec(const Partition& lambda, const std::vector<int>& type, std::size_t pos,
                 std::map<std::pair<Partition, std::size_t>, long long>& memo) {
  if (pos == type.size()) return lambda.empty() ? 1 : 0;
  auto key = std::make_pair(lambda, pos);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  const int t = type[pos];
  std::vector<int> beta = beta_set(lambda, static_cast<int>(lambda.size()));
  long long total = 0;
  for (std::size_t bi = 0; bi < beta.size(); ++bi) {
    const int target = beta[bi] - t;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int crossings = 0;
    for (int b : beta)
      if (b > target && b < beta[bi]) ++crossings;
    std::vector<int> next = beta;
    next[bi] = target;
    const long long sign = (crossings % 2 == 0) ? 1 : -1;
    total += sign * mn_rec(partition_from_beta(next), type, pos + 1, memo);
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

long long mn_character(const Partition& lambda, const Partition& cycle_type) {
  if (partition_size(lambda) != partition_size(cycle_type))
    throw InputError("mn_character: |lambda| != |cycle type|");
  std::vector<int> type = cycle_type;
  std::sort(type.begin(), type.end(), std::greater<int>());
  std::map<std::pair<Partition, std::size_t>, long long> memo;
  return mn_rec(lambda, type, 0, memo);
}

namespace {

int quotient_length(const Partition& lambda, int d) {
  const int parts = static_cast<int>(lambda.size());
  if (parts == 0) return 0;
  return ((parts + d - 1) / d) * d;  // smallest multiple of d >= #parts
}

}  // namespace

Partition d_core(const Partition& lambda, int d) {
  if (d < 1) throw InputError("d_core: d must be >= 1");
  const int length = quotient_length(lambda, d);
  std::vector<int> beta = beta_set(lambda, length);
  std::vector<std::vector<int>> runners(d);
  for (int b : beta) runners[b % d].push_back((b - b % d) / d);
  std::vector<int> core_beta;
  for (int r = 0; r < d; ++r)
    for (int q = 0; q < static_cast<int>(runners[r].size()); ++q)
      core_beta.push_back(r + d * q);  // beads pushed to the bottom
  return partition_from_beta(std::move(core_beta));
}

Multipartition d_quotient(const Partition& lambda, int d) {
  if (d < 1) throw InputError("d_quotient: d must be >= 1");
  const int length = quotient_length(lambda, d);
  std::vector<int> beta = beta_set(lambda, length);
  std::vector<std::vector<int>> runners(d);
  for (int b : beta) runners[b % d].push_back((b - b % d) / d);
  Multipartition mu;
  mu.components.resize(d);
  for (int r = 0; r < d; ++r) mu.components[r] = partition_from_beta(runners[r]);
  return mu;
}

bool is_regular_number_sn(int n, int d) {
  if (d < 1) return false;
  return n % d == 0 || (n - 1) % d == 0;
}

std::vector<Partition> part_n_d(int n, int d) {
  if (!is_regular_number_sn(n, d))
    throw InputError("part_n_d: d must divide n or n-1");
  const int j = (n % d == 0) ? 0 : 1;
  const Partition target = (j == 0) ? Partition{} : Partition{1};
  std::vector<Partition> out;
  for (const auto& lambda : partitions_of(n))
    if (d_core(lambda, d) == target) out.push_back(lambda);
  return out;
}

std::vector<Multipartition> multipartitions(int r, int d) {
  if (r < 0 || d < 1) throw InputError("multipartitions: need r >= 0, d >= 1");
  std::vector<Multipartition> out;
  Multipartition cur;
  cur.components.resize(d);
  auto rec = [&](auto&& self, int comp, int remaining) -> void {
    if (comp == d - 1) {
      cur.components[comp] = Partition{};
      for (const auto& p : partitions_of(remaining)) {
        cur.components[comp] = p;
        out.push_back(cur);
      }
      cur.components[comp].clear();
      return;
    }
    for (int s = 0; s <= remaining; ++s)
      for (const auto& p : partitions_of(s)) {
        cur.components[comp] = p;
        self(self, comp + 1, remaining - s);
      }
    cur.components[comp].clear();
  };
  rec(rec, 0, r);
  return out;
}

long long hook_dim(const Partition& p) {
  const int n = partition_size(p);
  if (n == 0) return 1;
  // Hook lengths: arm + leg + 1.
  std::vector<int> conj(p[0], 0);
  for (int part : p)
    for (int j = 0; j < part; ++j) ++conj[j];
  long long numer = 1;
  for (int i = 2; i <= n; ++i) numer *= i;
  long long denom = 1;
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    for (int j = 0; j < p[i]; ++j) {
      const int hook = (p[i] - j - 1) + (conj[j] - i - 1) + 1;
      denom *= hook;
    }
  if (numer % denom != 0) throw InternalError("hook_dim: non-integer dimension");
  return numer / denom;
}

long long multipartition_dim(const Multipartition& mu) {
  const int r = mu.total_size();
  long long dim = 1;
  long long numer = 1;
  for (int i = 2; i <= r; ++i) numer *= i;
  long long denom = 1;
  for (const auto& comp : mu.components) {
    const int s = partition_size(comp);
    for (int i = 2; i <= s; ++i) denom *= i;
    dim *= hook_dim(comp);
  }
  if (numer % denom != 0) throw InternalError("multipartition_dim: bad multinomial");
  return dim * (numer / denom);
}

std::vector<int> regular_wd(int n, int d) {
  if (!is_regular_number_sn(n, d))
    throw InputError("regular_wd: d must divide n or n-1");
  const int j = (n % d == 0) ? 0 : 1;
  const int r = (n - j) / d;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int a = 0; a < r; ++a)
    for (int t = 0; t < d; ++t) perm[a * d + t] = a * d + (t + 1) % d;
  return perm;
}

Partition cycle_type(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  Partition type;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, cur = i;
    while (!seen[cur]) {
      seen[cur] = true;
      cur = perm[cur];
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<int>());
  return type;
}

}  // namespace cmg::sn
