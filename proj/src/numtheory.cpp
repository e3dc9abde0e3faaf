#include "lpa/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace lpa {

namespace {

long mod_into(long x, long d) {
  long r = x % d;
  return r <= 0 ? r + d : r;  // residues in {1..d}, 0 read as d
}

}  // namespace

PartitionData partition(long d, long r) {
  if (d < 1 || r < 1 || r > d)
    throw NumTheoryError("partition: need 1 <= r <= d");
  if (std::gcd(d, r - 1) != 1)
    throw NumTheoryError("partition: gcd(d, r-1) = " +
                         std::to_string(std::gcd(d, r - 1)) + " != 1");
  PartitionData p;
  p.d = d;
  p.r = r;
  p.s = d - (r - 1);
  for (long i = 0; i < d; ++i) p.sigma.push_back(mod_into(1 + i * p.s, d));
  // first index where the value r-1 appears (mod d, 0 as d)
  long want = mod_into(r - 1, d);
  for (long i = 0; i < d; ++i)
    if (p.sigma[i] == want) {
      p.i_r = i + 1;
      break;
    }
  p.sigma1.assign(p.sigma.begin(), p.sigma.begin() + p.i_r);
  p.sigma2.assign(p.sigma.begin() + p.i_r, p.sigma.end());
  p.s1 = p.sigma1;
  p.s2 = p.sigma2;
  std::sort(p.s1.begin(), p.s1.end());
  std::sort(p.s2.begin(), p.s2.end());
  return p;
}

bool i_r_inverse_check(long d, long r) {
  PartitionData p = partition(d, r);
  return mod_into(p.i_r * (r - 1), d) == mod_into(1, d);
}

ExtendedPartition extend_partition(long d, long r, long n) {
  if (n < 1 || d < 1) throw NumTheoryError("extend_partition: need positive n, d");
  if (mod_into(n, d) != r || r < 1 || r > d)
    throw NumTheoryError("extend_partition: n = q*d + r violated");
  if (std::gcd(d, n - 1) != 1)
    throw NumTheoryError("extend_partition: gcd(d, n-1) != 1");
  PartitionData base = partition(d, r);
  ExtendedPartition e;
  e.n = n;
  e.d = d;
  e.r = r;
  e.q = (n - r) / d;
  std::set<long> s1(base.s1.begin(), base.s1.end());
  for (long k = 1; k <= n; ++k) {
    if (s1.count(mod_into(k, d)))
      e.s1.push_back(k);
    else
      e.s2.push_back(k);
  }
  return e;
}

long euler_phi(long d) {
  long phi = 0;
  for (long k = 1; k <= d; ++k)
    if (std::gcd(k, d) == 1) ++phi;
  return phi;
}

PartitionCount count_achievable_partitions(long d) {
  if (d < 2) throw NumTheoryError("count_achievable_partitions: need d >= 2");
  PartitionCount out;
  std::set<std::pair<std::vector<long>, std::vector<long>>> seen;
  // r and r + d give the same residue; scanning 2..d+1 normalized into {1..d}
  // covers every coprime remainder once.
  for (long raw = 2; raw <= d + 1; ++raw) {
    long r = mod_into(raw, d);
    if (std::gcd(d, r - 1) != 1) continue;
    PartitionData p = partition(d, r);
    seen.insert({p.s1, p.s2});
  }
  out.partitions.assign(seen.begin(), seen.end());
  out.count = static_cast<long>(seen.size());
  std::vector<long> front{1}, front_rest, back, back_last{d};
  for (long k = 2; k <= d; ++k) front_rest.push_back(k);
  for (long k = 1; k <= d - 1; ++k) back.push_back(k);
  out.has_singleton_front = seen.count({front, front_rest}) > 0;
  out.has_singleton_back = seen.count({back, back_last}) > 0;
  return out;
}

std::string format_partition(const std::vector<long>& s1, const std::vector<long>& s2) {
  auto one = [](const std::vector<long>& s) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < s.size(); ++i) {
      if (i) os << ",";
      os << s[i];
    }
    os << "}";
    return os.str();
  };
  return one(s1) + " | " + one(s2);
}

}  // namespace lpa
