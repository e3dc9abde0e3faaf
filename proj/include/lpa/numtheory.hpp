// The residue sequences behind the explicit matrix-ring isomorphisms over
// the Leavitt algebras: for gcd(d, r-1) = 1 the sequence 1, 1+s, 1+2s, ...
// (s = d-(r-1), taken mod d with 0 read as d) is a complete residue system;
// cutting it where the value r-1 appears partitions {1..d} into S1 and S2.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lpa {

class NumTheoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PartitionData {
  long d = 0, r = 0, s = 0, i_r = 0;
  std::vector<long> sigma;           // length d, complete residues in {1..d}
  std::vector<long> sigma1, sigma2;  // prefix of length i_r, and the rest
  std::vector<long> s1, s2;          // the same values as sorted sets
};

// Requires 1 <= r <= d and gcd(d, r-1) = 1 (r = 1 only for d = 1).
PartitionData partition(long d, long r);

// i_r * (r-1) == 1 mod d.
bool i_r_inverse_check(long d, long r);

struct ExtendedPartition {
  long n = 0, d = 0, r = 0, q = 0;
  std::vector<long> s1, s2;  // partition of {1..n}, extended mod d
};

// Requires n = q*d + r with 1 <= r <= d and gcd(d, n-1) = 1.
ExtendedPartition extend_partition(long d, long r, long n);

long euler_phi(long d);

struct PartitionCount {
  long count = 0;  // distinct partitions over valid r; equals phi(d)
  bool has_singleton_front = false;  // {1} | {2..d}
  bool has_singleton_back = false;   // {1..d-1} | {d}
  std::vector<std::pair<std::vector<long>, std::vector<long>>> partitions;
};

// Enumerates valid r, builds the partitions, deduplicates.
PartitionCount count_achievable_partitions(long d);

std::string format_partition(const std::vector<long>& s1, const std::vector<long>& s2);

}  // namespace lpa
