#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "lpa/numtheory.hpp"

using namespace lpa;

TEST_SUITE_BEGIN("numtheory");

TEST_CASE("the three printed examples") {
  PartitionData a = partition(3, 2);
  CHECK(a.s == 2);
  CHECK(a.sigma == std::vector<long>{1, 3, 2});
  CHECK(a.i_r == 1);
  CHECK(a.s1 == std::vector<long>{1});
  CHECK(a.s2 == std::vector<long>{2, 3});

  PartitionData b = partition(3, 3);
  CHECK(b.s == 1);
  CHECK(b.sigma == std::vector<long>{1, 2, 3});
  CHECK(b.i_r == 2);
  CHECK(b.s1 == std::vector<long>{1, 2});
  CHECK(b.s2 == std::vector<long>{3});

  PartitionData c = partition(13, 9);
  CHECK(c.s == 5);
  CHECK(c.sigma == std::vector<long>{1, 6, 11, 3, 8, 13, 5, 10, 2, 7, 12, 4, 9});
  CHECK(c.i_r == 5);
  CHECK(c.s1 == std::vector<long>{1, 3, 6, 8, 11});
  CHECK(c.sigma1 == std::vector<long>{1, 6, 11, 3, 8});
  CHECK(c.s2 == std::vector<long>{2, 4, 5, 7, 9, 10, 12, 13});
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(partition(3, 1), NumTheoryError);   // gcd(3,0) = 3
  CHECK_THROWS_AS(partition(4, 3), NumTheoryError);   // gcd(4,2) = 2
  CHECK_THROWS_AS(partition(3, 4), NumTheoryError);   // r out of range
  CHECK_NOTHROW(partition(1, 1));                     // gcd(1,0) = 1
}

TEST_CASE("inverse characterization of i_r") {
  CHECK(i_r_inverse_check(3, 2));
  CHECK(partition(3, 2).i_r == 1);
  CHECK(i_r_inverse_check(3, 3));
  CHECK(partition(3, 3).i_r == 2);
  CHECK(i_r_inverse_check(13, 9));
  CHECK(partition(13, 9).i_r == 5);
  CHECK((5 * 8) % 13 == 1);
}

TEST_CASE("invariants for every valid pair up to 200") {
  for (long d = 2; d <= 200; ++d) {
    std::set<std::vector<long>> firsts;
    for (long r = 2; r <= d; ++r) {
      if (std::gcd(d, r - 1) != 1) continue;
      PartitionData p = partition(d, r);
      // complete residue system
      std::set<long> values(p.sigma.begin(), p.sigma.end());
      CHECK(values.size() == static_cast<size_t>(d));
      CHECK(*values.begin() == 1);
      CHECK(*values.rbegin() == d);
      // d sits at the front of the second half
      REQUIRE(!p.sigma2.empty());
      CHECK(p.sigma2.front() == d);
      CHECK(std::binary_search(p.s2.begin(), p.s2.end(), d));
      CHECK(p.s1.front() == 1);
      CHECK(static_cast<long>(p.s1.size()) == p.i_r);
      CHECK(i_r_inverse_check(d, r));
      // distinct r give distinct partitions
      CHECK(firsts.insert(p.s1).second);
    }
  }
}

TEST_CASE("achievable partition counts equal Euler phi") {
  CHECK(count_achievable_partitions(3).count == 2);
  CHECK(count_achievable_partitions(4).count == 2);
  CHECK(count_achievable_partitions(13).count == 12);
  for (long d = 2; d <= 200; ++d) {
    auto c = count_achievable_partitions(d);
    CHECK(c.count == euler_phi(d));
    CHECK(c.has_singleton_front);
    CHECK(c.has_singleton_back);
    if (d >= 3) {
      // phi(d) < 2^(d-1) - 1: not every two-block partition arises
      if (d <= 60) {
        double bound = std::pow(2.0, d - 1) - 1;
        CHECK(static_cast<double>(c.count) < bound);
      }
    }
  }
  // the forbidden partition {1,3} | {2} never arises for d = 3
  auto c3 = count_achievable_partitions(3);
  for (const auto& [s1, s2] : c3.partitions)
    CHECK(!(s1 == std::vector<long>{1, 3} && s2 == std::vector<long>{2}));
}

TEST_CASE("extension mod d") {
  auto e = extend_partition(3, 2, 5);
  CHECK(e.q == 1);
  CHECK(e.s1 == std::vector<long>{1, 4});
  CHECK(e.s2 == std::vector<long>{2, 3, 5});
  CHECK(format_partition(e.s1, e.s2) == "{1,4} | {2,3,5}");

  auto e8 = extend_partition(3, 2, 8);
  CHECK(e8.s1 == std::vector<long>{1, 4, 7});
  CHECK(e8.s2 == std::vector<long>{2, 3, 5, 6, 8});

  // n = 7, d = 3 forces r = 1, which gcd rejects
  CHECK_THROWS_AS(extend_partition(3, 1, 7), NumTheoryError);
  // mismatched remainder
  CHECK_THROWS_AS(extend_partition(3, 2, 7), NumTheoryError);
}

TEST_SUITE_END();
