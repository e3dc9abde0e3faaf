#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "lpa/classify.hpp"
#include "lpa/report.hpp"
#include "lpa/symbolic.hpp"
#include "test_support.hpp"

using namespace lpa;
namespace ts = lpa::testing;

namespace {

using E = RatElement;

Path random_path(const Graph& g, std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> pick_v(0, g.vertex_count() - 1);
  Path p{pick_v(rng), {}};
  std::uniform_int_distribution<int> pick_len(0, max_len);
  int len = pick_len(rng);
  int at = p.base;
  for (int i = 0; i < len; ++i) {
    const auto& out = g.out_edges(at);
    if (out.empty()) break;
    std::uniform_int_distribution<size_t> pick_e(0, out.size() - 1);
    int e = out[pick_e(rng)];
    p.edges.push_back(e);
    at = g.edge(e).dst;
  }
  return p;
}

E random_element(const Graph& g, std::mt19937_64& rng, int terms) {
  E x = E::zero(g);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < terms; ++t) {
    Path a = random_path(g, rng, 2);
    // beta must share the range vertex
    for (int tries = 0; tries < 40; ++tries) {
      Path b = random_path(g, rng, 2);
      if (path_range(g, b) == path_range(g, a)) {
        x += Rat(coef(rng)) * E::monomial(g, a, b);
        break;
      }
    }
  }
  return x;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_SUITE_BEGIN("symbolic");

TEST_CASE("ghost against real contraction") {
  Graph t = ts::toeplitz();
  int e = t.edge_index("e"), f = t.edge_index("f");
  E ghost_e = E::ghost_path(t, Path{t.vertex_index("v"), {e}});
  E real_f = E::real_path(t, Path{t.vertex_index("v"), {f}});
  CHECK((ghost_e * real_f).is_zero());

  // alpha* alpha = r(alpha) on random paths in random graphs
  std::mt19937_64 rng(31415);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = ts::random_graph(rng, 1 + static_cast<int>(rng() % 4), 2);
    Path a = random_path(g, rng, 4);
    E ra = E::real_path(g, a);
    CHECK(ra.star() * ra == E::vertex(g, path_range(g, a)));
  }
}

TEST_CASE("CK2 normal form") {
  Graph r2 = ts::rose(2);
  // e1 e1* + e2 e2* collapses to the vertex
  E sum = E::monomial(r2, Path{0, {0}}, Path{0, {0}}) +
          E::monomial(r2, Path{0, {1}}, Path{0, {1}});
  CHECK(sum == E::vertex(r2, 0));
  CHECK(sum.term_count() == 1);

  // v - sum of ee* is zero at a regular vertex
  E zero = E::vertex(r2, 0) - sum;
  CHECK(zero.is_zero());

  // x = v - e1 e1* is an idempotent when v emits two edges
  E x = E::vertex(r2, 0) - E::monomial(r2, Path{0, {0}}, Path{0, {0}});
  CHECK(x * x == x);

  // already-normal monomials stay put
  E m = E::monomial(r2, Path{0, {0}}, Path{0, {1}});
  CHECK(m.term_count() == 1);
  CHECK(m.to_string() == "e1.e2*");
}

TEST_CASE("unit and multiplication in the Laurent graph") {
  Graph r1 = ts::rose(1);
  E u = E::unit(r1);
  E x = E::real_path(r1, Path{0, {0}});
  E xinv = x.star();
  CHECK(x * xinv == u);  // ee* = v by CK2 (single edge)
  CHECK(xinv * x == u);
  E x3 = x * x * x;
  CHECK(x3.term_count() == 1);
  CHECK((x3 * xinv.star().star()) == (x * x * x * xinv));
}

TEST_CASE("associativity and distributivity on random triples") {
  std::mt19937_64 rng(2718);
  std::vector<Graph> graphs{ts::rose(2), ts::chain(3), ts::toeplitz()};
  for (const Graph& g : graphs) {
    for (int trial = 0; trial < 40; ++trial) {
      E a = random_element(g, rng, 3);
      E b = random_element(g, rng, 3);
      E c = random_element(g, rng, 3);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + b) * c == a * c + b * c);
    }
  }
}

TEST_CASE("star is an anti-automorphism of order two") {
  std::mt19937_64 rng(1618);
  for (const Graph& g : {ts::rose(2), ts::toeplitz(), ts::chain(3)}) {
    for (int trial = 0; trial < 40; ++trial) {
      E a = random_element(g, rng, 3);
      E b = random_element(g, rng, 3);
      CHECK(a.star().star() == a);
      CHECK((a * b).star() == b.star() * a.star());
      CHECK((a + b).star() == a.star() + b.star());
    }
  }
}

TEST_CASE("rewrite order does not change the normal form") {
  std::mt19937_64 rng(97);
  Graph r3 = ts::rose(3);
  for (int trial = 0; trial < 1000; ++trial) {
    // raw redex-heavy terms, added in random order
    std::vector<std::pair<Monomial, Rat>> raw;
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int t = 0; t < 5; ++t) {
      Path a{0, {pick(rng), pick(rng)}};
      Path b{0, {pick(rng), pick(rng)}};
      raw.emplace_back(Monomial{a, b}, Rat(coef(rng)));
    }
    E first = E::zero(r3);
    for (const auto& [m, c] : raw) first.add_term(m, c);
    std::shuffle(raw.begin(), raw.end(), rng);
    E second = E::zero(r3);
    for (const auto& [m, c] : raw) second.add_term(m, c);
    CHECK(first == second);
  }
}

TEST_CASE("normal form of normal form is the identity") {
  std::mt19937_64 rng(64);
  Graph r2 = ts::rose(2);
  for (int trial = 0; trial < 50; ++trial) {
    E a = random_element(r2, rng, 4);
    E again = E::zero(r2);
    for (const auto& [m, c] : a.terms()) again.add_term(m, c);
    CHECK(again == a);
  }
}

TEST_CASE("normal basis counts match the acyclic structure") {
  std::mt19937_64 rng(55);
  int done = 0;
  while (done < 20) {
    Graph g = ts::random_graph(rng, 1 + static_cast<int>(rng() % 5), 2);
    if (!is_acyclic(g)) continue;
    ++done;
    auto ns = acyclic_structure(g);
    long want = 0;
    for (long n : ns) want += n * n;
    CHECK(static_cast<long>(normal_basis(g).size()) == want);
  }
  CHECK_THROWS_AS(normal_basis(ts::rose(1)), SymbolicError);
}

TEST_CASE("element parsing") {
  Graph r2 = ts::rose(2);
  CHECK(parse_element<Rat>(r2, "0").is_zero());
  CHECK(parse_element<Rat>(r2, "1") == E::unit(r2));
  CHECK(parse_element<Rat>(r2, "v") == E::vertex(r2, 0));
  CHECK(parse_element<Rat>(r2, "3*e1.e2*").to_string() == "3*e1.e2*");
  CHECK(parse_element<Rat>(r2, "e1*.e1") == E::vertex(r2, 0));
  CHECK(parse_element<Rat>(r2, "v - e1.e1*") ==
        E::vertex(r2, 0) - E::monomial(r2, Path{0, {0}}, Path{0, {0}}));
  CHECK(parse_element<Rat>(r2, "1/2*e1 + 1/2*e1") == E::real_path(r2, Path{0, {0}}));
  CHECK_THROWS_AS(parse_element<Rat>(r2, "nope"), SymbolicError);

  // prime field coefficients wrap around
  auto two = parse_element<PrimeField<2>>(r2, "2*e1");
  CHECK(two.is_zero());
}

TEST_CASE("prime field elements") {
  Graph r2 = ts::rose(2);
  using E2 = LpaElement<PrimeField<2>>;
  E2 x = E2::monomial(r2, Path{0, {0}}, Path{0, {0}});
  CHECK((x + x).is_zero());
  E2 u = E2::unit(r2);
  CHECK(x * u == x);
  CHECK(u.star() == u);
}

TEST_CASE("matrices over elements") {
  Graph r2 = ts::rose(2);
  auto id = LpaMatrix<Rat>::identity(r2, 2);
  CHECK(id * id == id);
  LpaMatrix<Rat> m(r2, 2);
  m.at(0, 1) = E::real_path(r2, Path{0, {0}});
  auto prod = m * m;
  CHECK(prod.at(0, 1).is_zero());

  // one-petal-per-slot witness over the rose: x = (e1 ... en), y = x*
  for (int n = 2; n <= 4; ++n) {
    Graph rn = ts::rose(n);
    std::vector<LpaMatrix<Rat>> xs, ys;
    for (int i = 0; i < n; ++i) {
      LpaMatrix<Rat> x(rn, 1);
      x.at(0, 0) = E::real_path(rn, Path{0, {i}});
      LpaMatrix<Rat> y(rn, 1);
      y.at(0, 0) = E::ghost_path(rn, Path{0, {i}});
      xs.push_back(x);
      ys.push_back(y);
    }
    auto rep = verify_dagger(xs, ys);
    CHECK(rep.ok);
    CHECK(rep.checks == n * n + 1);
  }
}

TEST_CASE("both printed generator sets satisfy the dagger relations") {
  for (const char* name : {"dagger_set1_d3_n5.json", "dagger_set2_d3_n5.json"}) {
    auto rep = dagger_report(slurp(ts::fixture_path(name)));
    INFO(name);
    CHECK(rep.at("ok").get<bool>());
    CHECK(rep.at("checks").get<int>() == 26);
    CHECK(rep.at("failures").get<int>() == 0);
  }
}

TEST_CASE("a perturbed set fails with a witness") {
  Json fixture = Json::parse(slurp(ts::fixture_path("dagger_set1_d3_n5.json")));
  fixture["y"][0][0][0] = "e2*";  // breaks y1 x1 = 1
  auto rep = dagger_report(fixture.dump());
  CHECK(!rep.at("ok").get<bool>());
  CHECK(rep.at("failures").get<int>() > 0);
  CHECK(rep.contains("first_failure"));
}

TEST_SUITE_END();
