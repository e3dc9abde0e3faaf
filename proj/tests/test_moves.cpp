#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lpa/moves.hpp"
#include "test_support.hpp"

using namespace lpa;
namespace ts = lpa::testing;

namespace {

EdgePartition trivial_partition(const Graph& g, bool out) {
  EdgePartition p;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& edges = out ? g.out_edges(v) : g.in_edges(v);
    if (!edges.empty()) p[v] = {edges};
  }
  return p;
}

// Random valid out/in partition: shuffle the edge list, cut into 1-3 blocks.
EdgePartition random_partition(const Graph& g, bool out, std::mt19937_64& rng) {
  EdgePartition p;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> edges = out ? g.out_edges(v) : g.in_edges(v);
    if (edges.empty()) continue;
    std::shuffle(edges.begin(), edges.end(), rng);
    int max_blocks = static_cast<int>(edges.size());
    std::uniform_int_distribution<int> nb(1, std::min(3, max_blocks));
    int blocks = nb(rng);
    std::vector<std::vector<int>> bs(blocks);
    for (size_t i = 0; i < edges.size(); ++i)
      bs[i % blocks].push_back(edges[i]);
    p[v] = std::move(bs);
  }
  return p;
}

GroupingSpec natural_grouping(const Graph& base, const Graph& split,
                              const EdgePartition& p, bool out) {
  GroupingSpec groups;
  for (int v = 0; v < base.vertex_count(); ++v) {
    const auto& edges = out ? base.out_edges(v) : base.in_edges(v);
    if (edges.empty()) continue;
    size_t m = p.at(v).size();
    std::vector<std::string> parts;
    for (size_t i = 1; i <= m; ++i)
      parts.push_back(base.vertex_id(v) + "#" + std::to_string(i));
    for (const auto& part : parts) REQUIRE(split.has_vertex(part));
    groups.emplace_back(base.vertex_id(v), parts);
  }
  return groups;
}

MoveSpec spec_for_partition(const Graph& g, const EdgePartition& p, MoveKind kind) {
  MoveSpec m;
  m.kind = kind;
  for (const auto& [v, blocks] : p) {
    std::vector<std::vector<std::string>> named;
    for (const auto& b : blocks) {
      std::vector<std::string> ids;
      for (int e : b) ids.push_back(g.edge(e).id);
      named.push_back(ids);
    }
    m.partitions.emplace_back(g.vertex_id(v), named);
  }
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("moves");

TEST_CASE("trivial partitions reproduce the graph up to isomorphism") {
  for (const Graph& g : {ts::rose(2), ts::toeplitz(), ts::chain(3), ts::e2()}) {
    CHECK(isomorphic(out_split(g, trivial_partition(g, true)), g));
    CHECK(isomorphic(in_split(g, trivial_partition(g, false)), g));
  }
}

TEST_CASE("out-split of the two-petal rose is the two-vertex strip") {
  Graph r2 = ts::rose(2);
  EdgePartition p{{0, {{0}, {1}}}};
  Graph h = out_split(r2, p);
  CHECK(h.vertex_count() == 2);
  CHECK(h.edge_count() == 4);
  CHECK(isomorphic(h, ts::e2()));
}

TEST_CASE("in-split of the two-petal rose preserves the invariants") {
  Graph r2 = ts::rose(2);
  EdgePartition p{{0, {{0}, {1}}}};
  Graph h = in_split(r2, p);
  CHECK(h.vertex_count() == 2);
  CHECK(h.edge_count() == 4);
  auto m = spec_for_partition(r2, p, MoveKind::InSplit);
  auto rep = invariants_preserved(r2, m);
  CHECK(rep.preserved);
}

TEST_CASE("out-split leaves sinks alone") {
  Graph t = ts::toeplitz();
  EdgePartition p{{t.vertex_index("v"), {{0}, {1}}}};
  Graph h = out_split(t, p);
  CHECK(h.has_vertex("w"));
  CHECK(!h.has_vertex("w#1"));
}

TEST_CASE("invalid partitions are rejected") {
  Graph r2 = ts::rose(2);
  CHECK_THROWS_AS(out_split(r2, EdgePartition{{0, {{0}}}}), MoveError);
  CHECK_THROWS_AS(out_split(r2, EdgePartition{{0, {{0, 1}, {1}}}}), MoveError);
  CHECK_THROWS_AS(out_split(r2, EdgePartition{{0, {{0, 1}, {}}}}), MoveError);
  Graph t = ts::toeplitz();
  CHECK_THROWS_AS(out_split(t, EdgePartition{{t.vertex_index("w"), {{}}}}), MoveError);
}

TEST_CASE("expansion and contraction") {
  Graph r1 = ts::rose(1);
  Graph e = expand(r1, 0);
  CHECK(e.vertex_count() == 2);
  CHECK(e.edge_count() == 2);
  CHECK(cycles(e).size() == 1);
  auto rep = invariants_preserved(r1, MoveSpec{MoveKind::Expand, {}, {}, "v", ""});
  CHECK(rep.preserved);
  CHECK(rep.det_before == 0);

  // contract inverts expand exactly, ids included
  Graph a3 = ts::chain(3);
  Graph ea = expand(a3, 1);
  Graph back = contract(ea, ea.vertex_index("v2"), ea.edge_index("v2*f"));
  CHECK(back.to_text() == a3.to_text());

  Graph e2x = expand(ts::e2(), 0);
  CHECK(e2x.vertex_count() == 3);
  auto rep2 = invariants_preserved(ts::e2(), MoveSpec{MoveKind::Expand, {}, {}, "u", ""});
  CHECK(rep2.preserved);

  // pattern mismatches
  CHECK_THROWS_AS(contract(ts::rose(1), 0, 0), MoveError);       // loop
  CHECK_THROWS_AS(contract(ts::rose(2), 0, 0), MoveError);       // two out-edges
  Graph twoin = Graph::parse(
      "vertex a\nvertex b\nvertex c\nedge e a c\nedge f b c\n");
  CHECK_THROWS_AS(contract(twoin, 0, 0), MoveError);             // in-degree 2
}

TEST_CASE("source elimination") {
  Graph a2 = ts::chain(2);
  Graph h = source_eliminate(a2, 0);
  CHECK(h.vertex_count() == 1);
  CHECK(h.edge_count() == 0);

  // a source feeding the strip disappears without a trace
  Graph fed = Graph::parse(
      "vertex s\nvertex u\nvertex v\n"
      "edge x s u\n"
      "edge a u u\nedge b u v\nedge c v v\nedge d v u\n");
  Graph stripped = source_eliminate(fed, fed.vertex_index("s"));
  CHECK(isomorphic(stripped, ts::e2()));
  auto rep = invariants_preserved(fed, MoveSpec{MoveKind::SourceEliminate, {}, {}, "s", ""});
  CHECK(rep.preserved);

  CHECK_THROWS_AS(source_eliminate(ts::rose(1), 0), MoveError);
  CHECK_THROWS_AS(source_eliminate(Graph::parse("vertex v\n"), 0), MoveError);
}

TEST_CASE("amalgamations invert splits up to isomorphism") {
  std::mt19937_64 rng(1001);
  int done = 0;
  while (done < 40) {
    Graph g = ts::random_graph(rng, 1 + static_cast<int>(rng() % 5), 2);
    if (g.edge_count() == 0 || g.edge_count() > 10) continue;
    ++done;
    {
      EdgePartition p = random_partition(g, true, rng);
      if (!p.empty()) {
        Graph h = out_split(g, p);
        Graph back = out_amalgamate(h, natural_grouping(g, h, p, true));
        CHECK(isomorphic(back, g));
      }
    }
    {
      EdgePartition p = random_partition(g, false, rng);
      if (!p.empty()) {
        Graph h = in_split(g, p);
        Graph back = in_amalgamate(h, natural_grouping(g, h, p, false));
        CHECK(isomorphic(back, g));
      }
    }
  }
}

TEST_CASE("amalgamation witnesses are validated") {
  // grouping the two strip vertices does not match any out-split image:
  // copy counts into the merged parts disagree
  Graph t = ts::toeplitz();
  CHECK_THROWS_AS(out_amalgamate(t, {{"m", {"v", "w"}}}), MoveError);
  // an ungrouped non-sink is rejected
  Graph e2 = ts::e2();
  CHECK_THROWS_AS(out_amalgamate(e2, {{"m", {"u"}}}), MoveError);
  // grouping a vertex twice is rejected
  CHECK_THROWS_AS(out_amalgamate(e2, {{"m", {"u", "u"}}, {"k", {"v"}}}), MoveError);
}

TEST_CASE("every applied move preserves coker and det") {
  std::mt19937_64 rng(2002);
  int applied = 0;
  while (applied < 120) {
    Graph g = ts::random_graph(rng, 1 + static_cast<int>(rng() % 5), 2);
    if (g.edge_count() > 12) continue;
    std::vector<MoveSpec> candidates;
    {
      EdgePartition p = random_partition(g, true, rng);
      if (!p.empty()) candidates.push_back(spec_for_partition(g, p, MoveKind::OutSplit));
      EdgePartition q = random_partition(g, false, rng);
      if (!q.empty()) candidates.push_back(spec_for_partition(g, q, MoveKind::InSplit));
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      MoveSpec m;
      m.kind = MoveKind::Expand;
      m.vertex = g.vertex_id(v);
      candidates.push_back(m);
      if (g.is_source(v) && g.vertex_count() >= 2) {
        MoveSpec s;
        s.kind = MoveKind::SourceEliminate;
        s.vertex = g.vertex_id(v);
        candidates.push_back(s);
      }
    }
    for (const auto& m : candidates) {
      auto rep = invariants_preserved(g, m);
      CHECK(rep.group_equal);
      CHECK(rep.det_equal);
      ++applied;
    }
  }
}

TEST_CASE("move scripts parse, format, and apply") {
  MoveSpec m = parse_move("outsplit v {e1,e2|e3}");
  CHECK(m.kind == MoveKind::OutSplit);
  REQUIRE(m.partitions.size() == 1);
  CHECK(m.partitions[0].first == "v");
  CHECK(m.partitions[0].second == std::vector<std::vector<std::string>>{{"e1", "e2"}, {"e3"}});
  CHECK(format_move(m) == "outsplit v {e1,e2|e3}");

  CHECK(parse_move("expand v").kind == MoveKind::Expand);
  CHECK(parse_move("contract v f").edge == "f");
  CHECK(parse_move("eliminate s").kind == MoveKind::SourceEliminate);
  CHECK(parse_move("outamalgamate v {v#1|v#2}").groups.size() == 1);
  CHECK_THROWS_AS(parse_move("frobnicate v"), MoveError);
  CHECK_THROWS_AS(parse_move("outsplit v e1|e2"), MoveError);

  Graph r2 = ts::rose(2);
  Graph h = apply_move(r2, parse_move("outsplit v {e1|e2}"));
  CHECK(isomorphic(h, ts::e2()));

  auto script = parse_move_script("# do both\noutsplit v {e1|e2}\n\nexpand v#1\n");
  REQUIRE(script.size() == 2);
  Graph cur = r2;
  for (const auto& s : script) cur = apply_move(cur, s);
  CHECK(cur.vertex_count() == 3);
}

TEST_CASE("canonical form and isomorphism") {
  Graph a = Graph::parse("vertex x\nvertex y\nedge e x y\n");
  Graph b = Graph::parse("vertex p\nvertex q\nedge z q p\n");
  CHECK(isomorphic(a, b));
  CHECK(!isomorphic(a, ts::chain(3)));
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK_THROWS_AS(canonical_form(ts::chain(9)), MoveError);

  Graph om1 = Graph::parse("vertex a\nvertex b\nomega a b\n");
  Graph om2 = Graph::parse("vertex c\nvertex d\nomega d c\n");
  CHECK(isomorphic(om1, om2));
  Graph om3 = Graph::parse("vertex a\nvertex b\nomega a a\n");
  CHECK(!isomorphic(om1, om3));
}

TEST_CASE("move search finds one-step witnesses") {
  Graph r2 = ts::rose(2);
  Graph target = expand(r2, 0);
  auto res = move_search(r2, target, 1);
  REQUIRE(res.found);
  REQUIRE(res.sequence.size() == 1);
  CHECK(res.sequence[0].kind == MoveKind::Expand);
  // replay
  Graph replay = apply_move(r2, res.sequence[0]);
  CHECK(isomorphic(replay, target));

  Graph split_target = out_split(r2, EdgePartition{{0, {{0}, {1}}}});
  auto res2 = move_search(r2, split_target, 1);
  REQUIRE(res2.found);
  Graph replay2 = r2;
  for (const auto& m : res2.sequence) replay2 = apply_move(replay2, m);
  CHECK(isomorphic(replay2, split_target));

  auto self = move_search(r2, ts::rose(2), 1);
  CHECK(self.found);
  CHECK(self.sequence.empty());
}

TEST_CASE("move search short-circuits on invariants and reports honestly") {
  auto res = move_search(ts::e2(), ts::e4(), 3);
  CHECK(!res.found);
  CHECK(res.reason.find("invariants differ") != std::string::npos);

  // equal invariants but not reachable in zero moves and depth 0
  Graph r2 = ts::rose(2);
  auto res0 = move_search(r2, expand(r2, 0), 0);
  CHECK(!res0.found);
  CHECK(res0.reason.find("within depth") != std::string::npos);
}

TEST_CASE("move search replays deterministically") {
  Graph r2 = ts::rose(2);
  Graph target = expand(out_split(r2, EdgePartition{{0, {{0}, {1}}}}), 0);
  auto a = move_search(r2, target, 2);
  auto b = move_search(r2, target, 2);
  REQUIRE(a.found);
  REQUIRE(b.found);
  REQUIRE(a.sequence.size() == b.sequence.size());
  for (size_t i = 0; i < a.sequence.size(); ++i)
    CHECK(format_move(a.sequence[i]) == format_move(b.sequence[i]));
  Graph replay = r2;
  for (const auto& m : a.sequence) replay = apply_move(replay, m);
  CHECK(isomorphic(replay, target));
}

TEST_SUITE_END();
