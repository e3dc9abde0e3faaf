#include "lpa/moves.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace lpa {

namespace {

void require_plain(const Graph& g, const char* what) {
  if (!g.row_finite())
    throw MoveError(std::string(what) + ": omega bundles not supported");
}

std::array<std::string, 3> edge_triple(const Graph& g, const Edge& e) {
  return {e.id, g.vertex_id(e.src), g.vertex_id(e.dst)};
}

// Resolve a PartitionSpec against the graph and fill in trivial partitions
// for unmentioned vertices. `out` selects s^-1 (true) or r^-1 (false).
EdgePartition resolve_partition(const Graph& g, const PartitionSpec& spec, bool out) {
  EdgePartition p;
  for (const auto& [vid, blocks] : spec) {
    int v = g.vertex_index(vid);
    if (p.count(v)) throw MoveError("partition names vertex '" + vid + "' twice");
    std::vector<std::vector<int>> ib;
    for (const auto& blk : blocks) {
      std::vector<int> b;
      for (const auto& eid : blk) b.push_back(g.edge_index(eid));
      ib.push_back(std::move(b));
    }
    p[v] = std::move(ib);
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& edges = out ? g.out_edges(v) : g.in_edges(v);
    if (edges.empty()) {
      if (p.count(v)) throw MoveError("partition at vertex '" + g.vertex_id(v) +
                                      "' with no edges to partition");
      continue;
    }
    if (!p.count(v)) p[v] = {edges};  // trivial one-block partition
  }
  return p;
}

void validate_partition(const Graph& g, const EdgePartition& p, bool out) {
  for (const auto& [v, blocks] : p) {
    const auto& edges = out ? g.out_edges(v) : g.in_edges(v);
    std::set<int> want(edges.begin(), edges.end());
    std::set<int> got;
    if (blocks.empty()) throw MoveError("empty partition at '" + g.vertex_id(v) + "'");
    for (const auto& b : blocks) {
      if (b.empty())
        throw MoveError("empty partition block at '" + g.vertex_id(v) + "'");
      for (int e : b)
        if (!got.insert(e).second)
          throw MoveError("edge '" + g.edge(e).id + "' appears in two blocks");
    }
    if (got != want)
      throw MoveError("partition at '" + g.vertex_id(v) +
                      "' does not cover exactly its edge set");
  }
}

std::string part_name(const std::string& base, int i) {
  return base + "#" + std::to_string(i + 1);
}

}  // namespace

Graph out_split(const Graph& g, const EdgePartition& p) {
  require_plain(g, "out_split");
  validate_partition(g, p, true);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v) && !p.count(v))
      throw MoveError("out_split: missing partition at '" + g.vertex_id(v) + "'");

  // block index of each edge at its source
  std::vector<int> block_of(g.edge_count(), -1);
  for (const auto& [v, blocks] : p)
    for (size_t i = 0; i < blocks.size(); ++i)
      for (int e : blocks[i]) block_of[e] = static_cast<int>(i);

  std::vector<std::string> vertices;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) {
      vertices.push_back(g.vertex_id(v));
    } else {
      int m = static_cast<int>(p.at(v).size());
      for (int i = 0; i < m; ++i) vertices.push_back(part_name(g.vertex_id(v), i));
    }
  }
  std::vector<std::array<std::string, 3>> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    std::string src = part_name(g.vertex_id(ed.src), block_of[e]);
    if (g.is_sink(ed.dst)) {
      edges.push_back({ed.id, src, g.vertex_id(ed.dst)});
    } else {
      int m = static_cast<int>(p.at(ed.dst).size());
      for (int j = 0; j < m; ++j)
        edges.push_back({ed.id + "#" + std::to_string(j + 1), src,
                         part_name(g.vertex_id(ed.dst), j)});
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

Graph in_split(const Graph& g, const EdgePartition& p) {
  require_plain(g, "in_split");
  validate_partition(g, p, false);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!g.in_edges(v).empty() && !p.count(v))
      throw MoveError("in_split: missing partition at '" + g.vertex_id(v) + "'");

  std::vector<int> block_of(g.edge_count(), -1);
  for (const auto& [v, blocks] : p)
    for (size_t i = 0; i < blocks.size(); ++i)
      for (int e : blocks[i]) block_of[e] = static_cast<int>(i);

  auto is_split = [&](int v) { return !g.in_edges(v).empty(); };
  std::vector<std::string> vertices;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!is_split(v)) {
      vertices.push_back(g.vertex_id(v));  // sources keep their name
    } else {
      int m = static_cast<int>(p.at(v).size());
      for (int i = 0; i < m; ++i) vertices.push_back(part_name(g.vertex_id(v), i));
    }
  }
  std::vector<std::array<std::string, 3>> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    std::string dst = part_name(g.vertex_id(ed.dst), block_of[e]);
    if (!is_split(ed.src)) {
      edges.push_back({ed.id, g.vertex_id(ed.src), dst});
    } else {
      int m = static_cast<int>(p.at(ed.src).size());
      for (int j = 0; j < m; ++j)
        edges.push_back({ed.id + "#" + std::to_string(j + 1),
                         part_name(g.vertex_id(ed.src), j), dst});
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

namespace {

// Strip a trailing "#<digits>" copy suffix.
std::string strip_copy_suffix(const std::string& id) {
  auto pos = id.rfind('#');
  if (pos == std::string::npos || pos + 1 >= id.size()) return id;
  for (size_t i = pos + 1; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return id;
  return id.substr(0, pos);
}

struct GroupingIndex {
  std::vector<std::string> bases;                 // new vertex ids, in order
  std::vector<std::vector<int>> parts;            // split-graph vertex indices
  std::vector<int> group_of;                      // h-vertex -> group, -1 loose
  std::vector<int> index_in_group;                // h-vertex -> part index
};

GroupingIndex index_grouping(const Graph& h, const GroupingSpec& groups) {
  GroupingIndex gi;
  gi.group_of.assign(h.vertex_count(), -1);
  gi.index_in_group.assign(h.vertex_count(), -1);
  for (const auto& [base, parts] : groups) {
    if (parts.empty()) throw MoveError("empty amalgamation group '" + base + "'");
    std::vector<int> idx;
    for (size_t i = 0; i < parts.size(); ++i) {
      int v = h.vertex_index(parts[i]);
      if (gi.group_of[v] >= 0)
        throw MoveError("vertex '" + parts[i] + "' grouped twice");
      gi.group_of[v] = static_cast<int>(gi.bases.size());
      gi.index_in_group[v] = static_cast<int>(i);
      idx.push_back(v);
    }
    gi.bases.push_back(base);
    gi.parts.push_back(std::move(idx));
  }
  return gi;
}

// Deterministic fresh edge names for reconstructed parallels.
class EdgeNamer {
 public:
  std::string claim(std::string base) {
    while (!used_.insert(base).second) base += "'";
    return base;
  }

 private:
  std::set<std::string> used_;
};

}  // namespace

Graph out_amalgamate(const Graph& h, const GroupingSpec& groups) {
  require_plain(h, "out_amalgamate");
  GroupingIndex gi = index_grouping(h, groups);

  // Loose vertices must be sinks (they were never split).
  for (int v = 0; v < h.vertex_count(); ++v)
    if (gi.group_of[v] < 0 && !h.is_sink(v))
      throw MoveError("ungrouped vertex '" + h.vertex_id(v) + "' is not a sink");

  // Base vertex list: groups in given order, then loose sinks in h order.
  std::vector<std::string> vertices = gi.bases;
  std::vector<int> loose;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (gi.group_of[v] < 0) {
      vertices.push_back(h.vertex_id(v));
      loose.push_back(v);
    }

  std::vector<std::array<std::string, 3>> edges;
  EdgeNamer namer;
  EdgePartition partition;  // witness for the verification re-split

  // Edges into loose sinks: unsplit originals, keep ids.
  // Edges into grouped targets: copies e#j, one per target part, sharing a
  // source part; counts must agree across target parts.
  for (size_t tg = 0; tg < gi.parts.size(); ++tg) {
    const auto& tparts = gi.parts[tg];
    const int m = static_cast<int>(tparts.size());
    // count h-edges source-vertex -> each target part
    std::map<int, std::vector<std::vector<int>>> by_source;  // src -> per-part lists
    for (int j = 0; j < m; ++j)
      for (int e : h.in_edges(tparts[j])) {
        auto& lists = by_source[h.edge(e).src];
        lists.resize(m);
        lists[j].push_back(e);
      }
    for (auto& [src, lists] : by_source) {
      lists.resize(m);
      size_t c = lists[0].size();
      for (int j = 1; j < m; ++j)
        if (lists[j].size() != c)
          throw MoveError("amalgamation witness mismatch: copy counts into parts of '" +
                          gi.bases[tg] + "' differ");
      if (gi.group_of[src] < 0)
        throw MoveError("edge from ungrouped sink '" + h.vertex_id(src) + "'");
      int sg = gi.group_of[src];
      int block = gi.index_in_group[src];
      for (size_t t = 0; t < c; ++t) {
        // Re-pair the t-th copies; structurally any pairing is equivalent.
        std::string base_id = strip_copy_suffix(h.edge(lists[0][t]).id);
        std::string id = namer.claim(base_id);
        edges.push_back({id, gi.bases[sg], gi.bases[tg]});
        auto& blocks = partition[sg];
        blocks.resize(std::max<size_t>(blocks.size(), gi.parts[sg].size()));
        blocks[block].push_back(static_cast<int>(edges.size()) - 1);
      }
    }
  }
  for (int w : loose) {
    for (int e : h.in_edges(w)) {
      int src = h.edge(e).src;
      if (gi.group_of[src] < 0)
        throw MoveError("edge from ungrouped sink '" + h.vertex_id(src) + "'");
      int sg = gi.group_of[src];
      int block = gi.index_in_group[src];
      std::string id = namer.claim(h.edge(e).id);
      edges.push_back({id, gi.bases[sg], h.vertex_id(w)});
      auto& blocks = partition[sg];
      blocks.resize(std::max<size_t>(blocks.size(), gi.parts[sg].size()));
      blocks[block].push_back(static_cast<int>(edges.size()) - 1);
    }
  }
  // Grouped vertices whose parts are all sinks in h would have no blocks; the
  // out-split definition splits only vertices with outgoing edges.
  for (size_t sg = 0; sg < gi.parts.size(); ++sg) {
    bool any_out = false;
    for (int part : gi.parts[sg])
      if (!h.out_edges(part).empty()) any_out = true;
    if (!any_out && gi.parts[sg].size() > 1)
      throw MoveError("sink '" + gi.bases[sg] + "' cannot be a split image with " +
                      std::to_string(gi.parts[sg].size()) + " parts");
  }

  Graph base(std::move(vertices), std::move(edges));
  // Witness check: re-splitting must reproduce h up to isomorphism.
  EdgePartition index_partition;
  for (auto& [sg, blocks] : partition) {
    for (auto& b : blocks)
      if (b.empty())
        throw MoveError("amalgamation witness leaves an empty block at '" +
                        gi.bases[sg] + "'");
    index_partition[base.vertex_index(gi.bases[sg])] = blocks;
  }
  Graph resplit = out_split(base, index_partition);
  if (!isomorphic(resplit, h))
    throw MoveError("amalgamation witness check failed: re-split is not isomorphic");
  return base;
}

Graph in_amalgamate(const Graph& h, const GroupingSpec& groups) {
  require_plain(h, "in_amalgamate");
  GroupingIndex gi = index_grouping(h, groups);
  for (int v = 0; v < h.vertex_count(); ++v)
    if (gi.group_of[v] < 0 && !h.is_source(v))
      throw MoveError("ungrouped vertex '" + h.vertex_id(v) + "' is not a source");

  std::vector<std::string> vertices = gi.bases;
  std::vector<int> loose;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (gi.group_of[v] < 0) {
      vertices.push_back(h.vertex_id(v));
      loose.push_back(v);
    }

  std::vector<std::array<std::string, 3>> edges;
  EdgeNamer namer;
  EdgePartition partition;  // blocks at target vertices of the base graph

  for (size_t sg = 0; sg < gi.parts.size(); ++sg) {
    const auto& sparts = gi.parts[sg];
    const int m = static_cast<int>(sparts.size());
    std::map<int, std::vector<std::vector<int>>> by_target;  // dst -> per-part lists
    for (int j = 0; j < m; ++j)
      for (int e : h.out_edges(sparts[j])) {
        auto& lists = by_target[h.edge(e).dst];
        lists.resize(m);
        lists[j].push_back(e);
      }
    for (auto& [dst, lists] : by_target) {
      lists.resize(m);
      size_t c = lists[0].size();
      for (int j = 1; j < m; ++j)
        if (lists[j].size() != c)
          throw MoveError("amalgamation witness mismatch: copy counts out of parts of '" +
                          gi.bases[sg] + "' differ");
      if (gi.group_of[dst] < 0)
        throw MoveError("edge into ungrouped source '" + h.vertex_id(dst) + "'");
      int tg = gi.group_of[dst];
      int block = gi.index_in_group[dst];
      for (size_t t = 0; t < c; ++t) {
        std::string id = namer.claim(strip_copy_suffix(h.edge(lists[0][t]).id));
        edges.push_back({id, gi.bases[sg], gi.bases[tg]});
        auto& blocks = partition[tg];
        blocks.resize(std::max<size_t>(blocks.size(), gi.parts[tg].size()));
        blocks[block].push_back(static_cast<int>(edges.size()) - 1);
      }
    }
  }
  for (int v : loose) {
    for (int e : h.out_edges(v)) {
      int dst = h.edge(e).dst;
      if (gi.group_of[dst] < 0)
        throw MoveError("edge into ungrouped source '" + h.vertex_id(dst) + "'");
      int tg = gi.group_of[dst];
      int block = gi.index_in_group[dst];
      std::string id = namer.claim(h.edge(e).id);
      edges.push_back({id, h.vertex_id(v), gi.bases[tg]});
      auto& blocks = partition[tg];
      blocks.resize(std::max<size_t>(blocks.size(), gi.parts[tg].size()));
      blocks[block].push_back(static_cast<int>(edges.size()) - 1);
    }
  }

  Graph base(std::move(vertices), std::move(edges));
  EdgePartition index_partition;
  for (auto& [tg, blocks] : partition) {
    for (auto& b : blocks)
      if (b.empty())
        throw MoveError("amalgamation witness leaves an empty block at '" +
                        gi.bases[tg] + "'");
    index_partition[base.vertex_index(gi.bases[tg])] = blocks;
  }
  Graph resplit = in_split(base, index_partition);
  if (!isomorphic(resplit, h))
    throw MoveError("amalgamation witness check failed: re-split is not isomorphic");
  return base;
}

Graph expand(const Graph& g, int v) {
  require_plain(g, "expand");
  if (v < 0 || v >= g.vertex_count()) throw MoveError("expand: unknown vertex");
  auto fresh_vertex = [&](std::string base) {
    while (g.has_vertex(base)) base += "'";
    return base;
  };
  std::string vstar = fresh_vertex(g.vertex_id(v) + "*");
  auto fresh_edge = [&](std::string base) {
    while (g.has_edge_id(base)) base += "'";
    return base;
  };
  std::string f = fresh_edge(g.vertex_id(v) + "*f");

  std::vector<std::string> vertices = g.vertex_ids();
  vertices.push_back(vstar);
  std::vector<std::array<std::string, 3>> edges;
  for (const Edge& e : g.edges()) {
    std::string src = e.src == v ? vstar : g.vertex_id(e.src);
    edges.push_back({e.id, src, g.vertex_id(e.dst)});
  }
  edges.push_back({f, g.vertex_id(v), vstar});
  return Graph(std::move(vertices), std::move(edges));
}

Graph contract(const Graph& g, int v, int f) {
  require_plain(g, "contract");
  if (v < 0 || v >= g.vertex_count()) throw MoveError("contract: unknown vertex");
  if (f < 0 || f >= g.edge_count()) throw MoveError("contract: unknown edge");
  const Edge& fe = g.edge(f);
  if (fe.src != v) throw MoveError("contract: edge does not leave the vertex");
  if (g.out_edges(v).size() != 1)
    throw MoveError("contract: vertex emits more than the connecting edge");
  int vstar = fe.dst;
  if (vstar == v) throw MoveError("contract: connecting edge is a loop");
  if (g.in_edges(vstar).size() != 1)
    throw MoveError("contract: target has in-degree != 1");

  std::vector<std::string> vertices;
  for (int u = 0; u < g.vertex_count(); ++u)
    if (u != vstar) vertices.push_back(g.vertex_id(u));
  std::vector<std::array<std::string, 3>> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e == f) continue;
    const Edge& ed = g.edge(e);
    if (ed.dst == vstar)
      throw MoveError("contract: target has another incoming edge");
    std::string src = ed.src == vstar ? g.vertex_id(v) : g.vertex_id(ed.src);
    edges.push_back({ed.id, src, g.vertex_id(ed.dst)});
  }
  return Graph(std::move(vertices), std::move(edges));
}

Graph source_eliminate(const Graph& g, int v) {
  require_plain(g, "source_eliminate");
  if (v < 0 || v >= g.vertex_count()) throw MoveError("unknown vertex");
  if (!g.is_source(v)) throw MoveError("source_eliminate: vertex is not a source");
  if (g.vertex_count() < 2)
    throw MoveError("source_eliminate: cannot remove the last vertex");
  std::vector<std::string> vertices;
  for (int u = 0; u < g.vertex_count(); ++u)
    if (u != v) vertices.push_back(g.vertex_id(u));
  std::vector<std::array<std::string, 3>> edges;
  for (const Edge& e : g.edges())
    if (e.src != v) edges.push_back(edge_triple(g, e));
  return Graph(std::move(vertices), std::move(edges));
}

Graph apply_move(const Graph& g, const MoveSpec& m) {
  switch (m.kind) {
    case MoveKind::OutSplit:
      return out_split(g, resolve_partition(g, m.partitions, true));
    case MoveKind::InSplit:
      return in_split(g, resolve_partition(g, m.partitions, false));
    case MoveKind::OutAmalgamate:
      return out_amalgamate(g, m.groups);
    case MoveKind::InAmalgamate:
      return in_amalgamate(g, m.groups);
    case MoveKind::Expand:
      return expand(g, g.vertex_index(m.vertex));
    case MoveKind::Contract:
      return contract(g, g.vertex_index(m.vertex), g.edge_index(m.edge));
    case MoveKind::SourceEliminate:
      return source_eliminate(g, g.vertex_index(m.vertex));
  }
  throw MoveError("unknown move kind");
}

std::string canonical_form(const Graph& g, int guard) {
  const int n = g.vertex_count();
  if (n > guard)
    throw MoveError("canonical labeling guarded at " + std::to_string(guard) +
                    " vertices");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    // multiset of relabeled arcs
    std::vector<std::pair<int, int>> arcs;
    for (const Edge& e : g.edges()) arcs.emplace_back(perm[e.src], perm[e.dst]);
    std::sort(arcs.begin(), arcs.end());
    std::vector<std::pair<int, int>> oms;
    for (auto& [s, r] : g.omega_pairs()) oms.emplace_back(perm[s], perm[r]);
    std::sort(oms.begin(), oms.end());
    std::string enc = std::to_string(n) + "|";
    for (auto& [s, r] : arcs) enc += std::to_string(s) + ">" + std::to_string(r) + ";";
    enc += "|";
    for (auto& [s, r] : oms) enc += std::to_string(s) + "w" + std::to_string(r) + ";";
    if (best.empty() || enc < best) best = std::move(enc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool isomorphic(const Graph& a, const Graph& b, int guard) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() ||
      a.omega_pairs().size() != b.omega_pairs().size())
    return false;
  return canonical_form(a, guard) == canonical_form(b, guard);
}

InvariantReport invariants_preserved(const Graph& g, const MoveSpec& m) {
  InvariantReport rep;
  Graph h = apply_move(g, m);
  const int n = g.vertex_count(), k = h.vertex_count();
  IntMatrix me = IntMatrix::Identity(n, n) - incidence_matrix(g);
  IntMatrix mf = IntMatrix::Identity(k, k) - incidence_matrix(h);
  rep.coker_before = cokernel(me, IntVector::Ones(n));
  rep.coker_after = cokernel(mf, IntVector::Ones(k));
  rep.det_before = det(me);
  rep.det_after = det(mf);
  rep.group_equal = group_iso(rep.coker_before, rep.coker_after);
  rep.det_equal = rep.det_before == rep.det_after;
  rep.preserved = rep.group_equal && rep.det_equal;
  return rep;
}

namespace {

// Two-block set partitions of `items`, first block containing items[0];
// deterministic order.
std::vector<std::pair<std::vector<int>, std::vector<int>>> two_blocks(
    const std::vector<int>& items) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  const size_t k = items.size();
  if (k < 2) return out;
  for (unsigned long mask = 0; mask < (1ul << (k - 1)); ++mask) {
    std::vector<int> a{items[0]}, b;
    for (size_t i = 1; i < k; ++i)
      if (mask & (1ul << (i - 1)))
        a.push_back(items[i]);
      else
        b.push_back(items[i]);
    if (!b.empty()) out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

// All single-vertex two-block splits plus expansions, contractions and
// source eliminations, in the move order that defines lexicographic
// minimality of sequences.
std::vector<MoveSpec> enumerate_moves(const Graph& g, int vertex_guard) {
  std::vector<MoveSpec> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.out_edges(v).size() < 2) continue;
    if (g.vertex_count() + 1 > vertex_guard) break;
    for (auto& [a, b] : two_blocks(g.out_edges(v))) {
      MoveSpec m;
      m.kind = MoveKind::OutSplit;
      std::vector<std::vector<std::string>> blocks(2);
      for (int e : a) blocks[0].push_back(g.edge(e).id);
      for (int e : b) blocks[1].push_back(g.edge(e).id);
      m.partitions.emplace_back(g.vertex_id(v), std::move(blocks));
      out.push_back(std::move(m));
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.in_edges(v).size() < 2) continue;
    if (g.vertex_count() + 1 > vertex_guard) break;
    for (auto& [a, b] : two_blocks(g.in_edges(v))) {
      MoveSpec m;
      m.kind = MoveKind::InSplit;
      std::vector<std::vector<std::string>> blocks(2);
      for (int e : a) blocks[0].push_back(g.edge(e).id);
      for (int e : b) blocks[1].push_back(g.edge(e).id);
      m.partitions.emplace_back(g.vertex_id(v), std::move(blocks));
      out.push_back(std::move(m));
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.vertex_count() + 1 > vertex_guard) break;
    MoveSpec m;
    m.kind = MoveKind::Expand;
    m.vertex = g.vertex_id(v);
    out.push_back(std::move(m));
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.out_edges(v).size() != 1) continue;
    int f = g.out_edges(v)[0];
    int w = g.edge(f).dst;
    if (w == v || g.in_edges(w).size() != 1) continue;
    MoveSpec m;
    m.kind = MoveKind::Contract;
    m.vertex = g.vertex_id(v);
    m.edge = g.edge(f).id;
    out.push_back(std::move(m));
  }
  if (g.vertex_count() >= 2)
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!g.is_source(v)) continue;
      MoveSpec m;
      m.kind = MoveKind::SourceEliminate;
      m.vertex = g.vertex_id(v);
      out.push_back(std::move(m));
    }
  return out;
}

}  // namespace

MoveSearchResult move_search(const Graph& e, const Graph& f, int depth,
                             int vertex_guard) {
  MoveSearchResult res;
  if (!e.row_finite() || !f.row_finite()) {
    res.reason = "omega bundles not supported";
    return res;
  }
  if (e.vertex_count() > vertex_guard || f.vertex_count() > vertex_guard) {
    res.reason = "vertex guard exceeded";
    return res;
  }
  // invariant short-circuit
  auto inv = [](const Graph& g) {
    int n = g.vertex_count();
    IntMatrix m = IntMatrix::Identity(n, n) - incidence_matrix(g);
    return std::make_pair(cokernel(m, IntVector::Ones(n)), det(m));
  };
  auto [ge, de] = inv(e);
  auto [gf, df] = inv(f);
  if (!group_iso(ge, gf) || de != df) {
    res.reason = "not found within depth: invariants differ (coker "
                 + ge.to_string() + " vs " + gf.to_string() + ", det " +
                 de.get_str() + " vs " + df.get_str() + ")";
    return res;
  }
  std::string target = canonical_form(f, vertex_guard);
  if (canonical_form(e, vertex_guard) == target) {
    res.found = true;
    return res;
  }
  struct Node {
    Graph g;
    std::vector<MoveSpec> seq;
  };
  std::deque<Node> frontier{{e, {}}};
  std::set<std::string> visited{canonical_form(e, vertex_guard)};
  for (int layer = 0; layer < depth; ++layer) {
    std::deque<Node> next;
    for (auto& node : frontier) {
      for (const MoveSpec& m : enumerate_moves(node.g, vertex_guard)) {
        Graph h = apply_move(node.g, m);
        if (h.vertex_count() > vertex_guard) continue;
        std::string c = canonical_form(h, vertex_guard);
        if (visited.count(c)) continue;
        visited.insert(c);
        std::vector<MoveSpec> seq = node.seq;
        seq.push_back(m);
        if (c == target) {
          res.found = true;
          res.sequence = std::move(seq);
          return res;
        }
        next.push_back({std::move(h), std::move(seq)});
      }
    }
    frontier = std::move(next);
  }
  res.reason = "not found within depth " + std::to_string(depth);
  return res;
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "{a,b|c}" -> blocks of ids
std::vector<std::vector<std::string>> parse_blocks(const std::string& s) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw MoveError("expected '{...}' block list, got '" + s + "'");
  std::vector<std::vector<std::string>> blocks;
  std::string body = s.substr(1, s.size() - 2);
  std::string cur;
  for (char c : body) {
    if (c == '|') {
      blocks.push_back(split_commas(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  blocks.push_back(split_commas(cur));
  return blocks;
}

}  // namespace

MoveSpec parse_move(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tok;
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    tok.push_back(t);
  }
  if (tok.empty()) throw MoveError("empty move line");
  MoveSpec m;
  const std::string& kind = tok[0];
  if (kind == "outsplit" || kind == "insplit") {
    m.kind = kind == "outsplit" ? MoveKind::OutSplit : MoveKind::InSplit;
    if (tok.size() < 3 || tok.size() % 2 == 0)
      throw MoveError("expected '" + kind + " <vertex> {blocks} ...'");
    for (size_t i = 1; i + 1 < tok.size(); i += 2)
      m.partitions.emplace_back(tok[i], parse_blocks(tok[i + 1]));
  } else if (kind == "outamalgamate" || kind == "inamalgamate") {
    m.kind = kind == "outamalgamate" ? MoveKind::OutAmalgamate : MoveKind::InAmalgamate;
    if (tok.size() < 3 || tok.size() % 2 == 0)
      throw MoveError("expected '" + kind + " <vertex> {v#1|v#2} ...'");
    for (size_t i = 1; i + 1 < tok.size(); i += 2) {
      auto blocks = parse_blocks(tok[i + 1]);
      std::vector<std::string> parts;
      for (auto& b : blocks) {
        if (b.size() != 1)
          throw MoveError("amalgamation groups list one vertex per '|' slot");
        parts.push_back(b[0]);
      }
      m.groups.emplace_back(tok[i], std::move(parts));
    }
  } else if (kind == "expand") {
    if (tok.size() != 2) throw MoveError("expected 'expand <vertex>'");
    m.kind = MoveKind::Expand;
    m.vertex = tok[1];
  } else if (kind == "contract") {
    if (tok.size() != 3) throw MoveError("expected 'contract <vertex> <edge>'");
    m.kind = MoveKind::Contract;
    m.vertex = tok[1];
    m.edge = tok[2];
  } else if (kind == "eliminate") {
    if (tok.size() != 2) throw MoveError("expected 'eliminate <vertex>'");
    m.kind = MoveKind::SourceEliminate;
    m.vertex = tok[1];
  } else {
    throw MoveError("unknown move '" + kind + "'");
  }
  return m;
}

std::vector<MoveSpec> parse_move_script(const std::string& text) {
  std::vector<MoveSpec> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string trimmed = line;
    std::erase_if(trimmed, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (trimmed.empty() || trimmed[0] == '#') continue;
    out.push_back(parse_move(line));
  }
  return out;
}

std::string format_move(const MoveSpec& m) {
  std::ostringstream os;
  auto blocks_str = [](const std::vector<std::vector<std::string>>& blocks) {
    std::string s = "{";
    for (size_t i = 0; i < blocks.size(); ++i) {
      if (i) s += "|";
      for (size_t j = 0; j < blocks[i].size(); ++j) {
        if (j) s += ",";
        s += blocks[i][j];
      }
    }
    return s + "}";
  };
  switch (m.kind) {
    case MoveKind::OutSplit:
    case MoveKind::InSplit:
      os << (m.kind == MoveKind::OutSplit ? "outsplit" : "insplit");
      for (auto& [v, blocks] : m.partitions) os << " " << v << " " << blocks_str(blocks);
      break;
    case MoveKind::OutAmalgamate:
    case MoveKind::InAmalgamate:
      os << (m.kind == MoveKind::OutAmalgamate ? "outamalgamate" : "inamalgamate");
      for (auto& [base, parts] : m.groups) {
        os << " " << base << " {";
        for (size_t i = 0; i < parts.size(); ++i) {
          if (i) os << "|";
          os << parts[i];
        }
        os << "}";
      }
      break;
    case MoveKind::Expand:
      os << "expand " << m.vertex;
      break;
    case MoveKind::Contract:
      os << "contract " << m.vertex << " " << m.edge;
      break;
    case MoveKind::SourceEliminate:
      os << "eliminate " << m.vertex;
      break;
  }
  return os.str();
}

}  // namespace lpa
