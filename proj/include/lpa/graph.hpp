// Finite directed multigraphs with optional countably-infinite edge bundles
// ("omega" bundles) per ordered vertex pair, plus the purely graph-theoretic
// predicates and closures consumed by the algebra-level modules.
//
// Graphs are immutable after construction; every free function below is pure.

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lpa {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::string id;
  int src = -1;
  int dst = -1;
};

// Sorted list of vertex indices.
using VertexSet = std::vector<int>;

class Graph {
 public:
  Graph() = default;

  // Vertex ids, edges as (id, src id, dst id), omega bundles as (src, dst).
  Graph(std::vector<std::string> vertices,
        std::vector<std::array<std::string, 3>> edges,
        std::vector<std::pair<std::string, std::string>> omegas = {});

  // Line-oriented text format:
  //   vertex <id>
  //   edge <id> <src> <dst>
  //   omega <src> <dst>
  // A token starting with '#' comments out the rest of its line.
  static Graph parse(std::string_view text);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertex_ids() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<int, int>>& omega_pairs() const { return omegas_; }

  const std::string& vertex_id(int v) const { return vertices_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }

  // Throwing lookups; parse/apply layers rely on the error text.
  int vertex_index(std::string_view id) const;
  int edge_index(std::string_view id) const;
  bool has_vertex(std::string_view id) const;
  bool has_edge_id(std::string_view id) const;

  const std::vector<int>& out_edges(int v) const { return out_.at(v); }
  const std::vector<int>& in_edges(int v) const { return in_.at(v); }
  const std::vector<int>& omega_targets(int v) const { return omega_out_.at(v); }
  const std::vector<int>& omega_sources(int v) const { return omega_in_.at(v); }

  bool row_finite() const { return omegas_.empty(); }
  bool is_sink(int v) const { return out_.at(v).empty() && omega_out_.at(v).empty(); }
  bool is_source(int v) const { return in_.at(v).empty() && omega_in_.at(v).empty(); }
  bool is_infinite_emitter(int v) const { return !omega_out_.at(v).empty(); }
  bool is_regular(int v) const { return !is_sink(v) && !is_infinite_emitter(v); }

  std::string to_text() const;

 private:
  void index();

  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::pair<int, int>> omegas_;  // sorted, unique
  std::unordered_map<std::string, int> vertex_by_id_;
  std::unordered_map<std::string, int> edge_by_id_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<std::vector<int>> omega_out_, omega_in_;
};

// A path is a (possibly empty) composable edge sequence; an empty path is the
// length-zero path at `base`. For nonempty paths `base` equals the source of
// the first edge.
struct Path {
  int base = -1;
  std::vector<int> edges;

  int length() const { return static_cast<int>(edges.size()); }
  bool operator==(const Path&) const = default;
};

int path_source(const Graph& g, const Path& p);
int path_range(const Graph& g, const Path& p);
bool path_valid(const Graph& g, const Path& p);
VertexSet path_vertices(const Graph& g, const Path& p);
std::string format_path(const Graph& g, const Path& p);

// A cycle is a closed path with pairwise distinct source vertices, stored in
// canonical rotation: the lexicographically least vertex id comes first.
struct Cycle {
  std::vector<int> edges;
  bool operator==(const Cycle&) const = default;
};

VertexSet cycle_vertices(const Graph& g, const Cycle& c);
std::string format_cycle(const Graph& g, const Cycle& c);

struct VertexClasses {
  VertexSet sinks, sources, regular, infinite_emitters;
};

VertexClasses vertex_classes(const Graph& g);

// Sing(E) = sinks plus infinite emitters.
VertexSet singular_vertices(const Graph& g);

// v >= w: some (possibly length-zero) path runs from v to w. Omega bundles
// count as edges.
bool reaches(const Graph& g, int v, int w);
VertexSet descendants(const Graph& g, int v);

bool is_hereditary(const Graph& g, const VertexSet& s);
bool is_saturated(const Graph& g, const VertexSet& s);
VertexSet hereditary_saturated_closure(const Graph& g, const VertexSet& seed);

// All hereditary saturated subsets, sorted by (size, contents). Guarded
// subset enumeration; throws when vertex_count() exceeds `guard`.
std::vector<VertexSet> enumerate_hereditary_saturated(const Graph& g, int guard = 20);

// Simple cycles over named edges, canonical rotation, deduplicated, sorted by
// (length, edge sequence). Omega bundles never appear in cycles.
std::vector<Cycle> cycles(const Graph& g);

bool is_acyclic(const Graph& g);

// Closed paths based at v whose sources are pairwise distinct (in particular
// v occurs only as the base). Named edges only.
std::vector<Path> simple_closed_paths_based_at(const Graph& g, int v);

// An exit for c: an edge (or omega bundle) leaving a vertex of c other than
// the cycle edge at that vertex.
bool has_exit(const Graph& g, const Cycle& c);

bool condition_L(const Graph& g);
bool condition_K(const Graph& g);
// Exposed for the condition-(K) oracle tests: does v base exactly one simple
// closed path? Accounts for walks through omega bundles and for pumping
// through side cycles, both of which produce more than one.
bool base_of_exactly_one_simple_closed_path(const Graph& g, int v);

bool is_downward_directed(const Graph& g);
bool is_cofinal(const Graph& g);

// B_H: infinite emitters outside H with finitely many (but at least one)
// edges escaping H. H must be hereditary.
VertexSet breaking_vertices(const Graph& g, const VertexSet& h);

// Appends two vertices and six edges at v (mutual edges v <-> v*1,
// v*1 <-> v*2, loops at v*1 and v*2). The input graph is unchanged.
Graph cuntz_splice(const Graph& g, int v);

std::string format_vertex_set(const Graph& g, const VertexSet& s);

}  // namespace lpa
