// The six flow-equivalence graph moves (out/in-split and their witnessed
// amalgamations, expansion/contraction, source elimination), invariant
// preservation checks, small-graph canonical labeling, and bounded
// breadth-first search for move sequences.
//
// Moves operate on row-finite graphs without omega bundles. Split vertices
// are rendered "v#i" and split edges "e#j"; both are parse-safe.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/ktheory.hpp"

namespace lpa {

class MoveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MoveKind {
  OutSplit,
  OutAmalgamate,
  InSplit,
  InAmalgamate,
  Expand,
  Contract,
  SourceEliminate
};

// Partition witness per vertex id: ordered blocks of edge ids. Vertices not
// mentioned keep the trivial one-block partition.
using PartitionSpec = std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>;

// Amalgamation witness: each entry collapses the ordered parts (split-graph
// vertex ids) into a vertex named by the base id.
using GroupingSpec = std::vector<std::pair<std::string, std::vector<std::string>>>;

struct MoveSpec {
  MoveKind kind;
  PartitionSpec partitions;  // OutSplit / InSplit
  GroupingSpec groups;       // OutAmalgamate / InAmalgamate
  std::string vertex;        // Expand / Contract / SourceEliminate
  std::string edge;          // Contract
};

// Script line formats:
//   outsplit v {e1,e2|e3} w {f1|f2}
//   insplit v {e1|e2,e3}
//   outamalgamate v {v#1|v#2} ...
//   inamalgamate  v {v#1|v#2} ...
//   expand v
//   contract v f
//   eliminate v
MoveSpec parse_move(const std::string& line);
std::vector<MoveSpec> parse_move_script(const std::string& text);
std::string format_move(const MoveSpec& m);

// Index-level partition: vertex -> ordered blocks of edge indices.
using EdgePartition = std::map<int, std::vector<std::vector<int>>>;

Graph out_split(const Graph& g, const EdgePartition& p);
Graph in_split(const Graph& g, const EdgePartition& p);
// Witness-checked inverses: reconstruct the base graph from the grouping and
// verify that re-splitting reproduces the input up to isomorphism.
Graph out_amalgamate(const Graph& g, const GroupingSpec& groups);
Graph in_amalgamate(const Graph& g, const GroupingSpec& groups);
Graph expand(const Graph& g, int v);
Graph contract(const Graph& g, int v, int f);
Graph source_eliminate(const Graph& g, int v);

Graph apply_move(const Graph& g, const MoveSpec& m);

// Exhaustive canonical labeling; throws above the vertex guard.
std::string canonical_form(const Graph& g, int guard = 8);
bool isomorphic(const Graph& a, const Graph& b, int guard = 8);

struct InvariantReport {
  FgAbelianGroup coker_before, coker_after;
  Int det_before, det_after;
  bool group_equal = false;
  bool det_equal = false;
  bool preserved = false;
};

// Applies the move and compares (coker(I - A), det(I - A)) before/after.
InvariantReport invariants_preserved(const Graph& g, const MoveSpec& m);

struct MoveSearchResult {
  bool found = false;
  std::vector<MoveSpec> sequence;  // lexicographically least among shortest
  std::string reason;              // set when not found
};

// Breadth-first search over out-splits (two-block witnesses), in-splits,
// expansions, contractions and source eliminations, deduplicating states by
// canonical form. Mismatched invariants short-circuit. Never a negative
// claim: failure is NotFoundWithinDepth.
MoveSearchResult move_search(const Graph& e, const Graph& f, int depth,
                             int vertex_guard = 8);

}  // namespace lpa
