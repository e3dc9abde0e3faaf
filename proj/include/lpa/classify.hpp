// Theorem-driven verdicts about the graph algebra: the structure of acyclic
// cases, the simplicity/pure-infinite-simplicity dichotomy, ring predicate
// battery, ideal lattices, chain conditions, Gelfand-Kirillov dimension,
// Lie bracket simplicity, and the pairwise classification verdict for purely
// infinite simple algebras.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/ktheory.hpp"

namespace lpa {

class ClassifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One matrix-size N_i per sink: the number of paths ending at that sink
// (counting the trivial path). Encodes the algebra as a direct sum of full
// matrix algebras. Requires finite acyclic input without omega bundles.
std::vector<long> acyclic_structure(const Graph& g);

// Trivial hereditary saturated lattice plus Condition (L). For graphs with
// omega bundles this is triviality of all admissible graded-ideal pairs plus
// Condition (L), which reduces to the same lattice condition because the
// breaking-vertex sets of the trivial subsets are empty.
bool is_simple(const Graph& g);

bool is_purely_infinite_simple(const Graph& g);

struct Dichotomy {
  enum Kind { MatrixAlgebra, PIS, NotSimple } kind;
  long matrix_size = 0;  // set for MatrixAlgebra
};

Dichotomy dichotomy(const Graph& g);

struct PredicateBattery {
  bool prime = false;      // downward directed
  bool primitive = false;  // downward directed + Condition (L) (+ countable
                           // separation, automatic for finite vertex sets)
  bool exchange = false;   // Condition (K)
  bool simple = false;
  bool pis = false;
};

PredicateBattery predicate_battery(const Graph& g);

enum class CenterKind { ScalarMultiplesOfUnit, Zero, Unknown };

// For simple algebras over a finite vertex set the center is K*1; Zero would
// need an infinite vertex set, which this representation excludes.
CenterKind center_description(const Graph& g);

struct GradedIdealPair {
  VertexSet h;  // hereditary saturated
  VertexSet s;  // subset of breaking_vertices(g, h)
  bool operator==(const GradedIdealPair&) const = default;
};

std::vector<GradedIdealPair> graded_ideals(const Graph& g, int guard = 20);

// For each hereditary saturated H, the cycles disjoint from H all of whose
// exits range into H; each such cycle carries a polynomial parameter slot
// (the nongraded ideal families are infinite and stay symbolic).
struct IdealFamily {
  VertexSet h;
  std::vector<Cycle> cycles_with_exits_into_h;
};

std::vector<IdealFamily> ideal_families(const Graph& g, int guard = 20);

struct ChainConditions {
  bool dcc = false;  // Condition (K), the lattice being finite anyway
  bool acc = true;   // always holds over a finite vertex set
};

ChainConditions chain_conditions(const Graph& g);

struct GkDimension {
  bool exponential = false;
  long degree = 0;  // meaningful when not exponential
};

// Exponential growth iff two distinct cycles share a vertex; otherwise
// max(2*d1 - 1, 2*d2) from the longest chains of disjoint cycles (d1) and of
// disjoint cycles with exits (d2).
GkDimension gk_dimension(const Graph& g);

enum class LieVerdict { Simple, NotSimple, Inapplicable };

// Bracket Lie algebra simplicity for simple algebras on at least two
// vertices: (1,...,1) must avoid the span of the rows B_i = A_E(i,:) - e_i
// (zero rows at sinks) over the coefficient field. characteristic 0 means the
// rationals, otherwise the prime field.
LieVerdict lie_bracket_simple(const Graph& g, long characteristic);

struct ClassificationVerdict {
  enum Kind { Isomorphic, MoritaEquivalent, NotMoritaEquivalent, OpenKP, Inapplicable } kind;
  std::optional<FgAbelianGroup> k0_e, k0_f;
  std::optional<Int> det_e, det_f;
  Tri pointed_iso = Tri::Unknown;
  std::string explanation;
};

std::string to_string(ClassificationVerdict::Kind k);

// Pairwise classification for purely infinite simple algebras: groups not
// isomorphic -> NotMoritaEquivalent; isomorphic with equal determinants ->
// Isomorphic when a pointed isomorphism exists, else MoritaEquivalent;
// isomorphic with different determinants -> OpenKP (genuinely open).
ClassificationVerdict compare(const Graph& e, const Graph& f);

long singular_count(const Graph& g);

}  // namespace lpa
