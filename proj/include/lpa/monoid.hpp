// The graph monoid M_E as a finitely presented commutative monoid: one
// generator a_v per vertex, one relation a_v = sum of a_{r(e)} over
// e in s^-1(v) for each regular v. Word-problem decisions are bounded
// bidirectional closures under the relation rewrites; Equal is definitive,
// NotEqualWithinBound is only a bounded certificate.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpa/arith.hpp"
#include "lpa/graph.hpp"
#include "lpa/ktheory.hpp"

namespace lpa {

class MonoidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nonnegative coefficient vector over the vertex generators.
using MonoidElement = Eigen::VectorXi;

struct MonoidPresentation {
  struct Relation {
    int vertex;          // a_{vertex} = ...
    MonoidElement rhs;   // multiset of range vertices
  };
  const Graph* graph = nullptr;
  std::vector<Relation> relations;  // one per regular vertex, in vertex order

  int generators() const { return graph->vertex_count(); }
};

MonoidPresentation presentation(const Graph& g);

// "2*v1 + v3" style element syntax over vertex ids.
MonoidElement parse_monoid_element(const Graph& g, const std::string& text);
std::string format_monoid_element(const Graph& g, const MonoidElement& x);

enum class WordVerdict { Equal, NotEqualWithinBound };

// Bidirectional breadth-first closure under relation rewrites (both
// orientations), restricted to vectors of coordinate sum <= bound.
WordVerdict equal_bounded(const MonoidPresentation& p, const MonoidElement& x,
                          const MonoidElement& y, int bound);

// Every element of the congruence class of x whose coordinate sum stays
// within bound (the closure equal_bounded searches).
std::vector<MonoidElement> bounded_class(const MonoidPresentation& p,
                                         const MonoidElement& x, int bound);

// Least (sum, lexicographic) member of the bounded class; canonical
// representative for class bookkeeping.
MonoidElement bounded_representative(const MonoidPresentation& p,
                                     const MonoidElement& x, int bound);

struct GroupCheckReport {
  bool ok = false;
  std::string status;            // "matched", "exhausted", "mismatch", ...
  Int expected_order = 0;        // |det(I - A)|, 0 = infinite
  long classes_found = 0;
  std::vector<Int> monoid_factors;  // invariant factors recovered from classes
  std::vector<Int> k0_factors;
  std::string detail;
};

// For purely infinite simple graph algebras the nonzero monoid classes form a
// group; rebuild it within the bound from the generator classes and compare
// its invariant factors against the K-theory cokernel.
GroupCheckReport group_without_zero_check(const Graph& g, int bound);

struct ProbeReport {
  int samples = 0;        // sampled instances with all premises established
  int confirmed = 0;      // conclusion certified within bound
  int unresolved = 0;     // conclusion not certified within bound
  int violations = 0;     // premises certified and conclusion refuted: never
                          // reachable by bounded search, kept for honesty
  std::string detail;
};

ProbeReport separativity_probe(const MonoidPresentation& p, int samples, int bound,
                               std::uint64_t seed);
ProbeReport refinement_probe(const MonoidPresentation& p, int samples, int bound,
                             std::uint64_t seed);

}  // namespace lpa
