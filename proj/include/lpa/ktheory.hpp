// Exact integer linear algebra over GMP integers: incidence matrices, Smith
// normal form, fraction-free determinants, cokernels with a distinguished
// unit class, and (pointed) isomorphism of finitely generated abelian groups.

#pragma once

#include <string>
#include <vector>

#include "lpa/arith.hpp"
#include "lpa/graph.hpp"

namespace lpa {

class KTheoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A_E(i,j) = number of edges v_i -> v_j, in declared vertex order.
// Undefined in the presence of omega bundles (throws).
IntMatrix incidence_matrix(const Graph& g);

struct SmithForm {
  IntMatrix u, d, v;  // u * m * v == d, u and v unimodular
};

// Diagonalises m by unimodular row/column operations. The diagonal is
// nonnegative with d1 | d2 | ... ; pivots pick the smallest nonzero absolute
// value, ties broken by position, so the output is deterministic.
SmithForm smith_normal_form(const IntMatrix& m);

// Signed determinant by Bareiss fraction-free elimination. Kept independent
// of the Smith form, which loses the sign.
Int det(const IntMatrix& m);

struct FgAbelianGroup {
  long free_rank = 0;
  std::vector<Int> torsion;     // invariant factors d1 | d2 | ..., each >= 2
  std::vector<Int> unit_class;  // free coordinates, then torsion coordinates

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool unit_is_zero() const;
  // Group order; 0 stands for infinite.
  Int order() const;
  std::string to_string() const;  // "Z^r (+) Z/d1 (+) ...; [1] -> (...)"
  bool operator==(const FgAbelianGroup&) const = default;
};

// coker(m) presented by invariant factors, with the class of `distinguished`
// tracked through the change of basis.
FgAbelianGroup cokernel(const IntMatrix& m, const IntVector& distinguished);

// K0 of the graph algebra: coker(I - A_E) with unit class the image of
// (1,...,1). Requires a row-finite graph without omega bundles.
FgAbelianGroup k0(const Graph& g);

bool group_iso(const FgAbelianGroup& a, const FgAbelianGroup& b);

enum class Tri { Yes, No, Unknown };

// Does some group isomorphism a -> b match the unit classes? Decided exactly
// for finite groups of order <= order_bound via height (Ulm) sequences of the
// unit classes in each primary component; Unknown above the bound or when a
// nonzero unit class sits in a group of positive free rank.
Tri pointed_iso_exists(const FgAbelianGroup& a, const FgAbelianGroup& b,
                       const Int& order_bound = Int(10000));

std::string to_string(Tri t);
std::string format_matrix(const IntMatrix& m);

}  // namespace lpa
