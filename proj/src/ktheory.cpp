#include "lpa/ktheory.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lpa {

IntMatrix incidence_matrix(const Graph& g) {
  if (!g.row_finite())
    throw KTheoryError(
        "K-theory matrix undefined for infinite emitters (omega bundle present)");
  int n = g.vertex_count();
  IntMatrix a = IntMatrix::Zero(n, n);
  for (const Edge& e : g.edges()) a(e.src, e.dst) += 1;
  return a;
}

namespace {

// Position of the entry with smallest nonzero |value| in the trailing block
// at (t,t); ties go to the smallest (row, col).
bool find_pivot(const IntMatrix& d, int t, int& pi, int& pj) {
  bool found = false;
  Int best = 0;
  for (int i = t; i < d.rows(); ++i)
    for (int j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Int a = abs(d(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  SmithForm f{IntMatrix::Identity(rows, rows), m, IntMatrix::Identity(cols, cols)};
  IntMatrix& d = f.d;
  IntMatrix& u = f.u;
  IntMatrix& v = f.v;

  int steps = std::min(rows, cols);
  for (int t = 0; t < steps; ++t) {
    int pi = t, pj = t;
    if (!find_pivot(d, t, pi, pj)) break;
    for (;;) {
      find_pivot(d, t, pi, pj);
      if (pi != t) {
        d.row(t).swap(d.row(pi));
        u.row(t).swap(u.row(pi));
      }
      if (pj != t) {
        d.col(t).swap(d.col(pj));
        v.col(t).swap(v.col(pj));
      }
      bool dirty = false;
      for (int i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        if (q != 0) {
          d.row(i) -= d.row(t) * q;
          u.row(i) -= u.row(t) * q;
        }
        if (d(i, t) != 0) dirty = true;  // nonzero remainder becomes the pivot
      }
      for (int j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        if (q != 0) {
          d.col(j) -= d.col(t) * q;
          v.col(j) -= v.col(t) * q;
        }
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // Divisibility: fold any non-multiple into the pivot's row and retry.
      bool fixed = true;
      for (int i = t + 1; i < rows && fixed; ++i)
        for (int j = t + 1; j < cols && fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.row(t) += d.row(i);
            u.row(t) += u.row(i);
            fixed = false;
          }
      if (fixed) break;
    }
    // Sign normalization through V keeps U (and with it the distinguished
    // class of the cokernel) untouched.
    if (d(t, t) < 0) {
      d.col(t) = -d.col(t);
      v.col(t) = -v.col(t);
    }
  }
  return f;
}

Int det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw KTheoryError("det: matrix is not square");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = t / prev;  // exact by the Bareiss identity
      }
    prev = a(k, k);
  }
  return sign < 0 ? Int(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

bool FgAbelianGroup::unit_is_zero() const {
  return std::all_of(unit_class.begin(), unit_class.end(),
                     [](const Int& c) { return c == 0; });
}

Int FgAbelianGroup::order() const {
  if (free_rank > 0) return 0;
  Int n = 1;
  for (const Int& d : torsion) n *= d;
  return n;
}

std::string FgAbelianGroup::to_string() const {
  std::ostringstream os;
  if (trivial()) {
    os << "0";
  } else {
    bool first = true;
    if (free_rank > 0) {
      os << (free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank));
      first = false;
    }
    for (const Int& d : torsion) {
      if (!first) os << " (+) ";
      os << "Z/" << d;
      first = false;
    }
  }
  os << "; [1] -> (";
  for (size_t i = 0; i < unit_class.size(); ++i) {
    if (i) os << ",";
    os << unit_class[i];
  }
  os << ")";
  return os.str();
}

FgAbelianGroup cokernel(const IntMatrix& m, const IntVector& distinguished) {
  if (m.rows() != distinguished.size())
    throw KTheoryError("cokernel: distinguished vector has wrong dimension");
  SmithForm f = smith_normal_form(m);
  IntVector y = f.u * distinguished;
  const int n = static_cast<int>(m.rows());
  const int k = static_cast<int>(std::min(m.rows(), m.cols()));
  FgAbelianGroup g;
  std::vector<Int> free_coords, torsion_coords;
  for (int i = 0; i < n; ++i) {
    Int di = i < k ? f.d(i, i) : Int(0);
    if (di == 0) {
      ++g.free_rank;
      free_coords.push_back(y(i));
    } else if (di == 1) {
      continue;  // coordinate dies
    } else {
      g.torsion.push_back(di);
      Int c = y(i) % di;
      if (c < 0) c += di;
      torsion_coords.push_back(c);
    }
  }
  g.unit_class = std::move(free_coords);
  g.unit_class.insert(g.unit_class.end(), torsion_coords.begin(), torsion_coords.end());
  return g;
}

FgAbelianGroup k0(const Graph& g) {
  IntMatrix a = incidence_matrix(g);
  int n = g.vertex_count();
  IntMatrix m = IntMatrix::Identity(n, n) - a;
  return cokernel(m, IntVector::Ones(n));
}

bool group_iso(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  return a.free_rank == b.free_rank && a.torsion == b.torsion;
}

namespace {

std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Height sequence of x in the p-group (+) Z/p^lambda_i: the sequence of
// p-adic valuations of p^t x for t = 0,1,... until the element dies. Two
// elements of a finite abelian p-group lie in the same automorphism orbit
// exactly when their height sequences agree.
std::vector<int> height_sequence(const std::vector<int>& lambda,
                                 std::vector<Int> comp, const Int& p) {
  std::vector<int> seq;
  for (;;) {
    bool zero = true;
    int h = -1;
    for (size_t i = 0; i < comp.size(); ++i) {
      if (comp[i] == 0) continue;
      zero = false;
      Int c = comp[i];
      int val = 0;
      while (c % p == 0) {
        c /= p;
        ++val;
      }
      if (h < 0 || val < h) h = val;
    }
    if (zero) break;
    seq.push_back(h);
    for (size_t i = 0; i < comp.size(); ++i) {
      Int mod = 1;
      for (int t = 0; t < lambda[i]; ++t) mod *= p;
      comp[i] = (comp[i] * p) % mod;
    }
  }
  return seq;
}

// Per-prime height sequences of the unit class of a finite group.
std::map<Int, std::vector<int>> unit_orbit_invariant(const FgAbelianGroup& g) {
  std::map<Int, std::vector<int>> out;
  Int n = g.order();
  for (auto& [p, e] : factorize(n)) {
    (void)e;
    std::vector<int> lambda;
    std::vector<Int> comp;
    for (size_t i = 0; i < g.torsion.size(); ++i) {
      Int d = g.torsion[i];
      int l = 0;
      Int pk = 1;
      while (d % p == 0) {
        d /= p;
        ++l;
        pk *= p;
      }
      if (l == 0) continue;
      lambda.push_back(l);
      comp.push_back(g.unit_class[i] % pk);  // CRT projection
    }
    out[p] = height_sequence(lambda, comp, p);
  }
  return out;
}

}  // namespace

Tri pointed_iso_exists(const FgAbelianGroup& a, const FgAbelianGroup& b,
                       const Int& order_bound) {
  if (!group_iso(a, b)) return Tri::No;
  // Zero is fixed by every automorphism.
  if (a.unit_is_zero() || b.unit_is_zero())
    return a.unit_is_zero() == b.unit_is_zero() ? Tri::Yes : Tri::No;
  if (a.free_rank > 0) return Tri::Unknown;
  if (a.order() > order_bound) return Tri::Unknown;
  return unit_orbit_invariant(a) == unit_orbit_invariant(b) ? Tri::Yes : Tri::No;
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "unknown";
  }
}

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << m(i, j);
    }
  }
  os << "]";
  return os.str();
}

}  // namespace lpa
