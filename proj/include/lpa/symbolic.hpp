// Exact element arithmetic in the Leavitt path algebra of a row-finite graph
// over the rationals or a prime field. Elements are kept in normal form:
//
//  * ghost-against-real contractions e* f = delta_{ef} r(f) are applied on
//    every product;
//  * at each regular vertex v the lowest-indexed edge g_v in s^-1(v) is the
//    designated edge, and any monomial whose real and ghost halves both end
//    in g_v is rewritten through v = sum of e e*, eliminating the factor
//    g_v g_v*. Each rewrite either shortens the monomial or removes its only
//    redex, so normalization terminates and yields the standard basis.
//
// Monomials are ordered by (total length, contents), which fixes printing.

#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lpa/fields.hpp"
#include "lpa/graph.hpp"

namespace lpa {

class SymbolicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Monomial {
  Path alpha, beta;  // r(alpha) == r(beta); the element alpha . beta*
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    size_t la = a.alpha.edges.size() + a.beta.edges.size();
    size_t lb = b.alpha.edges.size() + b.beta.edges.size();
    if (la != lb) return la < lb;
    if (a.alpha.base != b.alpha.base) return a.alpha.base < b.alpha.base;
    if (a.alpha.edges != b.alpha.edges) return a.alpha.edges < b.alpha.edges;
    if (a.beta.base != b.beta.base) return a.beta.base < b.beta.base;
    return a.beta.edges < b.beta.edges;
  }
};

namespace detail {

// Index of the designated edge at src(e)'s vertex; -1 when e is not the
// designated edge of its source.
inline int designated_edge(const Graph& g, int v) {
  int best = -1;
  for (int e : g.out_edges(v))
    if (best < 0 || e < best) best = e;
  return best;
}

}  // namespace detail

template <class K>
class LpaElement {
 public:
  using TermMap = std::map<Monomial, K, MonomialLess>;

  LpaElement() = default;
  explicit LpaElement(const Graph& g) : g_(&g) { check_graph(g); }

  static LpaElement zero(const Graph& g) { return LpaElement(g); }

  static LpaElement unit(const Graph& g) {
    LpaElement x(g);
    for (int v = 0; v < g.vertex_count(); ++v)
      x.add_term(Monomial{Path{v, {}}, Path{v, {}}}, K(1));
    return x;
  }

  static LpaElement vertex(const Graph& g, int v) {
    LpaElement x(g);
    x.add_term(Monomial{Path{v, {}}, Path{v, {}}}, K(1));
    return x;
  }

  static LpaElement real_path(const Graph& g, const Path& p) {
    if (!path_valid(g, p)) throw SymbolicError("invalid path");
    LpaElement x(g);
    x.add_term(Monomial{p, Path{path_range(g, p), {}}}, K(1));
    return x;
  }

  static LpaElement ghost_path(const Graph& g, const Path& p) {
    if (!path_valid(g, p)) throw SymbolicError("invalid path");
    LpaElement x(g);
    x.add_term(Monomial{Path{path_range(g, p), {}}, p}, K(1));
    return x;
  }

  static LpaElement monomial(const Graph& g, const Path& a, const Path& b,
                             K coef = K(1)) {
    if (!path_valid(g, a) || !path_valid(g, b)) throw SymbolicError("invalid path");
    if (path_range(g, a) != path_range(g, b))
      throw SymbolicError("monomial halves must share their range vertex");
    LpaElement x(g);
    x.add_term(Monomial{a, b}, coef);
    return x;
  }

  const Graph& graph() const { return *g_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  friend bool operator==(const LpaElement& a, const LpaElement& b) {
    if (a.g_ && b.g_ && a.g_ != b.g_)
      throw SymbolicError("comparing elements over different graphs");
    auto eq = [](const K& x, const K& y) { return x == y; };
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = a.terms_.begin();
    auto jt = b.terms_.begin();
    MonomialLess less;
    for (; it != a.terms_.end(); ++it, ++jt) {
      if (less(it->first, jt->first) || less(jt->first, it->first)) return false;
      if (!eq(it->second, jt->second)) return false;
    }
    return true;
  }
  friend bool operator!=(const LpaElement& a, const LpaElement& b) { return !(a == b); }

  LpaElement& operator+=(const LpaElement& o) {
    same_graph(o);
    if (!g_) g_ = o.g_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  LpaElement& operator-=(const LpaElement& o) {
    same_graph(o);
    if (!g_) g_ = o.g_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend LpaElement operator+(LpaElement a, const LpaElement& b) { return a += b; }
  friend LpaElement operator-(LpaElement a, const LpaElement& b) { return a -= b; }
  friend LpaElement operator-(const LpaElement& a) {
    LpaElement r = a;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend LpaElement operator*(const K& k, const LpaElement& a) {
    LpaElement r(*a.g_);
    if (k == K(0)) return r;
    r.terms_ = a.terms_;
    for (auto& [m, c] : r.terms_) c = c * k;
    return r;
  }

  friend LpaElement operator*(const LpaElement& a, const LpaElement& b) {
    a.same_graph(b);
    LpaElement r(*a.g_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.multiply_monomials(ma, mb, ca * cb);
    return r;
  }

  LpaElement star() const {
    LpaElement r(*g_);
    for (const auto& [m, c] : terms_) r.add_term(Monomial{m.beta, m.alpha}, c);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      if (!(c == K(1))) os << scalar_to_string(c) << "*";
      os << format_monomial(*g_, m);
    }
    return os.str();
  }

  // CK2 rewrite, linearly extended; public so the rewrite-order probe can
  // re-normalize shuffled raw terms.
  void add_term(const Monomial& m, const K& coef) {
    if (coef == K(0)) return;
    const Graph& g = *g_;
    if (!m.alpha.edges.empty() && !m.beta.edges.empty()) {
      int ea = m.alpha.edges.back(), eb = m.beta.edges.back();
      if (ea == eb && ea == detail::designated_edge(g, g.edge(ea).src)) {
        int v = g.edge(ea).src;
        Monomial shorter{Path{m.alpha.base, {m.alpha.edges.begin(), m.alpha.edges.end() - 1}},
                         Path{m.beta.base, {m.beta.edges.begin(), m.beta.edges.end() - 1}}};
        add_term(shorter, coef);
        for (int e : g.out_edges(v)) {
          if (e == ea) continue;
          Monomial longer = shorter;
          longer.alpha.edges.push_back(e);
          longer.beta.edges.push_back(e);
          add_term(longer, -coef);
        }
        return;
      }
    }
    auto [it, inserted] = terms_.emplace(m, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == K(0)) terms_.erase(it);
    }
  }

 private:
  void check_graph(const Graph& g) {
    if (!g.row_finite())
      throw SymbolicError("element arithmetic requires a row-finite graph");
  }

  void same_graph(const LpaElement& o) const {
    if (g_ && o.g_ && g_ != o.g_)
      throw SymbolicError("elements over different graphs");
  }

  // (a1 b1*)(a2 b2*): contract b1* a2 by CK1, then CK2-normalize.
  void multiply_monomials(const Monomial& m1, const Monomial& m2, const K& coef) {
    const Graph& g = *g_;
    const Path& b1 = m1.beta;
    const Path& a2 = m2.alpha;
    if (path_source(g, b1) != path_source(g, a2)) return;  // orthogonal
    size_t k = std::min(b1.edges.size(), a2.edges.size());
    for (size_t i = 0; i < k; ++i)
      if (b1.edges[i] != a2.edges[i]) return;  // diverge: e* f = 0
    if (b1.edges.size() <= a2.edges.size()) {
      // b1 is a prefix of a2: remainder extends alpha1
      Path alpha = m1.alpha;
      for (size_t i = k; i < a2.edges.size(); ++i) alpha.edges.push_back(a2.edges[i]);
      if (alpha.edges.empty()) alpha.base = m1.alpha.base;
      add_term(Monomial{alpha, m2.beta}, coef);
    } else {
      // a2 is a proper prefix of b1: remainder extends beta2 as ghosts
      Path beta = m2.beta;
      for (size_t i = k; i < b1.edges.size(); ++i) beta.edges.push_back(b1.edges[i]);
      add_term(Monomial{m1.alpha, beta}, coef);
    }
  }

  const Graph* g_ = nullptr;
  TermMap terms_;
};

std::string format_monomial(const Graph& g, const Monomial& m);

using RatElement = LpaElement<Rat>;

// Element grammar: terms split on +/-, each an optional integer (or p/q)
// coefficient times a '.'-separated product of generators. A generator is a
// vertex id, an edge id, or an edge id followed by '*'. "0" and plain
// integers (multiples of the unit) are accepted.
template <class K>
LpaElement<K> parse_element(const Graph& g, const std::string& text);

template <class K>
struct LpaMatrix {
  const Graph* graph = nullptr;
  int n = 0;
  std::vector<LpaElement<K>> entries;  // row-major

  LpaMatrix() = default;
  LpaMatrix(const Graph& g, int dim)
      : graph(&g), n(dim), entries(dim * dim, LpaElement<K>::zero(g)) {}

  LpaElement<K>& at(int i, int j) { return entries[i * n + j]; }
  const LpaElement<K>& at(int i, int j) const { return entries[i * n + j]; }

  static LpaMatrix identity(const Graph& g, int dim) {
    LpaMatrix m(g, dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = LpaElement<K>::unit(g);
    return m;
  }

  friend LpaMatrix operator*(const LpaMatrix& a, const LpaMatrix& b) {
    if (a.n != b.n || a.graph != b.graph) throw SymbolicError("matrix dimension mismatch");
    LpaMatrix r(*a.graph, a.n);
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j) {
        LpaElement<K> sum = LpaElement<K>::zero(*a.graph);
        for (int t = 0; t < a.n; ++t) sum += a.at(i, t) * b.at(t, j);
        r.at(i, j) = sum;
      }
    return r;
  }

  friend bool operator==(const LpaMatrix& a, const LpaMatrix& b) {
    if (a.n != b.n) return false;
    for (size_t i = 0; i < a.entries.size(); ++i)
      if (!(a.entries[i] == b.entries[i])) return false;
    return true;
  }
};

struct DaggerReport {
  bool ok = true;
  int checks = 0;
  int failures = 0;
  std::string first_failure;
};

// y_i x_j = delta_ij * I and sum x_i y_i = I.
template <class K>
DaggerReport verify_dagger(const std::vector<LpaMatrix<K>>& xs,
                           const std::vector<LpaMatrix<K>>& ys);

// The monomial basis of the algebra of a finite acyclic graph: all pairs
// (alpha, beta) with a common range whose two halves do not both end in the
// designated edge of their junction.
std::vector<Monomial> normal_basis(const Graph& g);

extern template class LpaElement<Rat>;
extern template class LpaElement<PrimeField<2>>;
extern template class LpaElement<PrimeField<3>>;

}  // namespace lpa
