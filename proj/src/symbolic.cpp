#include "lpa/symbolic.hpp"

#include <algorithm>
#include <cctype>

namespace lpa {

std::string format_monomial(const Graph& g, const Monomial& m) {
  std::string s;
  if (m.alpha.edges.empty() && m.beta.edges.empty()) return g.vertex_id(m.alpha.base);
  for (int e : m.alpha.edges) {
    if (!s.empty()) s += ".";
    s += g.edge(e).id;
  }
  for (auto it = m.beta.edges.rbegin(); it != m.beta.edges.rend(); ++it) {
    if (!s.empty()) s += ".";
    s += g.edge(*it).id + "*";
  }
  return s;
}

namespace {

std::vector<std::string> tokenize_terms(const std::string& text) {
  // split on top-level + and -, keeping the sign with the term
  std::vector<std::string> out;
  std::string cur = "+";
  bool any = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '+' || c == '-') {
      if (any) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.clear();
      }
      cur += c;
      any = false;
    } else {
      if (cur.empty()) cur = "+";
      cur += c;
      any = true;
    }
  }
  if (any) out.push_back(cur);
  return out;
}

template <class K>
K scalar_from_string(const std::string& s);

template <>
Rat scalar_from_string<Rat>(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

template <long P>
PrimeField<P> prime_from_string(const std::string& s) {
  return PrimeField<P>(std::stol(s));
}

template <>
PrimeField<2> scalar_from_string<PrimeField<2>>(const std::string& s) {
  return prime_from_string<2>(s);
}
template <>
PrimeField<3> scalar_from_string<PrimeField<3>>(const std::string& s) {
  return prime_from_string<3>(s);
}

}  // namespace

template <class K>
LpaElement<K> parse_element(const Graph& g, const std::string& text) {
  LpaElement<K> acc = LpaElement<K>::zero(g);
  for (const std::string& signed_term : tokenize_terms(text)) {
    bool negative = signed_term[0] == '-';
    std::string term = signed_term.substr(1);
    if (term.empty()) throw SymbolicError("dangling sign in element '" + text + "'");
    K coef(1);
    // leading coefficient: digits (with optional /q) followed by '*'
    size_t i = 0;
    while (i < term.size() &&
           (std::isdigit(static_cast<unsigned char>(term[i])) || term[i] == '/'))
      ++i;
    std::string factors = term;
    if (i > 0 && i < term.size() && term[i] == '*') {
      coef = scalar_from_string<K>(term.substr(0, i));
      factors = term.substr(i + 1);
    } else if (i == term.size()) {
      // bare scalar: multiple of the unit
      coef = scalar_from_string<K>(term);
      LpaElement<K> t = coef * LpaElement<K>::unit(g);
      if (term == "0") t = LpaElement<K>::zero(g);
      acc += negative ? -t : t;
      continue;
    }
    if (negative) coef = -coef;
    LpaElement<K> prod = coef * LpaElement<K>::unit(g);
    std::string name;
    auto flush = [&](const std::string& atom) {
      if (atom.empty()) throw SymbolicError("empty factor in '" + text + "'");
      bool ghost = atom.back() == '*';
      std::string id = ghost ? atom.substr(0, atom.size() - 1) : atom;
      if (g.has_edge_id(id)) {
        Path p{g.edge(g.edge_index(id)).src, {g.edge_index(id)}};
        prod = prod * (ghost ? LpaElement<K>::ghost_path(g, p)
                             : LpaElement<K>::real_path(g, p));
      } else if (g.has_vertex(id)) {
        prod = prod * LpaElement<K>::vertex(g, g.vertex_index(id));  // v* = v
      } else {
        throw SymbolicError("unknown generator '" + id + "' in element '" + text + "'");
      }
    };
    for (char c : factors) {
      if (c == '.') {
        flush(name);
        name.clear();
      } else {
        name += c;
      }
    }
    flush(name);
    acc += prod;
  }
  return acc;
}

template <class K>
DaggerReport verify_dagger(const std::vector<LpaMatrix<K>>& xs,
                           const std::vector<LpaMatrix<K>>& ys) {
  if (xs.empty() || xs.size() != ys.size())
    throw SymbolicError("verify_dagger: X and Y lists must match and be nonempty");
  const Graph& g = *xs[0].graph;
  const int dim = xs[0].n;
  for (const auto& m : xs)
    if (m.n != dim || m.graph != &g) throw SymbolicError("matrix dimension mismatch");
  for (const auto& m : ys)
    if (m.n != dim || m.graph != &g) throw SymbolicError("matrix dimension mismatch");

  DaggerReport rep;
  LpaMatrix<K> id = LpaMatrix<K>::identity(g, dim);
  LpaMatrix<K> zero(g, dim);
  const int n = static_cast<int>(xs.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ++rep.checks;
      LpaMatrix<K> prod = ys[i] * xs[j];
      const LpaMatrix<K>& want = i == j ? id : zero;
      if (!(prod == want)) {
        ++rep.failures;
        if (rep.first_failure.empty())
          rep.first_failure = "y" + std::to_string(i + 1) + " x" + std::to_string(j + 1) +
                              " != " + (i == j ? "I" : "0");
      }
    }
  ++rep.checks;
  LpaMatrix<K> sum(g, dim);
  for (int i = 0; i < n; ++i) {
    LpaMatrix<K> prod = xs[i] * ys[i];
    for (size_t t = 0; t < sum.entries.size(); ++t) sum.entries[t] += prod.entries[t];
  }
  if (!(sum == id)) {
    ++rep.failures;
    if (rep.first_failure.empty()) rep.first_failure = "sum x_i y_i != I";
  }
  rep.ok = rep.failures == 0;
  return rep;
}

namespace {

void extend_paths(const Graph& g, std::vector<Path>& all) {
  // all paths of a finite acyclic graph, breadth-first by length
  size_t begin = 0;
  while (begin < all.size()) {
    size_t end = all.size();
    for (size_t i = begin; i < end; ++i) {
      Path p = all[i];
      for (int e : g.out_edges(path_range(g, p))) {
        Path q = p;
        q.edges.push_back(e);
        all.push_back(std::move(q));
      }
    }
    begin = end;
  }
}

}  // namespace

std::vector<Monomial> normal_basis(const Graph& g) {
  if (!is_acyclic(g)) throw SymbolicError("normal_basis: graph must be acyclic");
  if (!g.row_finite()) throw SymbolicError("normal_basis: omega bundles not supported");
  std::vector<Path> paths;
  for (int v = 0; v < g.vertex_count(); ++v) paths.push_back(Path{v, {}});
  extend_paths(g, paths);
  std::vector<Monomial> basis;
  for (const Path& a : paths)
    for (const Path& b : paths) {
      if (path_range(g, a) != path_range(g, b)) continue;
      if (!a.edges.empty() && !b.edges.empty()) {
        int ea = a.edges.back(), eb = b.edges.back();
        if (ea == eb && ea == detail::designated_edge(g, g.edge(ea).src))
          continue;  // redex, rewritten away
      }
      basis.push_back(Monomial{a, b});
    }
  return basis;
}

template class LpaElement<Rat>;
template class LpaElement<PrimeField<2>>;
template class LpaElement<PrimeField<3>>;

template LpaElement<Rat> parse_element<Rat>(const Graph&, const std::string&);
template LpaElement<PrimeField<2>> parse_element<PrimeField<2>>(const Graph&,
                                                                const std::string&);
template LpaElement<PrimeField<3>> parse_element<PrimeField<3>>(const Graph&,
                                                                const std::string&);

template DaggerReport verify_dagger<Rat>(const std::vector<LpaMatrix<Rat>>&,
                                         const std::vector<LpaMatrix<Rat>>&);
template DaggerReport verify_dagger<PrimeField<2>>(
    const std::vector<LpaMatrix<PrimeField<2>>>&,
    const std::vector<LpaMatrix<PrimeField<2>>>&);

}  // namespace lpa
