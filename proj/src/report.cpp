#include "lpa/report.hpp"

#include <sstream>

#include "lpa/classify.hpp"
#include "lpa/ktheory.hpp"
#include "lpa/monoid.hpp"
#include "lpa/moves.hpp"
#include "lpa/numtheory.hpp"
#include "lpa/symbolic.hpp"

namespace lpa {

namespace {

Json vertex_set_json(const Graph& g, const VertexSet& s) {
  Json a = Json::array();
  for (int v : s) a.push_back(g.vertex_id(v));
  return a;
}

Json group_json(const FgAbelianGroup& k) {
  Json j;
  j["free_rank"] = k.free_rank;
  Json t = Json::array();
  for (const Int& d : k.torsion) t.push_back(d.get_str());
  j["invariant_factors"] = t;
  Json u = Json::array();
  for (const Int& c : k.unit_class) u.push_back(c.get_str());
  j["unit_class"] = u;
  j["pretty"] = k.to_string();
  return j;
}

}  // namespace

Json graph_summary(const Graph& g) {
  Json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["omega_bundles"] = g.omega_pairs().size();
  auto cls = vertex_classes(g);
  j["sinks"] = vertex_set_json(g, cls.sinks);
  j["sources"] = vertex_set_json(g, cls.sources);
  j["infinite_emitters"] = vertex_set_json(g, cls.infinite_emitters);
  j["singular_count"] = singular_count(g);
  return j;
}

Json analyze_report(const Graph& g, const ReportOptions& opt) {
  Json j;
  j["command"] = "analyze";
  j["graph"] = graph_summary(g);

  Json cond;
  cond["condition_L"] = condition_L(g);
  cond["condition_K"] = condition_K(g);
  cond["downward_directed"] = is_downward_directed(g);
  cond["cofinal"] = is_cofinal(g);
  cond["acyclic"] = is_acyclic(g);
  j["conditions"] = cond;

  Json lattice = Json::array();
  for (const auto& h : enumerate_hereditary_saturated(g, opt.vertex_guard))
    lattice.push_back(vertex_set_json(g, h));
  j["hereditary_saturated"] = lattice;

  auto battery = predicate_battery(g);
  Json bat;
  bat["prime"] = battery.prime;
  bat["primitive"] = battery.primitive;
  bat["exchange"] = battery.exchange;
  bat["simple"] = battery.simple;
  bat["purely_infinite_simple"] = battery.pis;
  j["predicates"] = bat;

  auto d = dichotomy(g);
  Json dich;
  dich["kind"] = d.kind == Dichotomy::MatrixAlgebra ? "matrix_algebra"
                 : d.kind == Dichotomy::PIS         ? "purely_infinite_simple"
                                                    : "not_simple";
  if (d.kind == Dichotomy::MatrixAlgebra) dich["matrix_size"] = d.matrix_size;
  j["dichotomy"] = dich;

  if (is_acyclic(g) && g.row_finite()) {
    Json ns = Json::array();
    for (long n : acyclic_structure(g)) ns.push_back(n);
    j["acyclic_matrix_sizes"] = ns;
  }

  if (g.row_finite()) {
    auto gk = gk_dimension(g);
    Json gkj;
    gkj["exponential"] = gk.exponential;
    if (!gk.exponential) gkj["degree"] = gk.degree;
    j["gk_dimension"] = gkj;

    auto cc = chain_conditions(g);
    j["chain_conditions"] = Json{{"dcc", cc.dcc}, {"acc", cc.acc}};
  }

  switch (center_description(g)) {
    case CenterKind::ScalarMultiplesOfUnit:
      j["center"] = "scalar_multiples_of_unit";
      break;
    case CenterKind::Zero:
      j["center"] = "zero";
      break;
    default:
      j["center"] = "unknown";
  }

  Json gi = Json::array();
  for (const auto& pair : graded_ideals(g, opt.vertex_guard)) {
    Json p;
    p["H"] = vertex_set_json(g, pair.h);
    p["S"] = vertex_set_json(g, pair.s);
    gi.push_back(p);
  }
  j["graded_ideals"] = gi;
  j["graded_ideal_count"] = gi.size();

  if (g.row_finite()) {
    Json fams = Json::array();
    bool nongraded = false;
    for (const auto& fam : ideal_families(g, opt.vertex_guard)) {
      Json f;
      f["H"] = vertex_set_json(g, fam.h);
      Json cs = Json::array();
      for (const auto& c : fam.cycles_with_exits_into_h)
        cs.push_back(format_cycle(g, c));
      f["C_H"] = cs;
      if (!fam.cycles_with_exits_into_h.empty()) nongraded = true;
      fams.push_back(f);
    }
    j["ideal_families"] = fams;
    j["has_nongraded_ideals"] = nongraded;
  }

  j["cites"] = Json::array({
      "simplicity: trivial hereditary saturated lattice + Condition (L)",
      "dichotomy: simple graph algebras are M_n(K) or purely infinite simple",
      "prime iff downward directed; primitive adds Condition (L); exchange iff Condition (K)",
      "ideals: graded ideals from (H, S) pairs; nongraded from exitless-into-H cycles",
      "GK dimension: exponential iff two cycles meet, else max(2d1-1, 2d2)",
  });
  return j;
}

Json k0_report(const Graph& g) {
  Json j;
  j["command"] = "k0";
  j["graph"] = graph_summary(g);
  IntMatrix a = incidence_matrix(g);
  const int n = g.vertex_count();
  IntMatrix m = IntMatrix::Identity(n, n) - a;
  j["incidence"] = format_matrix(a);
  FgAbelianGroup k = cokernel(m, IntVector::Ones(n));
  j["k0"] = group_json(k);
  j["det_I_minus_A"] = det(m).get_str();
  j["cites"] = Json::array({
      "K0 as the cokernel of I - A_E via Smith normal form",
      "|K0| = |det(I - A_E)| when finite; det 0 iff infinite",
  });
  return j;
}

Json compare_report(const Graph& e, const Graph& f) {
  Json j;
  j["command"] = "compare";
  j["graph_e"] = graph_summary(e);
  j["graph_f"] = graph_summary(f);
  auto v = compare(e, f);
  j["verdict"] = to_string(v.kind);
  if (v.k0_e) j["k0_e"] = group_json(*v.k0_e);
  if (v.k0_f) j["k0_f"] = group_json(*v.k0_f);
  if (v.det_e) j["det_e"] = v.det_e->get_str();
  if (v.det_f) j["det_f"] = v.det_f->get_str();
  j["pointed_iso"] = to_string(v.pointed_iso);
  j["explanation"] = v.explanation;
  j["cites"] = Json::array({
      "restricted algebraic Kirchberg-Phillips: pointed K0 iso + equal det gives isomorphism",
      "Franks / Parry-Sullivan: K0 iso + equal det gives Morita equivalence",
      "equal K0, opposite det: the open Kirchberg-Phillips question",
  });
  return j;
}

Json move_report(const Graph& g, const std::string& script) {
  Json j;
  j["command"] = "move";
  j["graph"] = graph_summary(g);
  Json steps = Json::array();
  Graph cur = g;
  for (const MoveSpec& m : parse_move_script(script)) {
    Json step;
    step["move"] = format_move(m);
    auto rep = invariants_preserved(cur, m);
    cur = apply_move(cur, m);
    step["coker_before"] = rep.coker_before.to_string();
    step["coker_after"] = rep.coker_after.to_string();
    step["det_before"] = rep.det_before.get_str();
    step["det_after"] = rep.det_after.get_str();
    step["invariants_preserved"] = rep.preserved;
    step["vertices_after"] = cur.vertex_count();
    step["edges_after"] = cur.edge_count();
    steps.push_back(step);
  }
  j["steps"] = steps;
  j["result_graph"] = cur.to_text();
  j["cites"] = Json::array({
      "flow moves preserve coker(I - A) and det(I - A)",
  });
  return j;
}

Json monoid_report(const Graph& g, const std::vector<std::string>& equal_query,
                   int bound, bool group_check) {
  Json j;
  j["command"] = "monoid";
  j["graph"] = graph_summary(g);
  MonoidPresentation p = presentation(g);
  Json rels = Json::array();
  for (const auto& rel : p.relations)
    rels.push_back(g.vertex_id(rel.vertex) + " = " +
                   format_monoid_element(g, rel.rhs));
  j["presentation"] = rels;
  if (equal_query.size() == 2) {
    MonoidElement x = parse_monoid_element(g, equal_query[0]);
    MonoidElement y = parse_monoid_element(g, equal_query[1]);
    Json q;
    q["x"] = format_monoid_element(g, x);
    q["y"] = format_monoid_element(g, y);
    q["bound"] = bound;
    q["verdict"] = equal_bounded(p, x, y, bound) == WordVerdict::Equal
                       ? "Equal"
                       : "NotEqualWithinBound";
    j["equal"] = q;
  }
  if (group_check) {
    auto rep = group_without_zero_check(g, bound);
    Json gc;
    gc["ok"] = rep.ok;
    gc["status"] = rep.status;
    gc["expected_order"] = rep.expected_order.get_str();
    gc["classes_found"] = rep.classes_found;
    Json mf = Json::array();
    for (const Int& d : rep.monoid_factors) mf.push_back(d.get_str());
    gc["monoid_factors"] = mf;
    Json kf = Json::array();
    for (const Int& d : rep.k0_factors) kf.push_back(d.get_str());
    gc["k0_factors"] = kf;
    gc["detail"] = rep.detail;
    j["group_without_zero"] = gc;
  }
  j["cites"] = Json::array({
      "graph monoid: a_v = sum over s^-1(v) of a_{r(e)} at regular vertices",
      "purely infinite simple: nonzero monoid classes form K0",
  });
  return j;
}

Json dagger_report(const std::string& fixture_json_text) {
  Json fixture = Json::parse(fixture_json_text);
  Json j;
  j["command"] = "verify-dagger";
  Graph g = Graph::parse(fixture.at("graph").get<std::string>());
  const int dim = fixture.at("d").get<int>();
  // Fixtures transcribed from a right-action presentation (maps composed
  // first-to-last) carry a convention flag; rendering them in row-by-column
  // terms transposes the matrix and reverses each entry word.
  const bool right_action = fixture.value("convention", "") == "right-action";
  auto reverse_word = [](const std::string& w) {
    std::vector<std::string> atoms;
    std::string cur;
    for (char c : w) {
      if (c == '.') {
        atoms.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    atoms.push_back(cur);
    std::string out;
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
      if (!out.empty()) out += ".";
      out += *it;
    }
    return out;
  };
  auto load = [&](const Json& arr) {
    std::vector<LpaMatrix<Rat>> out;
    for (const auto& mj : arr) {
      LpaMatrix<Rat> m(g, dim);
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
          std::string w = mj.at(i).at(k).get<std::string>();
          if (right_action)
            m.at(k, i) = parse_element<Rat>(g, reverse_word(w));
          else
            m.at(i, k) = parse_element<Rat>(g, w);
        }
      out.push_back(std::move(m));
    }
    return out;
  };
  auto xs = load(fixture.at("x"));
  auto ys = load(fixture.at("y"));
  auto rep = verify_dagger(xs, ys);
  j["n"] = xs.size();
  j["d"] = dim;
  j["checks"] = rep.checks;
  j["failures"] = rep.failures;
  j["ok"] = rep.ok;
  if (!rep.first_failure.empty()) j["first_failure"] = rep.first_failure;
  j["cites"] = Json::array({
      "y_i x_j = delta_ij 1 and sum x_i y_i = 1",
  });
  return j;
}

Json partition_report(long d, long r, std::optional<long> extend_n) {
  Json j;
  j["command"] = "partition";
  PartitionData p = partition(d, r);
  j["d"] = p.d;
  j["r"] = p.r;
  j["s"] = p.s;
  j["i_r"] = p.i_r;
  j["sigma"] = p.sigma;
  j["sigma1"] = p.sigma1;
  j["sigma2"] = p.sigma2;
  j["S1"] = p.s1;
  j["S2"] = p.s2;
  j["pretty"] = format_partition(p.s1, p.s2);
  j["inverse_check"] = i_r_inverse_check(d, r);
  if (extend_n) {
    auto e = extend_partition(d, r, *extend_n);
    Json ej;
    ej["n"] = e.n;
    ej["S1"] = e.s1;
    ej["S2"] = e.s2;
    ej["pretty"] = format_partition(e.s1, e.s2);
    j["extension"] = ej;
  }
  j["cites"] = Json::array({
      "Sigma = 1, 1+s, ..., 1+(d-1)s mod d is a complete residue system",
      "i_r is the inverse of r-1 mod d; phi(d) partitions arise",
  });
  return j;
}

namespace {

void render_value(std::ostringstream& os, const std::string& key, const Json& v,
                  int indent) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    os << pad << key << ":\n";
    for (auto it = v.begin(); it != v.end(); ++it)
      render_value(os, it.key(), it.value(), indent + 2);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    os << pad << key << ":\n";
    int i = 0;
    for (const auto& item : v) render_value(os, "[" + std::to_string(i++) + "]", item, indent + 2);
  } else {
    os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  for (auto it = report.begin(); it != report.end(); ++it) {
    if (it.key() == "cites") continue;
    render_value(os, it.key(), it.value(), 0);
  }
  return os.str();
}

}  // namespace lpa
