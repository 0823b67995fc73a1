#include "ltavg/structure.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ltavg/classno.hpp"
#include "ltavg/curves.hpp"
#include "ltavg/poly.hpp"
#include "ltavg/zpoly.hpp"

namespace ltavg {

namespace {

std::uint32_t residue(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::pair<Fp2, Fp2> js_of(const PrimeField& field, std::uint32_t lambda) {
  const LambdaRecord rec = lambda_record(field, field(lambda));
  return {legendre_j(rec.minus), legendre_j(rec.plus)};
}

void note(std::string& diag, const std::string& what) {
  if (!diag.empty()) diag += "; ";
  diag += what;
}

}  // namespace

RootProfile root_profile(const PsiReport& report) {
  RootProfile prof;
  prof.p = report.p;
  const PrimeField field(report.p);
  std::set<Fp2, Fp2Less> js;
  for (std::uint32_t l : report.lambdas) {
    const auto [jm, jp] = js_of(field, l);
    js.insert(jm);
    js.insert(jp);
  }
  prof.distinct_js.assign(js.begin(), js.end());
  for (const Fp2& j : prof.distinct_js) {
    if (!js.count(j.frobenius())) prof.frobenius_stable = false;
    if (j.in_base_field()) {
      prof.rational_js.push_back(j.a().value());
    } else if (j.encodes_before(j.frobenius())) {
      prof.conjugate_pairs.emplace_back(j, j.frobenius());
    }
  }
  std::sort(prof.rational_js.begin(), prof.rational_js.end());
  auto has = [&](std::int64_t v) {
    return std::binary_search(prof.rational_js.begin(), prof.rational_js.end(), residue(v, report.p));
  };
  prof.has8000 = has(8000);
  prof.has54000 = has(54000);
  return prof;
}

bool closed_form_verdict(std::uint32_t p) { return psi_p(p).ok; }

ShapeVerdict shape_check_3p(const PsiReport& report, const RootProfile& profile) {
  if (report.congruence != Congruence::OneMod4) throw DomainError("shape check needs p = 1 mod 4");
  ShapeVerdict v;
  const std::uint32_t p = report.p;
  const std::int64_t h = report.h_3p.value_or(class_number(3 * static_cast<std::int64_t>(p)));
  if (p == 5) {
    // 8000 = 54000 = 0 mod 5: one root, counted with multiplicity 2.
    v.special_p5 = true;
    v.ok = report.psi == 3 && h == 2 && profile.rational_js == std::vector<std::uint32_t>{0} &&
           profile.conjugate_pairs.empty();
    v.clause_8000 = v.clause_54000 = v.clause_degree = v.clause_weight = v.rational_subset = v.ok;
    v.diagnostic = "8000 = 54000 = 0 mod 5, single root of multiplicity 2";
    if (!v.ok) v.diagnostic += " (mismatch)";
    return v;
  }
  const int e8000 = profile.has8000 ? 1 : 0;
  const int e54000 = profile.has54000 ? 1 : 0;
  const std::int64_t pairs = static_cast<std::int64_t>(profile.conjugate_pairs.size());

  v.clause_8000 = profile.has8000 == (p % 8 == 5);
  v.clause_54000 = profile.has54000 == (p % 24 == 5 || p % 24 == 17);
  v.clause_degree = 4 * e8000 + 2 * e54000 + 4 * pairs == h;
  v.clause_weight = report.psi == 6 * e8000 + 3 * e54000 + 6 * pairs;
  v.rational_subset = static_cast<int>(profile.rational_js.size()) == e8000 + e54000;
  v.ok = v.clause_8000 && v.clause_54000 && v.clause_degree && v.clause_weight && v.rational_subset &&
         profile.frobenius_stable;

  if (!v.clause_8000) note(v.diagnostic, "(i) 8000 presence");
  if (!v.clause_54000) note(v.diagnostic, "(ii) 54000 presence");
  if (!v.clause_degree) {
    note(v.diagnostic, "(iii) degree ledger " + std::to_string(4 * e8000 + 2 * e54000 + 4 * pairs) +
                           " != h(-3p) = " + std::to_string(h));
  }
  if (!v.clause_weight) note(v.diagnostic, "(iv) weight ledger vs psi = " + std::to_string(report.psi));
  if (!v.rational_subset) note(v.diagnostic, "rational root outside {8000, 54000}");
  if (!profile.frobenius_stable) note(v.diagnostic, "root set not Frobenius-stable");
  return v;
}

std::int64_t GraphGp::degree(std::uint32_t vertex) const {
  std::int64_t d = 0;
  for (const GraphEdge& e : edges) {
    if (e.u == vertex) ++d;
    if (e.v == vertex) ++d;
  }
  return d;
}

GraphGp build_graph(const PsiReport& report) {
  if (report.congruence != Congruence::ElevenMod12) throw DomainError("graph needs p = 11 mod 12");
  const PrimeField field(report.p);
  GraphGp g;
  g.p = report.p;
  std::map<std::pair<std::uint32_t, std::uint32_t>, GraphEdge> by_pair;
  std::set<std::uint32_t> vertices;
  for (std::uint32_t l : report.lambdas) {
    const auto [jm, jp] = js_of(field, l);
    if (!jm.in_base_field() || !jp.in_base_field()) {
      throw std::logic_error("j-invariant outside F_p at p = " + std::to_string(report.p) +
                             ", lambda = " + std::to_string(l));
    }
    const std::uint32_t u = std::min(jm.a().value(), jp.a().value());
    const std::uint32_t v = std::max(jm.a().value(), jp.a().value());
    auto [it, fresh] = by_pair.try_emplace({u, v});
    GraphEdge& e = it->second;
    if (fresh) {
      e.u = u;
      e.v = v;
      e.representative = l;  // lambdas arrive sorted
    }
    ++e.weight;
    vertices.insert(u);
    vertices.insert(v);
  }
  for (auto& [key, e] : by_pair) {
    e.orbit_size = static_cast<std::int64_t>(orbit(field(e.representative)).size());
    g.edges.push_back(e);
  }
  g.vertices.assign(vertices.begin(), vertices.end());
  return g;
}

GraphVerdict graph_check(const GraphGp& g, const PsiReport& report) {
  GraphVerdict v;
  if (g.p <= 11) {
    v.skipped = true;
    v.ok = true;
    v.diagnostic = "hypothesis p > 11 not met, skipped";
    return v;
  }
  const std::uint32_t j54 = residue(54000, g.p);
  const std::uint32_t j1728 = residue(1728, g.p);
  const std::int64_t n = static_cast<std::int64_t>(g.vertices.size());
  auto is_vertex = [&](std::uint32_t x) { return std::binary_search(g.vertices.begin(), g.vertices.end(), x); };

  v.separated_1728_54000 = j54 != j1728;

  v.degrees_two = true;
  std::int64_t degree_sum = 0, leaves = 0;
  for (std::uint32_t x : g.vertices) {
    const std::int64_t d = g.degree(x);
    degree_sum += d;
    if (d == 1) ++leaves;
    if (x != j54 && x != j1728 && d != 2) v.degrees_two = false;
  }
  v.handshake = degree_sum == 2 * static_cast<std::int64_t>(g.edges.size());

  std::int64_t loops = 0, loops_at_54000 = 0, other_at_54000 = 0;
  v.weights = true;
  std::int64_t weight_sum = 0;
  for (const GraphEdge& e : g.edges) {
    weight_sum += e.weight;
    if (e.weight != e.orbit_size) v.weights = false;
    if (e.u == e.v) {
      ++loops;
      if (e.u == j54) ++loops_at_54000;
      if (e.weight != 3) v.weights = false;
    } else {
      if (e.u == j54 || e.v == j54) ++other_at_54000;
      if (e.weight != 6) v.weights = false;
    }
  }
  v.loop_at_54000 = is_vertex(j54) && loops == 1 && loops_at_54000 == 1 && other_at_54000 == 1;
  v.leaf_at_1728 = is_vertex(j1728) && g.degree(j1728) == 1 && leaves == 1;
  v.psi_total = weight_sum == report.psi && report.psi == 6 * n - 3;
  v.class_total = report.h_p.has_value() && *report.h_p == 2 * n - 1;
  v.ok = v.degrees_two && v.loop_at_54000 && v.leaf_at_1728 && v.weights && v.handshake && v.psi_total &&
         v.class_total && v.separated_1728_54000;

  if (!v.degrees_two) note(v.diagnostic, "(a) degree pattern");
  if (!v.loop_at_54000) note(v.diagnostic, "(b) self-loop at 54000");
  if (!v.leaf_at_1728) note(v.diagnostic, "(c) unique leaf at 1728");
  if (!v.weights) note(v.diagnostic, "(d) weights");
  if (!v.handshake) note(v.diagnostic, "handshake");
  if (!v.psi_total) note(v.diagnostic, "psi != 6n - 3 with n = " + std::to_string(n));
  if (!v.class_total) note(v.diagnostic, "h(-p) != 2n - 1 with n = " + std::to_string(n));
  if (!v.separated_1728_54000) note(v.diagnostic, "1728 = 54000 mod p");
  return v;
}

FactorizationVerdict direct_factorization_check(std::uint32_t p) {
  if (p < 5 || !is_prime(p) || p % 4 != 1 || p > kDirectFactorBound) {
    throw DomainError("direct check needs a prime p = 1 mod 4 with p <= " + std::to_string(kDirectFactorBound));
  }
  const PrimeField field(p);
  const HilbertPoly hp = hilbert_poly(3 * static_cast<std::int64_t>(p));
  const Fp2Poly reduced = zpoly_reduce(hp.coefficients, field);
  FactorizationVerdict v;
  v.degree = hp.degree();

  int mult_total = 0;
  std::vector<Fp2> distinct;
  for (const Fp2& r : roots_in_fp2(reduced)) {
    const int m = root_multiplicity(reduced, r);
    v.roots.emplace_back(r, m);
    distinct.push_back(r);
    mult_total += m;
  }

  const PsiReport report = psi_p(p);
  const RootProfile prof = root_profile(report);
  v.sets_equal = distinct == prof.distinct_js;

  const Fp2 j8000 = field.ext(8000), j54000 = field.ext(54000);
  v.multiplicities_match = mult_total == v.degree;
  for (const auto& [r, m] : v.roots) {
    int expected = 2;
    if (p != 5) {
      if (r == j8000) expected = 4;
      else if (r.in_base_field() && r != j54000) expected = -1;  // no other rational root is allowed
    }
    if (m != expected) v.multiplicities_match = false;
  }
  v.ok = v.sets_equal && v.multiplicities_match && v.degree == class_number(3 * static_cast<std::int64_t>(p));

  if (!v.sets_equal) note(v.diagnostic, "root set differs from the lambda enumeration");
  if (!v.multiplicities_match) note(v.diagnostic, "multiplicities differ from the ledger");
  if (!v.ok && v.diagnostic.empty()) note(v.diagnostic, "degree differs from h(-3p)");
  return v;
}

std::string graph_dot(const GraphGp& g) {
  std::ostringstream os;
  os << "graph G_" << g.p << " {\n";
  for (std::uint32_t x : g.vertices) os << "  \"" << x << "\" [label=\"" << x << "\"];\n";
  for (const GraphEdge& e : g.edges) {
    os << "  \"" << e.u << "\" -- \"" << e.v << "\" [label=\"" << e.weight << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

nlohmann::ordered_json graph_to_json(const GraphGp& g) {
  nlohmann::ordered_json j;
  j["p"] = g.p;
  j["vertices"] = g.vertices;
  j["edges"] = nlohmann::ordered_json::array();
  for (const GraphEdge& e : g.edges) j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"w", e.weight}});
  return j;
}

}  // namespace

std::string graph_json(const GraphGp& g) { return graph_to_json(g).dump(); }

StructureRow structure_row(std::uint32_t p, unsigned threads) {
  StructureRow row;
  row.report = psi_p(p, threads);
  row.shape = "na";
  row.graph_status = "na";
  bool ok = row.report.ok;
  switch (row.report.congruence) {
    case Congruence::OneMod4: {
      const ShapeVerdict s = shape_check_3p(row.report, root_profile(row.report));
      row.shape = !s.ok ? "false" : s.special_p5 ? "special" : "true";
      row.diagnostic = s.diagnostic;
      ok = ok && s.ok;
      break;
    }
    case Congruence::ElevenMod12: {
      row.graph = build_graph(row.report);
      const GraphVerdict l = graph_check(*row.graph, row.report);
      row.graph_status = l.skipped ? "skip" : l.ok ? "true" : "false";
      row.diagnostic = l.diagnostic;
      ok = ok && l.ok;
      break;
    }
    case Congruence::SevenMod12:
      if (!row.report.lambdas.empty()) note(row.diagnostic, "superspecial lambda at p = 7 mod 12");
      break;
  }
  if (!row.report.ok) note(row.diagnostic, "psi differs from the class-number formula");
  row.ok = ok;
  return row;
}

std::string structure_csv_header() { return "p,class,psi,h_p,h_3p,thmA,shape,lemma82"; }

std::string structure_csv(const StructureRow& row) {
  auto opt = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  const PsiReport& r = row.report;
  return std::to_string(r.p) + "," + congruence_label(r.congruence) + "," + std::to_string(r.psi) + "," +
         opt(r.h_p) + "," + opt(r.h_3p) + "," + (r.ok ? "true" : "false") + "," + row.shape + "," + row.graph_status;
}

std::string structure_json(const StructureRow& row) {
  const PsiReport& r = row.report;
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["class"] = congruence_label(r.congruence);
  j["psi"] = r.psi;
  j["h_p"] = r.h_p ? nlohmann::ordered_json(*r.h_p) : nlohmann::ordered_json(nullptr);
  j["h_3p"] = r.h_3p ? nlohmann::ordered_json(*r.h_3p) : nlohmann::ordered_json(nullptr);
  j["thmA"] = r.ok;
  j["shape"] = row.shape;
  j["lemma82"] = row.graph_status;
  j["ok"] = row.ok;
  if (!row.diagnostic.empty()) j["diagnostic"] = row.diagnostic;
  if (row.graph) j["graph"] = graph_to_json(*row.graph);
  return j.dump();
}

}  // namespace ltavg
