// Executable structure checks: j-invariant profiles of the superspecial
// lambdas, the factorization ledger of P_{3p} mod p, and the graph on the
// roots of P_p mod p.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltavg/family.hpp"
#include "ltavg/fields.hpp"

namespace ltavg {

struct RootProfile {
  std::uint32_t p = 0;
  std::vector<Fp2> distinct_js;                         // sorted by encoding
  std::vector<std::uint32_t> rational_js;               // sorted
  std::vector<std::pair<Fp2, Fp2>> conjugate_pairs;     // (x, x^p), x before x^p
  bool has8000 = false;
  bool has54000 = false;
  bool frobenius_stable = true;
};

RootProfile root_profile(const PsiReport& report);

bool closed_form_verdict(std::uint32_t p);

struct ShapeVerdict {
  bool special_p5 = false;
  bool clause_8000 = false;     // 8000 present iff p = 5 mod 8
  bool clause_54000 = false;    // 54000 present iff p = 5, 17 mod 24
  bool clause_degree = false;   // 4[8000] + 2[54000] + 4 #pairs = h(-3p)
  bool clause_weight = false;   // psi = 6[8000] + 3[54000] + 6 #pairs
  bool rational_subset = false; // rational roots lie in {8000, 54000}
  bool ok = false;
  std::string diagnostic;
};

// p = 1 mod 4.  p = 5 is checked against its own expected values.
ShapeVerdict shape_check_3p(const PsiReport& report, const RootProfile& profile);

struct GraphEdge {
  std::uint32_t u = 0, v = 0;         // u <= v; u == v is a self-loop
  std::int64_t weight = 0;            // number of lambdas giving this pair
  std::uint32_t representative = 0;   // smallest such lambda
  std::int64_t orbit_size = 0;        // size of the representative's orbit
};

struct GraphGp {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> vertices;
  std::vector<GraphEdge> edges;  // sorted by (u, v)

  std::int64_t degree(std::uint32_t vertex) const;  // self-loops count twice
};

// p = 11 mod 12.
GraphGp build_graph(const PsiReport& report);

struct GraphVerdict {
  bool skipped = false;  // p <= 11
  bool degrees_two = false;
  bool loop_at_54000 = false;
  bool leaf_at_1728 = false;
  bool weights = false;
  bool handshake = false;
  bool psi_total = false;   // psi = 6n - 3
  bool class_total = false; // h(-p) = 2n - 1
  bool separated_1728_54000 = false;
  bool ok = false;
  std::string diagnostic;
};

GraphVerdict graph_check(const GraphGp& g, const PsiReport& report);

struct FactorizationVerdict {
  std::int64_t degree = 0;  // deg P_{3p} = h(-3p)
  std::vector<std::pair<Fp2, int>> roots;  // distinct roots with multiplicity
  bool sets_equal = false;
  bool multiplicities_match = false;
  bool ok = false;
  std::string diagnostic;
};

inline constexpr std::uint32_t kDirectFactorBound = 60;
FactorizationVerdict direct_factorization_check(std::uint32_t p);

std::string graph_dot(const GraphGp& g);
std::string graph_json(const GraphGp& g);

struct StructureRow {
  PsiReport report;
  std::string shape;    // true / false / special / na
  std::string graph_status;  // true / false / skip / na
  bool ok = false;
  std::optional<GraphGp> graph;
  std::string diagnostic;
};

StructureRow structure_row(std::uint32_t p, unsigned threads = 1);
std::string structure_csv_header();
std::string structure_csv(const StructureRow& row);
std::string structure_json(const StructureRow& row);

}  // namespace ltavg
