// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ltavg/average.hpp"
#include "ltavg/classno.hpp"
#include "ltavg/cli.hpp"
#include "ltavg/curves.hpp"
#include "ltavg/family.hpp"
#include "ltavg/isogenies.hpp"
#include "ltavg/modpoly.hpp"
#include "ltavg/parallel.hpp"
#include "ltavg/structure.hpp"
#include "ltavg/zpoly.hpp"

using namespace ltavg;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  int failures = 0;

  void fail(const std::string& what) {
    ++failures;
    ok = false;
    if (failures <= 5) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::vector<std::uint32_t> primes_in(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = lo; p <= hi; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

bool admissible(Fp l) { return !l.is_zero() && l.value() != 1 && !lambda_delta(l).is_zero(); }

std::string str(const std::string& s) { return s; }
template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// 1. Closed form for psi, recomputed here from class numbers.
Outcome closed_form_psi() {
  Outcome o;
  for (std::uint32_t p : primes_in(5, 2000)) {
    const PsiReport r = psi_p(p);
    std::int64_t want = 0;
    if (p % 4 == 1) want = 3 * class_number(3 * static_cast<std::int64_t>(p)) / 2;
    else if (p % 12 == 11) want = 3 * class_number(p);
    if (r.psi != want || !r.ok) o.fail("p = " + str(p) + ": psi " + str(r.psi) + " vs " + str(want));
  }
  return o;
}

// 2. Small anchors.
Outcome psi_anchors() {
  Outcome o;
  const PsiReport five = psi_p(5);
  const PrimeField F(5);
  const std::vector<std::uint32_t> set = {F(2).value(), (F(1) / F(2)).value(), (F(0) - F(1)).value()};
  std::vector<std::uint32_t> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  if (five.psi != 3 || five.lambdas != sorted) o.fail("p = 5");
  if (psi_p(7).psi != 0) o.fail("p = 7");
  if (psi_p(11).psi != 3) o.fail("p = 11");
  return o;
}

// 3. The composite of the two 3-isogenies is [-3], and the fixed-point anchors.
Outcome isogeny_identity() {
  Outcome o;
  const auto primes = primes_in(5, 500);
  std::mt19937_64 rng(kDefaultSeed);
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t p = primes[rng() % primes.size()];
    const PrimeField F(p);
    Fp l = F(2);
    do l = F(static_cast<std::uint32_t>(2 + rng() % (p - 2)));
    while (!admissible(l));
    if (!compose_is_minus3(l, 50, rng())) o.fail("compose at p = " + str(p) + ", lambda = " + str(l.value()));
    if (!isogeny_anchors(l).all()) o.fail("anchors at p = " + str(p) + ", lambda = " + str(l.value()));
  }
  return o;
}

// 4. (1 + lambda + 2 eps sqrt(delta))/3 is a 3-torsion abscissa.
Outcome torsion_abscissas() {
  Outcome o;
  for (std::uint32_t p : primes_in(5, 200)) {
    const PrimeField F(p);
    for (std::uint32_t l = 2; l < p; ++l) {
      if (!admissible(F(l))) continue;
      const Fp2 root = sqrt_in_fp2(F, lambda_delta(F(l)));
      for (int eps : {-1, 1}) {
        const Fp2 L = legendre_param(F(l), eps, root);
        if (L.is_zero() || L == L.one()) continue;
        const Fp2 x = torsion_abscissa(F(l), eps, root);
        if (!psi3_polynomial(L).eval(x).is_zero() || !is_three_torsion_abscissa(LegendreCurve(L).model(), x))
          o.fail("p = " + str(p) + ", lambda = " + str(l) + ", eps = " + str(eps));
      }
    }
  }
  return o;
}

// 5. Deuring test against point counting.
Outcome deuring_vs_count() {
  Outcome o;
  for (std::uint32_t p : primes_in(5, 200)) {
    const PrimeField F(p);
    for (std::uint32_t t = 2; t < p; ++t) {
      const LegendreCurve c(F.ext(t));
      const bool ss = is_supersingular_parameter(F.ext(t));
      if (ss != (count_points(c, 1) == p + 1)) o.fail("p = " + str(p) + ", t = " + str(t));
    }
  }
  return o;
}

// 6. Rationality of sqrt(delta) and #E(F_{p^2}) at superspecial lambda.
Outcome point_count_facts() {
  Outcome o;
  for (std::uint32_t p : primes_in(5, 500)) {
    if (p % 12 == 7) continue;
    const PrimeField F(p);
    const std::uint64_t q = p;
    const std::uint64_t want = p % 4 == 1 ? (q - 1) * (q - 1) : (q + 1) * (q + 1);
    for (std::uint32_t l : psi_p(p).lambdas) {
      const LambdaRecord r = lambda_record(F, F(l));
      if (r.root.in_base_field() != (p % 4 == 3)) o.fail("sqrt rationality at p = " + str(p) + ", lambda = " + str(l));
      for (const Fp2& L : {r.minus, r.plus}) {
        const LegendreCurve c(L);
        std::uint64_t n2 = 0;
        if (L.in_base_field()) {
          // Weil: #E(F_{p^2}) = p^2 + 1 - (a^2 - 2p) with a = p + 1 - #E(F_p).
          const std::int64_t a = static_cast<std::int64_t>(q + 1) - static_cast<std::int64_t>(count_points(c, 1));
          n2 = static_cast<std::uint64_t>(static_cast<std::int64_t>(q * q + 1) - (a * a - 2 * static_cast<std::int64_t>(q)));
          if (p <= 200 && n2 != count_points(c, 2)) o.fail("Weil relation at p = " + str(p));
        } else {
          n2 = count_points(c, 2);
        }
        if (n2 != want) o.fail("#E = " + str(n2) + " at p = " + str(p) + ", lambda = " + str(l));
      }
    }
  }
  return o;
}

// 7. Root-shape ledger for P_{3p} mod p.
Outcome shape_ledger() {
  Outcome o;
  for (std::uint32_t p : primes_in(6, 2000)) {
    if (p % 4 != 1) continue;
    const PsiReport rep = psi_p(p);
    const RootProfile prof = root_profile(rep);
    const ShapeVerdict v = shape_check_3p(rep, prof);
    const bool want8000 = p % 8 == 5;
    const bool want54000 = p % 24 == 5 || p % 24 == 17;
    if (!v.ok || prof.has8000 != want8000 || prof.has54000 != want54000)
      o.fail("p = " + str(p) + ": " + v.diagnostic);
  }
  return o;
}

// 8. Graph degrees, weights and totals at p = 11 mod 12.
Outcome graph_degrees() {
  Outcome o;
  for (std::uint32_t p : primes_in(12, 2000)) {
    if (p % 12 != 11) continue;
    const PsiReport rep = psi_p(p);
    const GraphVerdict v = graph_check(build_graph(rep), rep);
    if (!v.ok) o.fail("p = " + str(p) + ": " + v.diagnostic);
  }
  return o;
}

// 9. Direct factorization of P_{3p} mod p.
Outcome direct_factorization() {
  Outcome o;
  for (std::uint32_t p : {5u, 13u, 17u, 29u, 37u, 41u}) {
    const FactorizationVerdict v = direct_factorization_check(p);
    if (!v.ok) o.fail("p = " + str(p) + ": " + v.diagnostic);
  }
  const FactorizationVerdict five = direct_factorization_check(5);
  if (five.roots.size() != 1 || five.roots[0].second != 2) o.fail("p = 5 multiplicity");
  return o;
}

// 10. Class polynomial constants and two reductions.
Outcome class_polynomials() {
  Outcome o;
  auto Z = [](std::initializer_list<const char*> c) {
    ZPoly f;
    for (const char* v : c) f.emplace_back(v);
    return f;
  };
  const std::vector<std::pair<std::int64_t, ZPoly>> table = {
      {3, Z({"0", "1"})},
      {8, Z({"-8000", "1"})},
      {11, Z({"32768", "1"})},
      {12, Z({"-54000", "1"})},
      {20, Z({"-681472000", "-1264000", "1"})},
  };
  for (const auto& [D, want] : table)
    if (hilbert_poly(D).coefficients != want) o.fail("P_" + str(D));
  const PrimeField F13(13), F61(61);
  const Fp2Poly p20 = zpoly_reduce(hilbert_poly(20).coefficients, F13);
  if (p20 != Fp2Poly({F13.ext(64), F13.ext(16), F13.ext(1)})) o.fail("P_20 mod 13");
  const Fp2Poly p35 = zpoly_reduce(hilbert_poly(35).coefficients, F61);
  if (p35 != Fp2Poly({F61.ext(20 * 52), F61.ext(20 + 52), F61.ext(1)})) o.fail("P_35 mod 61");
  return o;
}

// 11. Valuations of 8000 - j at the primes dividing 3p.
Outcome singular_moduli() {
  Outcome o;
  for (std::uint32_t p : primes_in(5, 1000)) {
    if (p % 4 != 1) continue;
    const std::int64_t got = gross_zagier_ordp(8, 3 * static_cast<std::int64_t>(p), p);
    const std::int64_t want = p == 5 ? 6 : p % 8 == 5 ? 4 : 0;
    if (got != want) o.fail("p = " + str(p) + ": " + str(got) + " vs " + str(want));
  }
  return o;
}

// 12. Discriminant of the level-3 modular polynomial.
Outcome resultant_identity() {
  Outcome o;
  const ResultantCheck r = level3_discriminant_check();
  if (!r.proportional) o.fail("resultant is not a multiple of the CM product");
  else if (!r.holds_up_to_sign) o.fail("resultant = " + r.factor.get_str() + " x product, expected factor +-1");
  return o;
}

// 13. The f, g, h identities and the round trips.
Outcome fgh_identities() {
  Outcome o;
  for (std::uint32_t p : primes_in(11, 500)) {
    if (p % 12 != 11) continue;
    const PrimeField F(p);
    for (std::uint32_t t = 2; t < p; ++t) {
      if (!is_supersingular_parameter(F.ext(t))) continue;
      for (const Fp2& ax : psi3_roots_fp(F.ext(t))) {
        const Fp a = ax.a();
        const Fp b2 = a * (a - F(1)) * (a - F(t));
        const FGH v = fgh_eval(a, b2);
        if (v.g.is_zero()) continue;
        const std::string where = "p = " + str(p) + ", t = " + str(t) + ", a = " + str(a.value());
        if (v.f * v.f - v.f * v.g + v.g * v.g != v.h * v.h) o.fail("norm identity at " + where);
        if (v.f + v.g - F(2) * v.h != F(3) * a * v.g) o.fail("linear identity at " + where);
        if ((v.g - v.f) * (v.f - v.h) * (v.f - v.h) != F(t) * v.g * v.g * v.g) o.fail("cubic identity at " + where);
        const Fp lambda = lambda_from_torsion(F(t), a);
        const Fp root = torsion_root(F(t), a);
        if (root * root != lambda_delta(lambda)) o.fail("root at " + where);
        // Forward then back: the abscissa is recovered for one sign of the root.
        bool back = false;
        for (int eps : {-1, 1}) back = back || torsion_abscissa(lambda, eps, F.ext(root)) == F.ext(a);
        if (!back) o.fail("abscissa round trip at " + where);
      }
    }
    // Abscissa then back, on superspecial lambda.
    for (std::uint32_t l : psi_p(p).lambdas) {
      const Fp2 root = sqrt_in_fp2(F, lambda_delta(F(l)));
      for (int eps : {-1, 1}) {
        const Fp2 t = legendre_param(F(l), eps, root);
        const Fp2 a = torsion_abscissa(F(l), eps, root);
        if (!t.in_base_field() || !a.in_base_field()) {
          o.fail("non-rational abscissa at p = " + str(p) + ", lambda = " + str(l));
          continue;
        }
        if (fgh_eval(a.a(), a.a() * (a.a() - F(1)) * (a.a() - t.a())).g.is_zero()) continue;
        if (lambda_from_torsion(t.a(), a.a()) != F(l))
          o.fail("lambda round trip at p = " + str(p) + ", lambda = " + str(l) + ", eps = " + str(eps));
      }
    }
  }
  return o;
}

// 14a. Window sums against the direct double loop.
Outcome window_exactness() {
  Outcome o;
  const SuperspecialTable table(50);
  for (std::uint32_t X = 5; X <= 50; X += 3) {
    for (std::int64_t N : {1, 2, 3, 10, 29, 64, 117, 200}) {
      for (AverageMode mode : {AverageMode::Integer, AverageMode::Rational}) {
        const std::int64_t fast = window_sum(X, N, mode, table).total;
        const std::int64_t slow = brute_force_total(X, N, mode, table);
        if (fast != slow)
          o.fail(mode_label(mode) + " X = " + str(X) + ", N = " + str(N) + ": " + str(fast) + " vs " + str(slow));
      }
    }
  }
  return o;
}

// 14b. Ratio band and trend.
Outcome convergence_band() {
  Outcome o;
  const unsigned threads = resolve_threads(0);
  for (AverageMode mode : {AverageMode::Integer, AverageMode::Rational}) {
    const auto rows = convergence_table({1000, 3000, 10000}, mode, threads);
    std::string ratios;
    for (const AverageRun& r : rows) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%.4f", ratios.empty() ? "" : ", ", r.ratio);
      ratios += buf;
    }
    std::cout << "      " << mode_label(mode) << " ratios at X = 1000, 3000, 10000: " << ratios << "\n";
    for (const AverageRun& r : rows)
      if (r.ratio < 0.8 || r.ratio > 1.2) o.fail(mode_label(mode) + " ratio " + str(r.ratio) + " at X = " + str(r.X));
    if (std::abs(rows.back().ratio - 1) > std::abs(rows.front().ratio - 1))
      o.fail(mode_label(mode) + " distance to 1 grows");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1  psi closed form, 5 <= p <= 2000", closed_form_psi},
      {"2  psi anchors at 5, 7, 11", psi_anchors},
      {"3  3-isogeny composite is [-3] on 200 seeded pairs, anchors", isogeny_identity},
      {"4  3-torsion abscissas, p <= 200", torsion_abscissas},
      {"5  Deuring test vs point count, p <= 200", deuring_vs_count},
      {"6  sqrt(delta) rationality and #E(F_p^2), p <= 500", point_count_facts},
      {"7  root shape of P_3p mod p, p <= 2000", shape_ledger},
      {"8  graph degrees and totals, p <= 2000", graph_degrees},
      {"9  direct factorization of P_3p, p in {5,13,17,29,37,41}", direct_factorization},
      {"10 class polynomial constants and reductions", class_polynomials},
      {"11 valuations of singular moduli, p <= 1000", singular_moduli},
      {"12 discriminant of Phi_3 against the CM product", resultant_identity},
      {"13 f, g, h identities and round trips, p <= 500", fgh_identities},
      {"14a window sum equals the double loop, X <= 50, N <= 200", window_exactness},
      {"14b ratio band [0.8, 1.2] with nonincreasing distance", convergence_band},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", secs);
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << time << ")";
    if (!o.ok) std::cout << ": " << o.failures << " failure(s): " << o.detail;
    std::cout << std::endl;
    if (!o.ok) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
