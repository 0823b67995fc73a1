#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ltavg/classno.hpp"
#include "ltavg/curves.hpp"
#include "ltavg/family.hpp"
#include "ltavg/isogenies.hpp"

using namespace ltavg;

namespace {

std::vector<std::uint32_t> values(const std::vector<Fp>& v) {
  std::vector<std::uint32_t> out;
  for (Fp x : v) out.push_back(x.value());
  return out;
}

}  // namespace

TEST_CASE("Legendre pair over the rationals") {
  const RationalPair two = legendre_pair_over_q(2);
  CHECK(two.u == -7);
  CHECK(two.v == -4);
  CHECK(two.delta == 3);
  // lambda = 1/2: delta = 3/4, so u +- v sqrt(delta) = 1/2 +- (1/4) sqrt 3 = (2 +- sqrt 3)/4.
  const RationalPair half = legendre_pair_over_q(mpq_class(1, 2));
  CHECK(half.u == mpq_class(1, 2));
  CHECK(half.v == mpq_class(1, 2));
  CHECK(half.delta == mpq_class(3, 4));
  CHECK_THROWS_AS(legendre_pair_over_q(0), DomainError);
  CHECK_THROWS_AS(legendre_pair_over_q(1), DomainError);
}

TEST_CASE("lambda records") {
  const PrimeField F(13);
  CHECK_THROWS_AS(lambda_record(F(0)), DomainError);
  CHECK_THROWS_AS(lambda_record(F(1)), DomainError);
  CHECK_THROWS_AS(lambda_record(F(4)), DomainError);  // 16 - 4 + 1 = 13
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 101u, 499u}) {
    const PrimeField G(p);
    for (std::uint32_t l = 2; l < p; ++l) {
      if (lambda_delta(G(l)).is_zero()) continue;
      const LambdaRecord r = lambda_record(G, G(l));
      CHECK(r.root.square() == G.ext(r.delta));
      const Fp2 lm1 = G.ext(G(l) - G(1));
      CHECK(r.minus * r.plus == lm1.square().square());
      CHECK(r.superspecial == is_supersingular_parameter(r.plus));
    }
  }
}

TEST_CASE("orbits") {
  const PrimeField F(101);
  CHECK(values(orbit(F(2))) == std::vector<std::uint32_t>{2, 51, 100});
  const PrimeField F11(11);
  CHECK(values(orbit(F11(3))) == std::vector<std::uint32_t>{3, 4, 5, 7, 8, 9});
  const PrimeField F7(7);
  CHECK(orbit(F7(3)).size() == 2);  // 3 is a root of delta mod 7
  CHECK_THROWS_AS(orbit(F7(0)), DomainError);
  for (std::uint32_t l = 2; l < 101; ++l) {
    const auto o = orbit(F(l));
    for (Fp m : o) CHECK(values(orbit(m)) == values(o));
  }
}

TEST_CASE("psi anchors") {
  const PsiReport five = psi_p(5);
  CHECK(five.psi == 3);
  CHECK(five.lambdas == std::vector<std::uint32_t>{2, 3, 4});
  CHECK(five.ok);
  CHECK(psi_p(7).psi == 0);
  CHECK(psi_p(11).psi == 3);
  CHECK(psi_p(13).psi == 6);
  CHECK(psi_p(23).psi == 9);
  CHECK_THROWS_AS(psi_p(4), DomainError);
  CHECK_THROWS_AS(psi_p(9), DomainError);
  CHECK_THROWS_AS(psi_p(kPsiBound + 1), DomainError);
}

TEST_CASE("superspecial sets against a direct scan") {
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u, 23u, 29u, 37u, 47u, 59u, 61u, 83u, 97u}) {
    const PrimeField F(p);
    std::vector<std::uint32_t> direct;
    for (std::uint32_t l = 2; l < p; ++l) {
      if (lambda_delta(F(l)).is_zero()) continue;
      const LambdaRecord r = lambda_record(F, F(l));
      if (r.superspecial) direct.push_back(l);
    }
    const PsiReport rep = psi_p(p);
    CHECK(rep.lambdas == direct);
    CHECK(rep.psi % 3 == 0);
    CHECK(superspecial_lambdas(p, 3) == direct);
  }
}

TEST_CASE("square root of delta at superspecial lambda") {
  for (std::uint32_t p = 5; p <= 500; ++p) {
    if (!is_prime(p)) continue;
    const PrimeField F(p);
    for (std::uint32_t l : psi_p(p).lambdas) {
      const bool rational = sqrt_in_fp2(F, lambda_delta(F(l))).in_base_field();
      CHECK(rational == (p % 4 == 3));
    }
  }
}

TEST_CASE("serialization") {
  const PsiReport r = psi_p(5);
  CHECK(psi_report_json(r) == R"({"p":5,"class":"1 mod 4","psi":3,"h_p":null,"h_3p":2,"ok":true,"lambdas":[2,3,4]})");
  CHECK(psi_report_csv_header() == "p,class,psi,h_p,h_3p,ok");
  CHECK(psi_report_csv(r) == "5,1 mod 4,3,,2,true");
  CHECK(psi_report_csv(psi_p(11)) == "11,11 mod 12,3,1,,true");
}

TEST_CASE("torsion correspondence at p = 11 mod 12") {
  for (std::uint32_t p : {11u, 23u, 47u, 59u, 71u, 83u, 107u}) {
    const PrimeField F(p);
    for (std::uint32_t t = 2; t < p; ++t) {
      if (!is_supersingular_parameter(F.ext(t))) continue;
      // Exactly two abscissas of 3-torsion points lie in F_p; b may lie in F_{p^2} only.
      const auto abscissas = psi3_roots_fp(F.ext(t));
      CHECK(abscissas.size() == 2);
      for (const Fp2& ax : abscissas) {
        const Fp a = ax.a();
        const Fp b2 = a * (a - F(1)) * (a - F(t));
        const FGH v = fgh_eval(a, b2);
        CHECK(v.f * v.f - v.f * v.g + v.g * v.g == v.h * v.h);
        CHECK(v.f + v.g - F(2) * v.h == F(3) * a * v.g);
        CHECK((v.g - v.f) * (v.f - v.h) * (v.f - v.h) == F(t) * v.g * v.g * v.g);
        const Fp lambda = lambda_from_torsion(F(t), a);
        const Fp root = torsion_root(F(t), a);
        CHECK(root * root == lambda_delta(lambda));
        bool back = false;
        for (int eps : {-1, 1}) back = back || torsion_abscissa(lambda, eps, F.ext(root)) == F.ext(a);
        CHECK(back);
      }
    }
  }
}
