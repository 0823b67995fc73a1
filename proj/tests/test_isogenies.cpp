#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ltavg/curves.hpp"
#include "ltavg/isogenies.hpp"

using namespace ltavg;

namespace {

bool admissible(Fp l) { return !l.is_zero() && l.value() != 1 && !lambda_delta(l).is_zero(); }

}  // namespace

TEST_CASE("anchors of the closed form") {
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 29u, 101u}) {
    const PrimeField F(p);
    for (std::uint32_t l = 2; l < p; ++l) {
      if (!admissible(F(l))) continue;
      const IsogenyAnchors a = isogeny_anchors(F(l));
      CHECK_MESSAGE(a.all(), "p = ", p, ", lambda = ", l);
    }
  }
}

TEST_CASE("closed form agrees with the descent chain") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {7u, 13u, 37u, 103u, 499u}) {
    const PrimeField F(p);
    for (std::uint32_t l = 2; l < std::min<std::uint32_t>(p, 30); ++l) {
      if (!admissible(F(l))) continue;
      const Fp2 root = sqrt_in_fp2(F, lambda_delta(F(l)));
      for (int eps : {-1, 1}) {
        const IsogenyMap m(F(l), eps, root);
        CHECK(m.domain_param() == legendre_param(F(l), eps, root));
        CHECK(m.codomain_param() == legendre_param(F(l), -eps, root));
        for (int i = 0; i < 10; ++i) {
          const CurvePoint P = m.domain().model().random_point(rng);
          const CurvePoint image = m(P);
          CHECK(m.codomain().model().contains(image));
          if (auto cf = m.closed_form(P)) CHECK(*cf == m.via_chain(P));
        }
      }
    }
  }
}

TEST_CASE("composition is [-3]") {
  for (std::uint32_t p : {5u, 7u, 13u, 47u, 211u}) {
    const PrimeField F(p);
    for (std::uint32_t l = 2; l < std::min<std::uint32_t>(p, 20); ++l) {
      if (admissible(F(l))) CHECK(compose_is_minus3(F(l), 10, 1000 + l));
    }
  }
  // Points of order 3 die.
  const PrimeField F(13);
  const Fp2 root = sqrt_in_fp2(F, lambda_delta(F(3)));
  const IsogenyMap minus(F(3), -1, root), plus(F(3), 1, root);
  for (const Fp2& x : psi3_roots(minus.domain_param())) {
    if (auto y = sqrt_fp2(minus.domain().model().rhs(x))) {
      CHECK(plus(minus(CurvePoint::affine(x, *y))).infinity);
    }
  }
}

TEST_CASE("descent maps land on the quotient") {
  std::mt19937_64 rng(5);
  const PrimeField F(103);
  const Fp2 a = F.ext(4, 1), b = F.ext(7, 2);
  const WeierstrassCurve E = descent_curve(a, b);
  const auto [a1, b1] = descent_quotient(a, b);
  CHECK(a1 == a * F.ext(-27));
  CHECK(b1 == a * F.ext(4) + b * F.ext(27));
  const Fp2 inv729 = F.ext(729).inv(), inv19683 = F.ext(19683).inv();
  int plus = 0, minus = 0;
  for (int i = 0; i < 40; ++i) {
    const CurvePoint P = E.random_point(rng);
    if (!P.infinity && P.x.is_zero()) {
      CHECK(descend_by_3(a, b, P).infinity);
      continue;
    }
    const CurvePoint Q = descend_by_3(a, b, P);
    CHECK(descent_curve(a1, b1).contains(Q));
    // Twice down reaches (729a, 729b), isomorphic to E by (x, y) -> (x/729, y/19683).
    const CurvePoint R = descend_by_3(a1, b1, Q);
    const CurvePoint back = R.infinity ? R : CurvePoint::affine(R.x * inv729, R.y * inv19683);
    if (back == E.mul(3, P)) ++plus;
    if (back == E.mul(-3, P)) ++minus;
  }
  CHECK(plus + minus >= 40 - 2);
  CHECK((plus == 0 || minus == 0));

  const Fp2 d = F.ext(5, 3);
  const WeierstrassCurve C(F.ext(0), F.ext(0), d);
  for (int i = 0; i < 20; ++i) {
    const CurvePoint P = C.random_point(rng);
    const CurvePoint Q = descend_by_3_pure_cubic(d, P);
    CHECK(WeierstrassCurve(F.ext(0), F.ext(0), d * F.ext(-27)).contains(Q));
    const CurvePoint R = descend_by_3_pure_cubic(d * F.ext(-27), Q);
    const CurvePoint back = R.infinity ? R : CurvePoint::affine(R.x * F.ext(9).inv(), R.y * F.ext(27).inv());
    CHECK((back == C.mul(3, P) || back == C.mul(-3, P)));
  }
}

TEST_CASE("rejections") {
  const PrimeField F(13);
  const Fp2 root = sqrt_in_fp2(F, lambda_delta(F(3)));
  CHECK_THROWS_AS(normal_form(F(0), 1, root), DomainError);
  CHECK_THROWS_AS(normal_form(F(1), 1, root), DomainError);
  CHECK_THROWS_AS(normal_form(F(3), 1, root + F.ext(1)), DomainError);
  const IsogenyMap m(F(3), 1, root);
  CHECK_THROWS_AS(m(CurvePoint::affine(F.ext(2), F.ext(2))), DomainError);
}
