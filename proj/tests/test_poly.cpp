#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ltavg/poly.hpp"
#include "ltavg/zpoly.hpp"

using namespace ltavg;

namespace {

Fp2Poly from_roots(const std::vector<Fp2>& roots) {
  Fp2Poly f({roots.front().one()});
  for (const Fp2& r : roots) f = f * Fp2Poly::linear_from_root(r);
  return f;
}

}  // namespace

TEST_CASE("division identity") {
  const PrimeField F(101);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> pick(0, 101 * 101 - 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Fp2> a(8), b(4);
    for (auto& c : a) c = F.fp2_from_index(pick(rng));
    for (auto& c : b) c = F.fp2_from_index(pick(rng));
    b.back() = F.ext(1, 1);
    const Fp2Poly A(a), B(b);
    const auto [q, r] = A.divmod(B);
    CHECK(q * B + r == A);
    CHECK(r.degree() < B.degree());
  }
}

TEST_CASE("roots of split polynomials, scan and splitting agree") {
  for (std::uint32_t p : {7u, 13u, 61u, 503u}) {
    const PrimeField F(p);
    const std::vector<Fp2> roots = {F.ext(1, 2), F.ext(3), F.ext(0, 5), F.ext(3)};
    const Fp2Poly f = from_roots(roots) * Fp2Poly({F.ext(F.nonresidue()), F.ext(0), F.ext(0), F.ext(1)}).monic();
    std::vector<Fp2> distinct = {F.ext(1, 2), F.ext(3), F.ext(0, 5)};
    std::sort(distinct.begin(), distinct.end(), Fp2Less());
    const auto fast = roots_in_fp2(f);
    for (const Fp2& r : distinct) CHECK(std::find(fast.begin(), fast.end(), r) != fast.end());
    for (const Fp2& r : fast) CHECK(f.eval(r).is_zero());
    if (p <= 61) CHECK(roots_by_scan(f, F) == fast);
    CHECK(root_multiplicity(f, F.ext(3)) == 2);
    CHECK(root_multiplicity(f, F.ext(1, 2)) == 1);
    CHECK(root_multiplicity(f, F.ext(2)) == 0);
  }
}

TEST_CASE("gcd is monic and divides") {
  const PrimeField F(13);
  const Fp2Poly g = from_roots({F.ext(2), F.ext(5, 1)});
  const Fp2Poly a = g * from_roots({F.ext(7)});
  const Fp2Poly b = g * from_roots({F.ext(8), F.ext(9)});
  CHECK(poly_gcd(a, b) == g);
}

TEST_CASE("integer polynomials") {
  const ZPoly f = {mpz_class(-6), mpz_class(1), mpz_class(1)};  // (X+3)(X-2)
  CHECK(zpoly_eval(f, 2) == 0);
  CHECK(zpoly_degree(f) == 2);
  CHECK(zpoly_to_string(f) == "X^2 + X - 6");
  std::vector<mpz_class> xs, ys;
  for (int x = -3; x <= 3; ++x) {
    xs.emplace_back(x);
    ys.push_back(zpoly_eval(zpoly_mul(f, f), x));
  }
  CHECK(interpolate_integer(xs, ys) == zpoly_mul(f, f));
  CHECK_THROWS(interpolate_integer({0, 2}, {0, 1}));
  CHECK(bareiss_determinant({{2, 3}, {5, 7}}) == -1);
  CHECK(bareiss_determinant({{0, 1, 2}, {3, 4, 5}, {6, 7, 9}}) == -3);
  // Res(X^2 - 2, X - 1) = -1; Res(f, f') vanishes only for repeated roots.
  CHECK(resultant({-2, 0, 1}, {-1, 1}) == -1);
  CHECK(resultant(zpoly_mul(f, {-2, 1}), {1, -4, 3}) != 0);
  CHECK(resultant({4, -4, 1}, {-4, 2}) == 0);
}
