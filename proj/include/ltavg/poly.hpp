// Dense univariate polynomials over F_{p^2}, coefficients low degree first.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ltavg/fields.hpp"

namespace ltavg {

class Fp2Poly {
 public:
  Fp2Poly() = default;
  explicit Fp2Poly(std::vector<Fp2> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Fp2>& coeffs() const { return c_; }
  const Fp2& operator[](std::size_t i) const { return c_[i]; }
  const Fp2& lead() const { return c_.back(); }

  Fp2 eval(const Fp2& x) const;
  Fp2Poly derivative() const;
  Fp2Poly monic() const;

  Fp2Poly operator+(const Fp2Poly& o) const;
  Fp2Poly operator-(const Fp2Poly& o) const;
  Fp2Poly operator*(const Fp2Poly& o) const;
  bool operator==(const Fp2Poly& o) const { return c_ == o.c_; }

  // (quotient, remainder); divisor must be nonzero.
  std::pair<Fp2Poly, Fp2Poly> divmod(const Fp2Poly& d) const;
  Fp2Poly operator%(const Fp2Poly& d) const { return divmod(d).second; }

  static Fp2Poly linear_from_root(const Fp2& r);  // X - r

 private:
  void trim();
  std::vector<Fp2> c_;
};

Fp2Poly poly_gcd(Fp2Poly a, Fp2Poly b);  // monic, or zero
// base^e mod m.
Fp2Poly poly_powmod(const Fp2Poly& base, std::uint64_t e, const Fp2Poly& m);

// Distinct roots in F_{p^2}, sorted by canonical encoding.  Uses gcd with
// X^{p^2} - X then randomized equal-degree splitting under a fixed seed.
std::vector<Fp2> roots_in_fp2(const Fp2Poly& f, std::uint64_t seed = 0x5eed);
// Roots by testing every element of F_{p^2}.
std::vector<Fp2> roots_by_scan(const Fp2Poly& f, const PrimeField& field);
// Multiplicity of r as a root of f (0 if not a root).
int root_multiplicity(Fp2Poly f, const Fp2& r);

}  // namespace ltavg
