// Elliptic curves y^2 = x^3 + a2 x^2 + a4 x + a6 over F_{p^2}, with the
// Legendre family y^2 = x(x-1)(x-t) as the main client.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "ltavg/fields.hpp"
#include "ltavg/poly.hpp"

namespace ltavg {

struct CurvePoint {
  bool infinity = true;
  Fp2 x, y;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(const Fp2& x, const Fp2& y) { return {false, x, y}; }
  bool operator==(const CurvePoint& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
  }
  bool operator!=(const CurvePoint& o) const { return !(*this == o); }
};

class WeierstrassCurve {
 public:
  // Rejects singular cubics.
  WeierstrassCurve(const Fp2& a2, const Fp2& a4, const Fp2& a6);

  const Fp2& a2() const { return a2_; }
  const Fp2& a4() const { return a4_; }
  const Fp2& a6() const { return a6_; }
  std::uint32_t p() const { return a2_.modulus(); }

  Fp2 rhs(const Fp2& x) const { return ((x + a2_) * x + a4_) * x + a6_; }
  bool contains(const CurvePoint& P) const { return P.infinity || P.y.square() == rhs(P.x); }

  CurvePoint negate(const CurvePoint& P) const;
  CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const;  // rejects off-curve input
  CurvePoint mul(std::int64_t n, const CurvePoint& P) const;
  // x-coordinate of 2P for any P with abscissa x (P need not be F_{p^2}-rational).
  std::optional<Fp2> double_x(const Fp2& x) const;
  // Uniform x in F_{p^2}, accepted when the cubic is a square; canonical y.
  CurvePoint random_point(std::mt19937_64& rng) const;

 private:
  CurvePoint add_unchecked(const CurvePoint& P, const CurvePoint& Q) const;
  Fp2 a2_, a4_, a6_;
};

class LegendreCurve {
 public:
  explicit LegendreCurve(const Fp2& t);  // rejects t in {0, 1}

  const Fp2& t() const { return t_; }
  std::uint32_t p() const { return t_.modulus(); }
  const WeierstrassCurve& model() const { return model_; }

 private:
  Fp2 t_;
  WeierstrassCurve model_;
};

Fp2 j_invariant(const LegendreCurve& c);
Fp2 legendre_j(const Fp2& t);  // same formula; rejects t in {0, 1}

CurvePoint group_law(const CurvePoint& P, const CurvePoint& Q, const LegendreCurve& c);
CurvePoint scalar_mul(std::int64_t n, const CurvePoint& P, const LegendreCurve& c);

inline constexpr std::uint32_t kDefaultCountBound = 2000;
// Exact #E(F_p) (degree 1, t must lie in F_p) or #E(F_{p^2}) by enumeration.
std::uint64_t count_points(const LegendreCurve& c, int extension_degree,
                           std::uint32_t bound = kDefaultCountBound);

// C(m,k)^2 mod p for m = (p-1)/2, k = 0..m.  Memoized per p.
std::shared_ptr<const std::vector<std::uint32_t>> deuring_coefficients(std::uint32_t p);
// H_p(t) evaluated with the given coefficient table.
Fp2 deuring_eval(const std::vector<std::uint32_t>& coeffs, const Fp2& t);
bool is_supersingular(const LegendreCurve& c);
bool is_supersingular_parameter(const Fp2& t);  // rejects t in {0, 1}

// 3x^4 - 4(1+L)x^3 + 6L x^2 - L^2.
Fp2Poly psi3_polynomial(const Fp2& lambda_param);
inline constexpr std::uint32_t kPsi3ScanBound = 500;
// Roots in F_{p^2}, each confirmed to be the abscissa of a 3-torsion point.
std::vector<Fp2> psi3_roots(const Fp2& lambda_param);
// Roots lying in F_p only (scan of p values).
std::vector<Fp2> psi3_roots_fp(const Fp2& lambda_param);
// True when x is the abscissa of a point of exact order 3 on the curve.
bool is_three_torsion_abscissa(const WeierstrassCurve& E, const Fp2& x);

}  // namespace ltavg
