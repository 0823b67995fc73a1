#include "ltavg/curves.hpp"

#include <map>
#include <mutex>

namespace ltavg {

namespace {

Fp2 cubic_discriminant(const Fp2& a, const Fp2& b, const Fp2& c) {
  // x^3 + a x^2 + b x + c
  const Fp2 ab = a * b;
  return ab * ab - b * b * b * b.from_int(4) - a * a * a * c * c.from_int(4) -
         c * c * c.from_int(27) + ab * c * c.from_int(18);
}

}  // namespace

WeierstrassCurve::WeierstrassCurve(const Fp2& a2, const Fp2& a4, const Fp2& a6)
    : a2_(a2), a4_(a4), a6_(a6) {
  if (cubic_discriminant(a2, a4, a6).is_zero()) throw DomainError("singular cubic");
}

CurvePoint WeierstrassCurve::negate(const CurvePoint& P) const {
  if (P.infinity) return P;
  return CurvePoint::affine(P.x, -P.y);
}

CurvePoint WeierstrassCurve::add_unchecked(const CurvePoint& P, const CurvePoint& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  Fp2 m;
  if (P.x == Q.x) {
    if (P.y != Q.y || P.y.is_zero()) return CurvePoint::at_infinity();
    const Fp2 x2 = P.x.square();
    m = (x2 * x2.from_int(3) + a2_ * P.x * P.x.from_int(2) + a4_) / (P.y * P.y.from_int(2));
  } else {
    m = (Q.y - P.y) / (Q.x - P.x);
  }
  const Fp2 x3 = m.square() - a2_ - P.x - Q.x;
  const Fp2 y3 = m * (P.x - x3) - P.y;
  return CurvePoint::affine(x3, y3);
}

CurvePoint WeierstrassCurve::add(const CurvePoint& P, const CurvePoint& Q) const {
  if (!contains(P) || !contains(Q)) throw DomainError("point not on curve");
  return add_unchecked(P, Q);
}

CurvePoint WeierstrassCurve::mul(std::int64_t n, const CurvePoint& P) const {
  if (!contains(P)) throw DomainError("point not on curve");
  CurvePoint base = n < 0 ? negate(P) : P;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  CurvePoint acc = CurvePoint::at_infinity();
  while (k) {
    if (k & 1) acc = add_unchecked(acc, base);
    base = add_unchecked(base, base);
    k >>= 1;
  }
  return acc;
}

std::optional<Fp2> WeierstrassCurve::double_x(const Fp2& x) const {
  const Fp2 f = rhs(x);
  if (f.is_zero()) return std::nullopt;
  const Fp2 df = x.square() * x.from_int(3) + a2_ * x * x.from_int(2) + a4_;
  return df.square() / (f * f.from_int(4)) - a2_ - x * x.from_int(2);
}

CurvePoint WeierstrassCurve::random_point(std::mt19937_64& rng) const {
  const std::uint32_t p = this->p();
  for (;;) {
    const Fp2 x(a2_.a().with(static_cast<std::int64_t>(rng() % p)),
                a2_.a().with(static_cast<std::int64_t>(rng() % p)), a2_.nonresidue());
    if (auto y = sqrt_fp2(rhs(x))) return CurvePoint::affine(x, *y);
  }
}

LegendreCurve::LegendreCurve(const Fp2& t)
    : t_(t),
      model_((t.is_zero() || t == t.one())
                 ? throw DomainError("singular Legendre parameter t = " + t.to_string())
                 : WeierstrassCurve(-(t.one() + t), t, t.zero())) {}

Fp2 legendre_j(const Fp2& t) {
  if (t.is_zero() || t == t.one()) throw DomainError("singular Legendre parameter t = " + t.to_string());
  const Fp2 u = t.square() - t + t.one();
  const Fp2 den = t.square() * (t - t.one()).square();
  return u * u * u * t.from_int(256) / den;
}

Fp2 j_invariant(const LegendreCurve& c) { return legendre_j(c.t()); }

CurvePoint group_law(const CurvePoint& P, const CurvePoint& Q, const LegendreCurve& c) {
  return c.model().add(P, Q);
}

CurvePoint scalar_mul(std::int64_t n, const CurvePoint& P, const LegendreCurve& c) {
  return c.model().mul(n, P);
}

std::uint64_t count_points(const LegendreCurve& c, int extension_degree, std::uint32_t bound) {
  const std::uint32_t p = c.p();
  if (extension_degree != 1 && extension_degree != 2) throw DomainError("extension degree must be 1 or 2");
  if (p > bound) throw DomainError("p = " + std::to_string(p) + " exceeds enumeration bound " + std::to_string(bound));
  if (extension_degree == 1 && !c.t().in_base_field()) throw DomainError("degree-1 count needs t in F_p");
  // chi(v) for v in F_p by marking squares.
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t v = 1; v < p; ++v) chi[v * v % p] = 1;
  const Fp2& t = c.t();
  std::uint64_t count = 1;
  if (extension_degree == 1) {
    const std::uint64_t tv = t.a().value();
    for (std::uint64_t x = 0; x < p; ++x) {
      const std::uint64_t f = x * ((x + p - 1) % p) % p * ((x + p - tv) % p) % p;
      count += 1 + chi[f];
    }
    return count;
  }
  const PrimeField field(p);
  const std::uint64_t q = static_cast<std::uint64_t>(p) * p;
  for (std::uint64_t i = 0; i < q; ++i) {
    const Fp2 x = field.fp2_from_index(i);
    const Fp2 f = x * (x - x.one()) * (x - t);
    count += 1 + chi[f.norm().value()];
  }
  return count;
}

std::shared_ptr<const std::vector<std::uint32_t>> deuring_coefficients(std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const std::vector<std::uint32_t>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
  }
  const PrimeField field(p);
  const std::uint32_t m = (p - 1) / 2;
  auto coeffs = std::make_shared<std::vector<std::uint32_t>>(m + 1);
  Fp binom = field(1);
  for (std::uint32_t k = 0; k <= m; ++k) {
    (*coeffs)[k] = (binom * binom).value();
    if (k < m) binom = binom * field(m - k) / field(k + 1);
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(p, std::move(coeffs));
  return it->second;
}

Fp2 deuring_eval(const std::vector<std::uint32_t>& coeffs, const Fp2& t) {
  const std::uint64_t p = t.modulus();
  const std::uint64_t u = t.a().value();
  const std::uint64_t v = t.b().value();
  std::uint64_t x = 0, y = 0;
  if (v == 0) {
    for (std::size_t k = coeffs.size(); k-- > 0;) x = (x * u + coeffs[k]) % p;
  } else {
    const std::uint64_t nv = static_cast<std::uint64_t>(t.nonresidue().value()) * v % p;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      const std::uint64_t nx = (x * u + y * nv + coeffs[k]) % p;
      y = (x * v + y * u) % p;
      x = nx;
    }
  }
  return Fp2(t.a().with(static_cast<std::int64_t>(x)), t.a().with(static_cast<std::int64_t>(y)), t.nonresidue());
}

bool is_supersingular_parameter(const Fp2& t) {
  if (t.is_zero() || t == t.one()) throw DomainError("singular Legendre parameter t = " + t.to_string());
  return deuring_eval(*deuring_coefficients(t.modulus()), t).is_zero();
}

bool is_supersingular(const LegendreCurve& c) { return is_supersingular_parameter(c.t()); }

Fp2Poly psi3_polynomial(const Fp2& L) {
  if (L.is_zero() || L == L.one()) throw DomainError("singular Legendre parameter t = " + L.to_string());
  return Fp2Poly({-L.square(), L.zero(), L * L.from_int(6), -(L.one() + L) * L.from_int(4), L.from_int(3)});
}

bool is_three_torsion_abscissa(const WeierstrassCurve& E, const Fp2& x) {
  if (auto y = sqrt_fp2(E.rhs(x))) {
    return E.mul(3, CurvePoint::affine(x, *y)).infinity;
  }
  const auto x2 = E.double_x(x);
  return x2 && *x2 == x;
}

std::vector<Fp2> psi3_roots(const Fp2& L) {
  const Fp2Poly f = psi3_polynomial(L);
  const PrimeField field(L.modulus());
  std::vector<Fp2> roots = L.modulus() <= kPsi3ScanBound ? roots_by_scan(f, field) : roots_in_fp2(f);
  const LegendreCurve c(L);
  for (const auto& r : roots) {
    if (!is_three_torsion_abscissa(c.model(), r)) throw std::logic_error("psi3 root is not 3-torsion: " + r.to_string());
  }
  return roots;
}

std::vector<Fp2> psi3_roots_fp(const Fp2& L) {
  const Fp2Poly f = psi3_polynomial(L);
  std::vector<Fp2> roots;
  for (std::uint32_t v = 0; v < L.modulus(); ++v) {
    const Fp2 x = L.from_int(v);
    if (f.eval(x).is_zero()) roots.push_back(x);
  }
  return roots;
}

}  // namespace ltavg
