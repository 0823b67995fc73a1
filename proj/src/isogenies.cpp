#include "ltavg/isogenies.hpp"

#include <array>
#include <vector>
#include <stdexcept>

namespace ltavg {

Fp lambda_delta(Fp lambda) { return lambda * lambda - lambda + lambda.with(1); }

Fp2 legendre_param(Fp lambda, int sign, const Fp2& root) {
  const Fp2 l = root.from_fp(lambda);
  const Fp2 r = sign > 0 ? root : -root;
  return (l.one() - l) * (l + r).square();
}

NormalFormParams normal_form(Fp lambda, int eps, const Fp2& root) {
  if (eps != 1 && eps != -1) throw DomainError("eps must be +1 or -1");
  if (lambda.is_zero() || lambda.value() == 1) throw DomainError("lambda must avoid 0 and 1");
  const Fp delta = lambda_delta(lambda);
  if (delta.is_zero()) throw DomainError("lambda^2 - lambda + 1 vanishes");
  if (root.square() != root.from_fp(delta)) throw DomainError("supplied root does not square to delta");
  const Fp2 l = root.from_fp(lambda);
  const Fp2 d = root.from_fp(delta);
  const Fp2 er = eps > 0 ? root : -root;
  NormalFormParams nf;
  nf.eps = eps;
  nf.lambda = lambda;
  nf.root = root;
  nf.A = d * (l * l.from_int(2) - l.one() + er * er.from_int(2));
  if (nf.A.is_zero()) throw std::logic_error("normal form coefficient A vanished");
  const Fp2 five = l.from_int(5);
  nf.B = -(d * l.from_int(2) * (l * l.from_int(2) - l.one()) + er * (five * l * l - five * l + l.from_int(2))) /
         (d * d.from_int(9));
  nf.shift = (l + l.one() + er * er.from_int(2)) / l.from_int(3);
  nf.second_form_constant =
      l.from_int(2) / l.from_int(27) -
      er * (l + l.one()) * (l - l.from_int(2)) * (l * l.from_int(2) - l.one()) / (d.square() * d.from_int(27));
  return nf;
}

WeierstrassCurve descent_curve(const Fp2& a, const Fp2& b) {
  return WeierstrassCurve(a, -a * b * a.from_int(2), a * b * b);
}

std::pair<Fp2, Fp2> descent_quotient(const Fp2& a, const Fp2& b) {
  return {-a * a.from_int(27), a * a.from_int(4) + b * b.from_int(27)};
}

CurvePoint descend_by_3(const Fp2& a, const Fp2& b, const CurvePoint& P) {
  const WeierstrassCurve E = descent_curve(a, b);
  if (!E.contains(P)) throw DomainError("point not on y^2 = x^3 + a(x-b)^2");
  if (P.infinity || P.x.is_zero()) return CurvePoint::at_infinity();
  const Fp2& x = P.x;
  const Fp2& y = P.y;
  const Fp2 x2 = x.square();
  const Fp2 x3 = x2 * x;
  const Fp2 ab = a * b;
  const Fp2 xi = x.from_int(3) *
                 (y.square() * x.from_int(6) + ab * b * x.from_int(6) - x3 * x.from_int(3) - a * x2 * x.from_int(2)) / x2;
  const Fp2 nu = x.from_int(27) * y * (-ab * x * x.from_int(4) + ab * b * x.from_int(8) - x3) / x3;
  const auto [qa, qb] = descent_quotient(a, b);
  const CurvePoint image = CurvePoint::affine(xi, nu);
  if (!descent_curve(qa, qb).contains(image)) throw std::logic_error("descent image off the quotient curve");
  return image;
}

CurvePoint descend_by_3_pure_cubic(const Fp2& d, const CurvePoint& P) {
  const WeierstrassCurve E(d.zero(), d.zero(), d);
  if (!E.contains(P)) throw DomainError("point not on y^2 = x^3 + d");
  if (P.infinity || P.x.is_zero()) return CurvePoint::at_infinity();
  const Fp2 x3 = P.x.square() * P.x;
  const Fp2 u = (P.y.square() + d * d.from_int(3)) / P.x.square();
  const Fp2 v = P.y * (x3 - d * d.from_int(8)) / x3;
  const CurvePoint image = CurvePoint::affine(u, v);
  if (!WeierstrassCurve(d.zero(), d.zero(), -d * d.from_int(27)).contains(image))
    throw std::logic_error("descent image off the quotient curve");
  return image;
}

namespace {

// One coefficient r*P(lambda) + Q(lambda); lists run from the highest power.
struct Coef {
  std::vector<int> root_part;
  std::vector<int> plain_part;
};

Fp2 poly_in_lambda(const std::vector<int>& c, const Fp2& l) {
  Fp2 acc = l.zero();
  for (int v : c) acc = acc * l + l.from_int(v);
  return acc;
}

Fp2 coef_value(const Coef& c, const Fp2& l, const Fp2& r) {
  return r * poly_in_lambda(c.root_part, l) + poly_in_lambda(c.plain_part, l);
}

// Abscissa map, numerator scaled by 9: terms x^5, x^4, x^3, x^2 y^2, x^2, x y^2, x, y^2.
const std::array<Coef, 8> kAbscissaNum = {{
    {{-8, 4}, {-8, 8, -5}},
    {{12, 8, 0}, {12, 2, -4, 12}},
    {{-24, 0, -8}, {-24, 18, -20, -6}},
    {{16, -8}, {16, -16, 10}},
    {{-4, 8, 4, 8, 0}, {-4, 10, 4, -10, 20, -4}},
    {{-32, 16, -8}, {-32, 32, -28, 4}},
    {{4, -8, 8, -8, 4}, {4, -9, 8, -2, -4, 3}},
    {{16, -8, 8, 0}, {16, -16, 18, -4, 2}},
}};
// Denominator scaled by 9, from x^4 down to x^0.
const std::array<std::vector<int>, 5> kAbscissaDen = {{
    {9}, {-12, -12}, {-2, 20, -2}, {4, -4, -4, 4}, {1, -4, 6, -4, 1}}};

// Ordinate map divided by y, numerator scaled by 27, from x^6 down to x^0.
const std::array<Coef, 7> kOrdinateNum = {{
    {{-32, 32, -14}, {-32, 48, -42, 13}},
    {{64, 0, -36, 28}, {64, -32, -12, 58, -26}},
    {{-160, 146, -56, -2}, {-160, 226, -189, 44, 7}},
    {{-64, 160, -40, -72, 72, -24}, {-64, 192, -144, -4, 108, -60, 4}},
    {{32, 0, -138, 176, -84, 0, 14}, {32, -16, -126, 251, -232, 114, -34, 11}},
    {{-32, 76, -52, -8, 24, -4, -4}, {-32, 92, -102, 38, 36, -56, 34, -10}},
    {{6, -24, 38, -32, 18, -8, 2}, {6, -27, 52, -57, 38, -13, 0, 1}},
}};
const std::array<std::vector<int>, 7> kOrdinateDen = {{
    {27}, {-54, -54}, {9, 126, 9}, {28, -60, -60, 28}, {-3, -36, 78, -36, -3},
    {-6, 18, -12, -12, 18, -6}, {-1, 6, -15, 20, -15, 6, -1}}};

}  // namespace

IsogenyMap::IsogenyMap(Fp lambda, int eps, const Fp2& root)
    : lambda_(lambda),
      eps_(eps),
      root_(eps > 0 ? -root : root),
      domain_(legendre_param(lambda, eps, root)),
      codomain_(legendre_param(lambda, -eps, root)),
      dom_curve_(domain_),
      cod_curve_(codomain_),
      nf_(normal_form(lambda, eps, root)) {
  const Fp2 l = root.from_fp(lambda);
  const Fp2 er = eps > 0 ? root : -root;
  rescale_ = (l * l.from_int(2) - er * er.from_int(2) - l.one()) / l.from_int(9);
  back_shift_ = (l + l.one() - er * er.from_int(2)) / l.from_int(3);
  kernel_x_ = nf_.shift;
}

std::optional<Fp2> IsogenyMap::abscissa(const Fp2& x, const Fp2& y2) const {
  const Fp2 l = root_.from_fp(lambda_);
  Fp2 s_den = x.zero();
  for (const auto& c : kAbscissaDen) s_den = s_den * x + poly_in_lambda(c, l);
  if (s_den.is_zero()) return std::nullopt;
  std::array<Fp2, 8> sc;
  for (std::size_t i = 0; i < sc.size(); ++i) sc[i] = coef_value(kAbscissaNum[i], l, root_);
  const Fp2 x2 = x.square();
  const Fp2 s_num = ((sc[0] * x + sc[1]) * x + sc[2]) * x2 * x + sc[3] * x2 * y2 + sc[4] * x2 + sc[5] * x * y2 +
                    sc[6] * x + sc[7] * y2;
  return s_num / s_den;
}

std::optional<Fp2> IsogenyMap::abscissa(const Fp2& x) const { return abscissa(x, dom_curve_.model().rhs(x)); }

std::optional<CurvePoint> IsogenyMap::closed_form(const CurvePoint& P) const {
  if (P.infinity) return CurvePoint::at_infinity();
  const Fp2 l = root_.from_fp(lambda_);
  const Fp2& x = P.x;
  Fp2 t_den = x.zero();
  for (const auto& c : kOrdinateDen) t_den = t_den * x + poly_in_lambda(c, l);
  const auto s = abscissa(x, P.y.square());
  if (!s || t_den.is_zero()) return std::nullopt;
  Fp2 t_num = x.zero();
  for (const auto& c : kOrdinateNum) t_num = t_num * x + coef_value(c, l, root_);
  return CurvePoint::affine(*s, P.y * t_num / t_den);
}

CurvePoint IsogenyMap::via_chain(const CurvePoint& P) const {
  if (P.infinity) return P;
  const Fp2 X = P.x - nf_.shift;
  if (X.is_zero()) return CurvePoint::at_infinity();
  const CurvePoint down = descend_by_3(nf_.A, nf_.B, CurvePoint::affine(X, P.y));
  const Fp2 r2 = rescale_.square();
  return CurvePoint::affine(down.x * r2 + back_shift_, down.y * r2 * rescale_);
}

CurvePoint IsogenyMap::operator()(const CurvePoint& P) const {
  if (!dom_curve_.model().contains(P)) throw DomainError("point not on the domain curve");
  CurvePoint image;
  if (!P.infinity && P.x == kernel_x_) {
    image = CurvePoint::at_infinity();
  } else if (auto cf = closed_form(P)) {
    image = *cf;
  } else {
    image = via_chain(P);
  }
  if (!cod_curve_.model().contains(image)) throw std::logic_error("isogeny image off the codomain curve");
  return image;
}

bool compose_is_minus3(Fp lambda, int trials, std::uint64_t seed) {
  const PrimeField field(lambda.modulus());
  const Fp2 root = sqrt_in_fp2(field, lambda_delta(lambda));
  const IsogenyMap minus(lambda, -1, root);
  const IsogenyMap plus(lambda, 1, root);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const CurvePoint P = minus.domain().model().random_point(rng);
    if (plus(minus(P)) != minus.domain().model().mul(-3, P)) return false;
    const CurvePoint Q = plus.domain().model().random_point(rng);
    if (minus(plus(Q)) != plus.domain().model().mul(-3, Q)) return false;
  }
  return true;
}

IsogenyAnchors isogeny_anchors(Fp lambda) {
  const PrimeField field(lambda.modulus());
  const Fp2 root = sqrt_in_fp2(field, lambda_delta(lambda));
  const Fp2 zero = field.ext(0), one = field.ext(1);
  IsogenyAnchors a;
  for (int eps : {-1, 1}) {
    const IsogenyMap m(lambda, eps, root);
    a.origin = a.origin && m(CurvePoint::affine(zero, zero)) == CurvePoint::affine(zero, zero);
    a.unit = a.unit && m(CurvePoint::affine(one, zero)) == CurvePoint::affine(one, zero);
    a.two_torsion = a.two_torsion && m(CurvePoint::affine(m.domain_param(), zero)) ==
                                         CurvePoint::affine(m.codomain_param(), zero);
    // Both kernel points share the abscissa; the closed form has a pole there.
    bool kernel = !m.abscissa(m.kernel_x()).has_value();
    if (auto y = sqrt_fp2(m.domain().model().rhs(m.kernel_x()))) {
      kernel = kernel && m(CurvePoint::affine(m.kernel_x(), *y)).infinity &&
               m(CurvePoint::affine(m.kernel_x(), -*y)).infinity;
    }
    a.kernel = a.kernel && kernel;
  }
  return a;
}

}  // namespace ltavg
