// Degree-3 isogenies between the Legendre curves attached to lambda:
// normal forms, descent by 3, the explicit maps and their composition.
#pragma once

#include <cstdint>
#include <utility>

#include "ltavg/curves.hpp"
#include "ltavg/fields.hpp"

namespace ltavg {

// delta = lambda^2 - lambda + 1.
Fp lambda_delta(Fp lambda);
// (1 - lambda)(lambda + sign*root)^2, root^2 = delta.
Fp2 legendre_param(Fp lambda, int sign, const Fp2& root);

struct NormalFormParams {
  Fp2 A, B;
  int eps = 0;
  Fp lambda;
  Fp2 root;   // the fixed square root of delta
  Fp2 shift;  // x = X1 + shift carries E_{L^eps} to Y1^2 = X1^3 + A(X1 - B)^2
  // Second model Y2^2 = X2^3 + (X2 + c)^2.
  Fp2 second_form_constant;
};

// Rejects lambda in {0, 1}, delta = 0, or a root that does not square to delta.
NormalFormParams normal_form(Fp lambda, int eps, const Fp2& root);

// y^2 = x^3 + a(x - b)^2 as a Weierstrass model.
WeierstrassCurve descent_curve(const Fp2& a, const Fp2& b);
// Coefficients (a', b') of the 3-isogenous quotient curve: (-27a, 4a + 27b).
std::pair<Fp2, Fp2> descent_quotient(const Fp2& a, const Fp2& b);
// Image of P under the descent map; x = 0 points (the kernel) go to infinity.
CurvePoint descend_by_3(const Fp2& a, const Fp2& b, const CurvePoint& P);
// y^2 = x^3 + d  ->  v^2 = u^3 - 27d.
CurvePoint descend_by_3_pure_cubic(const Fp2& d, const CurvePoint& P);

class IsogenyMap {
 public:
  // Map E_{L^eps} -> E_{L^-eps} built from the fixed root of delta.
  IsogenyMap(Fp lambda, int eps, const Fp2& root);

  int eps() const { return eps_; }
  const Fp2& domain_param() const { return domain_; }
  const Fp2& codomain_param() const { return codomain_; }
  const LegendreCurve& domain() const { return dom_curve_; }
  const LegendreCurve& codomain() const { return cod_curve_; }
  // Abscissa of the kernel generator.
  const Fp2& kernel_x() const { return kernel_x_; }

  // Closed-form rational functions; falls back to the composition chain only
  // where their shared denominator vanishes away from the kernel.  Every image
  // is checked against the codomain equation.
  CurvePoint operator()(const CurvePoint& P) const;
  // Translate, descend, rescale, translate back.
  CurvePoint via_chain(const CurvePoint& P) const;
  // Raw closed form; nullopt where the denominator vanishes.
  std::optional<CurvePoint> closed_form(const CurvePoint& P) const;
  // Image abscissa from x alone; nullopt at a pole.
  std::optional<Fp2> abscissa(const Fp2& x) const;

 private:
  std::optional<Fp2> abscissa(const Fp2& x, const Fp2& y2) const;
  Fp lambda_;
  int eps_;
  Fp2 root_;   // sign-adjusted root used by the closed form
  Fp2 domain_, codomain_;
  LegendreCurve dom_curve_, cod_curve_;
  NormalFormParams nf_;
  Fp2 rescale_, back_shift_, kernel_x_;
};

// psi+ after psi- equals [-3] on `trials` random points of each curve.
bool compose_is_minus3(Fp lambda, int trials, std::uint64_t seed);

// Fixed points of both maps: (0,0) and (1,0) are fixed, the 2-torsion point
// (L^eps, 0) goes to (L^-eps, 0), and the kernel abscissa is a pole.
struct IsogenyAnchors {
  bool origin = true, unit = true, two_torsion = true, kernel = true;
  bool all() const { return origin && unit && two_torsion && kernel; }
};
IsogenyAnchors isogeny_anchors(Fp lambda);

}  // namespace ltavg
