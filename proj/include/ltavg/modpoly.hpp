// Classical modular polynomials of level 2 and 3 and the level-3
// discriminant (resultant) identity.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ltavg/fields.hpp"
#include "ltavg/zpoly.hpp"

namespace ltavg {

class ModularPolynomial {
 public:
  int level() const { return level_; }
  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  // Coefficient of X^i Y^j.
  const mpz_class& coeff(int i, int j) const { return coeff_[i][j]; }

  Fp2 eval(const Fp2& x, const Fp2& y) const;
  ZPoly specialize_y(const mpz_class& y) const;  // polynomial in X
  ZPoly diagonal() const;                          // Phi(X, X)
  bool is_symmetric() const;

  // Parses `level i j coefficient` rows; '#' starts a comment.
  static std::vector<ModularPolynomial> parse(std::string_view text);

 private:
  int level_ = 0;
  std::vector<std::vector<mpz_class>> coeff_;
};

std::string_view modular_table_text();
std::uint64_t fnv1a64(std::string_view bytes);
// Throws DomainError for levels other than 2 and 3.
const ModularPolynomial& modular_polynomial(int level);
Fp2 modular_poly_eval(int level, const Fp2& x, const Fp2& y);

struct ResultantCheck {
  ZPoly resultant;   // Res_X(Phi_3, d/dX Phi_3) as a polynomial in Y
  ZPoly product;     // P3^2 P4^2 P8^2 P11^2 P20^2 P32^2 P35^2
  mpz_class factor;  // resultant = factor * product when proportional, else 0
  bool proportional = false;
  bool holds_up_to_sign = false;  // factor is +1 or -1
};

// Interpolates the resultant from exact evaluations at integer Y.
ResultantCheck level3_discriminant_check();

}  // namespace ltavg
