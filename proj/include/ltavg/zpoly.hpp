// Integer polynomials, coefficients low degree first.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ltavg/fields.hpp"
#include "ltavg/poly.hpp"

namespace ltavg {

using ZPoly = std::vector<mpz_class>;

void zpoly_trim(ZPoly& f);
int zpoly_degree(const ZPoly& f);
ZPoly zpoly_mul(const ZPoly& f, const ZPoly& g);
ZPoly zpoly_scale(const ZPoly& f, const mpz_class& c);
mpz_class zpoly_eval(const ZPoly& f, const mpz_class& x);
Fp2Poly zpoly_reduce(const ZPoly& f, const PrimeField& field);
std::string zpoly_to_string(const ZPoly& f, const char* var = "X");

// Unique polynomial of degree < xs.size() through the points; throws if the
// interpolant has non-integer coefficients.
ZPoly interpolate_integer(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys);
// Exact determinant by fraction-free elimination.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m);
// Sylvester resultant of two integer polynomials.
mpz_class resultant(const ZPoly& f, const ZPoly& g);

}  // namespace ltavg
