// Class numbers of imaginary quadratic orders, Hilbert class polynomials and
// the Gross-Zagier valuation of differences of singular moduli.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltavg/fields.hpp"
#include "ltavg/zpoly.hpp"

namespace ltavg {

// Hilbert polynomial rounding landed too far from an integer.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadraticForm {
  std::int64_t a, b, c;
  bool operator==(const QuadraticForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

inline constexpr std::int64_t kClassNumberBound = 10'000'000;

// Reduced primitive forms of discriminant -D, sorted by (a, b).
std::vector<QuadraticForm> reduced_forms(std::int64_t D);
// h(-D); D > 0 with -D = 0 or 1 mod 4.
std::int64_t class_number(std::int64_t D);

// Kronecker symbol (a/n) for n >= 1.
int kronecker(std::int64_t a, std::int64_t n);
bool is_fundamental_discriminant(std::int64_t d);  // d < 0
// sqrt(D)/pi * sum_{n<=terms} chi_{-D}(n)/n.
double dirichlet_crosscheck(std::int64_t D, std::int64_t terms);

// Coefficients of j(q) = sum_{n>=-1} c_n q^n, n = -1 .. count-2.
std::vector<mpz_class> j_series_coefficients(int count);

struct HilbertPoly {
  std::int64_t D = 0;
  ZPoly coefficients;  // ascending degree, monic
  int degree() const { return zpoly_degree(coefficients); }
};

inline constexpr int kJSeriesTerms = 40;
// Throws PrecisionError when a coefficient is not within 0.01 of an integer.
HilbertPoly hilbert_poly(std::int64_t D);
// Decimal digits used for D.
long hilbert_precision_digits(std::int64_t D);

// Cache lines `D: c0 c1 ... 1`.
std::string hilbert_cache_line(const HilbertPoly& h);
HilbertPoly parse_hilbert_cache_line(const std::string& line);
void write_hilbert_cache(const std::string& path, const std::vector<HilbertPoly>& polys);
// Reads entries and re-verifies each one; mismatches are dropped.
std::map<std::int64_t, HilbertPoly> read_hilbert_cache(const std::string& path, bool reverify = true);

// ord_p of J(-D1, -D2)^2 by summing ord_p F((D1 D2 - x^2)/4).
std::int64_t gross_zagier_ordp(std::int64_t D1, std::int64_t D2, std::int64_t p);
// ord_p F(m) by the multiplicative rule, exposed for testing.
std::int64_t gross_zagier_ordp_F(std::int64_t m, std::int64_t D1, std::int64_t D2, std::int64_t p);

}  // namespace ltavg
