// The lambda family: the pair of Legendre parameters attached to lambda,
// superspeciality, S3-orbits, the count psi_p and the torsion correspondence.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltavg/fields.hpp"

namespace ltavg {

enum class Congruence { OneMod4, SevenMod12, ElevenMod12 };

Congruence congruence_of(std::uint32_t p);  // p >= 5
std::string congruence_label(Congruence c);

struct LambdaRecord {
  Fp lambda;
  Fp delta;
  Fp2 root;  // canonical square root of delta
  Fp2 minus, plus;
  bool superspecial = false;
};

// Rejects lambda in {0, 1} and delta = 0.
LambdaRecord lambda_record(const PrimeField& field, Fp lambda);
LambdaRecord lambda_record(Fp lambda);

// Exact values over Q(sqrt(delta)): the pair is {u + v sqrt(delta), u - v sqrt(delta)}.
struct RationalPair {
  mpq_class u, v, delta;
};
RationalPair legendre_pair_over_q(const mpq_class& lambda);

// The S3-orbit of lambda, deduplicated and sorted.
std::vector<Fp> orbit(Fp lambda);

struct PsiReport {
  std::uint32_t p = 0;
  std::int64_t psi = 0;
  Congruence congruence = Congruence::OneMod4;
  std::vector<std::uint32_t> lambdas;  // sorted
  std::optional<std::int64_t> h_p;     // h(-p), defined for p = 3 mod 4
  std::optional<std::int64_t> h_3p;    // h(-3p), defined for p = 1 mod 4
  std::int64_t expected = 0;           // closed form for the congruence class
  bool ok = false;
};

inline constexpr std::uint32_t kPsiBound = 200'000;

// Sorted superspecial lambdas in F_p, scanning {2, ..., p-1} one orbit at a time.
std::vector<std::uint32_t> superspecial_lambdas(std::uint32_t p, unsigned threads = 1);
// Closed form for psi_p from class numbers.
std::int64_t expected_psi(std::uint32_t p);
PsiReport psi_p(std::uint32_t p, unsigned threads = 1);

std::string psi_report_json(const PsiReport& r);
std::string psi_report_csv_header();
std::string psi_report_csv(const PsiReport& r);

struct FGH {
  Fp f, g, h;
};
// The three polynomials of the torsion correspondence at (a, b^2).
FGH fgh_eval(Fp a, Fp b2);
// lambda = f/g at (a, a(a-1)(a-t)); throws std::logic_error when g vanishes.
Fp lambda_from_torsion(Fp t, Fp a);
// The square root h/g of delta(lambda_from_torsion(t, a)).
Fp torsion_root(Fp t, Fp a);
// (1 + lambda + 2 eps root)/3.
Fp2 torsion_abscissa(Fp lambda, int eps, const Fp2& root);

}  // namespace ltavg
