#include "ltavg/family.hpp"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "ltavg/classno.hpp"
#include "ltavg/curves.hpp"
#include "ltavg/isogenies.hpp"
#include "ltavg/parallel.hpp"

namespace ltavg {

Congruence congruence_of(std::uint32_t p) {
  if (p < 5 || !is_prime(p)) throw DomainError("expected a prime p >= 5, got " + std::to_string(p));
  if (p % 4 == 1) return Congruence::OneMod4;
  return p % 12 == 7 ? Congruence::SevenMod12 : Congruence::ElevenMod12;
}

std::string congruence_label(Congruence c) {
  switch (c) {
    case Congruence::OneMod4: return "1 mod 4";
    case Congruence::SevenMod12: return "7 mod 12";
    case Congruence::ElevenMod12: return "11 mod 12";
  }
  return "?";
}

LambdaRecord lambda_record(const PrimeField& field, Fp lambda) {
  if (lambda.is_zero() || lambda.value() == 1) throw DomainError("lambda in {0, 1}: C_lambda is singular");
  LambdaRecord r;
  r.lambda = lambda;
  r.delta = lambda_delta(lambda);
  if (r.delta.is_zero()) throw DomainError("lambda^2 - lambda + 1 = 0: C_lambda is singular");
  r.root = sqrt_in_fp2(field, r.delta);
  r.minus = legendre_param(lambda, -1, r.root);
  r.plus = legendre_param(lambda, 1, r.root);
  for (const Fp2* L : {&r.minus, &r.plus}) {
    if (L->is_zero() || *L == L->one()) throw std::logic_error("Legendre parameter degenerated to 0 or 1");
  }
  r.superspecial = is_supersingular_parameter(r.minus);
  return r;
}

LambdaRecord lambda_record(Fp lambda) { return lambda_record(PrimeField(lambda.modulus()), lambda); }

RationalPair legendre_pair_over_q(const mpq_class& lambda) {
  if (lambda == 0 || lambda == 1) throw DomainError("lambda in {0, 1}: C_lambda is singular");
  RationalPair out;
  out.delta = lambda * lambda - lambda + 1;
  // (1 - l)(l +- r)^2 = (1 - l)(l^2 + delta) +- 2 l (1 - l) r
  out.u = (1 - lambda) * (lambda * lambda + out.delta);
  out.v = 2 * lambda * (1 - lambda);
  out.u.canonicalize();
  out.v.canonicalize();
  return out;
}

std::vector<Fp> orbit(Fp l) {
  if (l.is_zero() || l.value() == 1) throw DomainError("orbit of lambda in {0, 1} is undefined");
  const Fp one = l.with(1);
  std::vector<Fp> o = {l, l.inv(), one - l, (one - l).inv(), l / (l - one), (l - one) / l};
  std::sort(o.begin(), o.end(), [](Fp a, Fp b) { return a.value() < b.value(); });
  o.erase(std::unique(o.begin(), o.end()), o.end());
  return o;
}

namespace {

std::vector<std::uint32_t> inverse_table(std::uint32_t p) {
  std::vector<std::uint32_t> inv(p, 0);
  inv[1] = 1;
  for (std::uint64_t i = 2; i < p; ++i) inv[i] = static_cast<std::uint32_t>((p - (p / i) * inv[p % i] % p) % p);
  return inv;
}

}  // namespace

std::vector<std::uint32_t> superspecial_lambdas(std::uint32_t p, unsigned threads) {
  if (p < 5 || !is_prime(p)) throw DomainError("expected a prime p >= 5, got " + std::to_string(p));
  if (p > kPsiBound) throw DomainError("p = " + std::to_string(p) + " above the enumeration bound");
  const PrimeField field(p);
  const auto coeffs = deuring_coefficients(p);
  const std::vector<std::uint32_t> inv = inverse_table(p);
  const std::uint64_t P = p;

  // Chunks of {2, ..., p-1}; each classifies the orbits whose smallest member it owns.
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(p / 64 + 1, 4 * resolve_threads(threads)));
  const std::uint32_t span = (p - 2 + static_cast<std::uint32_t>(chunks) - 1) / static_cast<std::uint32_t>(chunks);
  auto work = [&](std::size_t c) {
    std::vector<std::uint32_t> found;
    const std::uint32_t lo = 2 + static_cast<std::uint32_t>(c) * span;
    const std::uint32_t hi = std::min<std::uint32_t>(p, lo + span);
    for (std::uint32_t l = lo; l < hi; ++l) {
      const std::uint64_t lm1 = l - 1;
      const std::uint64_t one_minus = P + 1 - l;
      const std::uint32_t members[6] = {
          l,
          inv[l],
          static_cast<std::uint32_t>(one_minus),
          inv[one_minus],
          static_cast<std::uint32_t>(l * static_cast<std::uint64_t>(inv[lm1]) % P),
          static_cast<std::uint32_t>(lm1 * inv[l] % P),
      };
      if (*std::min_element(members, members + 6) != l) continue;
      const std::uint64_t delta = (static_cast<std::uint64_t>(l) * l + P - l + 1) % P;
      if (delta == 0) continue;
      const Fp2 root = sqrt_in_fp2(field, field(static_cast<std::int64_t>(delta)));
      const Fp2 minus = legendre_param(field(l), -1, root);
      if (!deuring_eval(*coeffs, minus).is_zero()) continue;
      for (std::uint32_t m : members) found.push_back(m);
    }
    return found;
  };
  std::vector<std::uint32_t> all;
  for (auto& part : parallel_map<std::vector<std::uint32_t>>(chunks, threads, work)) {
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::int64_t expected_psi(std::uint32_t p) {
  switch (congruence_of(p)) {
    case Congruence::OneMod4: {
      const std::int64_t h = class_number(3 * static_cast<std::int64_t>(p));
      if (h % 2 != 0) throw std::logic_error("h(-3p) is odd at p = " + std::to_string(p));
      return 3 * h / 2;
    }
    case Congruence::SevenMod12: return 0;
    case Congruence::ElevenMod12: return 3 * class_number(p);
  }
  return -1;
}

PsiReport psi_p(std::uint32_t p, unsigned threads) {
  PsiReport r;
  r.p = p;
  r.congruence = congruence_of(p);
  r.lambdas = superspecial_lambdas(p, threads);
  r.psi = static_cast<std::int64_t>(r.lambdas.size());
  if (p % 4 == 3) r.h_p = class_number(p);
  if (p % 4 == 1) r.h_3p = class_number(3 * static_cast<std::int64_t>(p));
  r.expected = expected_psi(p);
  r.ok = r.psi == r.expected;
  return r;
}

std::string psi_report_json(const PsiReport& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["class"] = congruence_label(r.congruence);
  j["psi"] = r.psi;
  j["h_p"] = r.h_p ? nlohmann::ordered_json(*r.h_p) : nlohmann::ordered_json(nullptr);
  j["h_3p"] = r.h_3p ? nlohmann::ordered_json(*r.h_3p) : nlohmann::ordered_json(nullptr);
  j["ok"] = r.ok;
  j["lambdas"] = r.lambdas;
  return j.dump();
}

std::string psi_report_csv_header() { return "p,class,psi,h_p,h_3p,ok"; }

std::string psi_report_csv(const PsiReport& r) {
  auto opt = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  return std::to_string(r.p) + "," + congruence_label(r.congruence) + "," + std::to_string(r.psi) + "," + opt(r.h_p) +
         "," + opt(r.h_3p) + "," + (r.ok ? "true" : "false");
}

FGH fgh_eval(Fp a, Fp b2) {
  auto c = [&](std::int64_t v) { return a.with(v); };
  const Fp a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a, a6 = a5 * a, a7 = a6 * a, a8 = a7 * a, a9 = a8 * a;
  const Fp half = c(2).inv();
  FGH out;
  out.f = -c(3) * a9 + c(14) * a8 - c(34) * a7 + c(50) * a6 - c(42) * a5 + c(21) * a4 * b2 + c(18) * a4 -
          c(32) * a3 * b2 - c(3) * a3 + c(11) * a2 * b2 + c(2) * a * b2 - b2;
  out.g = a8 - c(4) * a7 + c(2) * a6 + c(8) * a5 - c(12) * a4 + c(20) * a3 * b2 + c(6) * a3 - c(30) * a2 * b2 - a2 +
          c(14) * a * b2 - c(2) * b2;
  out.h = -c(3) * a9 + c(27) * half * a8 - c(22) * a7 + c(14) * a6 + a5 - c(39) * half * a4 * b2 - c(6) * a4 +
          c(39) * a3 * b2 + c(3) * a3 - c(61) * half * a2 * b2 - half * a2 + c(11) * a * b2 - c(3) * half * b2;
  return out;
}

namespace {

FGH fgh_at_torsion(Fp t, Fp a) {
  const FGH v = fgh_eval(a, a * (a - a.with(1)) * (a - t));
  if (v.g.is_zero()) {
    throw std::logic_error("g vanished at an F_p-rational 3-torsion abscissa (a = " + std::to_string(a.value()) + ")");
  }
  return v;
}

}  // namespace

Fp lambda_from_torsion(Fp t, Fp a) {
  const FGH v = fgh_at_torsion(t, a);
  return v.f / v.g;
}

Fp torsion_root(Fp t, Fp a) {
  const FGH v = fgh_at_torsion(t, a);
  return v.h / v.g;
}

Fp2 torsion_abscissa(Fp lambda, int eps, const Fp2& root) {
  const Fp2 l = root.from_fp(lambda);
  const Fp2 r = eps > 0 ? root : -root;
  return (l.one() + l + r * r.from_int(2)) / l.from_int(3);
}

}  // namespace ltavg
