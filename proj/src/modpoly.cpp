#include "ltavg/modpoly.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

#include "ltavg/classno.hpp"
#include "modular_table_data.hpp"

namespace ltavg {

std::string_view modular_table_text() { return kModularTableText; }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<ModularPolynomial> ModularPolynomial::parse(std::string_view text) {
  std::vector<ModularPolynomial> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    int level, i, j;
    std::string coef;
    if (!(row >> level)) continue;
    if (!(row >> i >> j >> coef) || i < 0 || j < 0) {
      throw std::runtime_error("modular table: malformed row " + std::to_string(lineno));
    }
    ModularPolynomial* target = nullptr;
    for (auto& m : out)
      if (m.level_ == level) target = &m;
    if (!target) {
      out.emplace_back();
      target = &out.back();
      target->level_ = level;
    }
    const std::size_t need = static_cast<std::size_t>(std::max(i, j)) + 1;
    if (target->coeff_.size() < need) {
      target->coeff_.resize(need);
    }
    for (auto& r : target->coeff_) r.resize(target->coeff_.size(), 0);
    target->coeff_[i][j] = mpz_class(coef);
  }
  return out;
}

Fp2 ModularPolynomial::eval(const Fp2& x, const Fp2& y) const {
  const std::uint32_t p = x.modulus();
  const mpz_class pz = p;
  Fp2 acc = x.zero();
  for (std::size_t i = coeff_.size(); i-- > 0;) {
    Fp2 row = x.zero();
    for (std::size_t j = coeff_[i].size(); j-- > 0;) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), coeff_[i][j].get_mpz_t(), pz.get_mpz_t());
      row = row * y + y.from_int(static_cast<std::int64_t>(r.get_ui()));
    }
    acc = acc * x + row;
  }
  return acc;
}

ZPoly ModularPolynomial::specialize_y(const mpz_class& y) const {
  ZPoly out(coeff_.size(), 0);
  for (std::size_t i = 0; i < coeff_.size(); ++i) {
    mpz_class acc = 0;
    for (std::size_t j = coeff_[i].size(); j-- > 0;) acc = acc * y + coeff_[i][j];
    out[i] = acc;
  }
  zpoly_trim(out);
  return out;
}

ZPoly ModularPolynomial::diagonal() const {
  ZPoly out(2 * coeff_.size(), 0);
  for (std::size_t i = 0; i < coeff_.size(); ++i)
    for (std::size_t j = 0; j < coeff_[i].size(); ++j) out[i + j] += coeff_[i][j];
  zpoly_trim(out);
  return out;
}

bool ModularPolynomial::is_symmetric() const {
  for (std::size_t i = 0; i < coeff_.size(); ++i)
    for (std::size_t j = 0; j < coeff_.size(); ++j)
      if (coeff_[i][j] != coeff_[j][i]) return false;
  return true;
}

const ModularPolynomial& modular_polynomial(int level) {
  static const std::vector<ModularPolynomial> table = ModularPolynomial::parse(kModularTableText);
  for (const auto& m : table)
    if (m.level() == level) return m;
  throw DomainError("unsupported modular polynomial level " + std::to_string(level));
}

Fp2 modular_poly_eval(int level, const Fp2& x, const Fp2& y) { return modular_polynomial(level).eval(x, y); }

ResultantCheck level3_discriminant_check() {
  const ModularPolynomial& phi = modular_polynomial(3);
  // Degree in Y is at most 4*3 + 3*4; sample comfortably more points.
  constexpr int kPoints = 29;
  std::vector<mpz_class> xs, ys;
  for (int k = 0; k < kPoints; ++k) {
    const mpz_class y = k - kPoints / 2;
    const ZPoly f = phi.specialize_y(y);
    ZPoly df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * static_cast<unsigned long>(i));
    xs.push_back(y);
    ys.push_back(resultant(f, df));
  }
  ResultantCheck out;
  out.resultant = interpolate_integer(xs, ys);
  ZPoly prod{1};
  for (int d : {3, 4, 8, 11, 20, 32, 35}) {
    const ZPoly pd = hilbert_poly(d).coefficients;
    prod = zpoly_mul(prod, zpoly_mul(pd, pd));
  }
  out.product = prod;
  const int dr = zpoly_degree(out.resultant);
  if (dr == zpoly_degree(prod) && dr >= 0) {
    const mpz_class& lead_r = out.resultant[dr];
    const mpz_class& lead_p = prod[dr];
    if (mpz_divisible_p(lead_r.get_mpz_t(), lead_p.get_mpz_t())) {
      const mpz_class c = lead_r / lead_p;
      if (zpoly_scale(prod, c) == out.resultant) {
        out.factor = c;
        out.proportional = true;
        out.holds_up_to_sign = (c == 1 || c == -1);
      }
    }
  }
  return out;
}

}  // namespace ltavg
