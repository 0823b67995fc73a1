#include "ltavg/fields.hpp"

#include <sstream>

namespace ltavg {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_in_range(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i <= hi; ++i) {
    if (composite[i]) continue;
    if (i >= lo) out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  return out;
}

Fp Fp::inv() const {
  if (v_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
  return pow(p_ - 2);
}

Fp Fp::with(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Fp(static_cast<std::uint32_t>(r), p_);
}

Fp2 Fp2::operator*(const Fp2& o) const {
  const std::uint64_t p = a_.modulus();
  const std::uint64_t aa = static_cast<std::uint64_t>(a_.value()) * o.a_.value() % p;
  const std::uint64_t bb = static_cast<std::uint64_t>(b_.value()) * o.b_.value() % p;
  const std::uint64_t ab = static_cast<std::uint64_t>(a_.value()) * o.b_.value() % p;
  const std::uint64_t ba = static_cast<std::uint64_t>(b_.value()) * o.a_.value() % p;
  const std::uint64_t re = (aa + bb * nr_.value()) % p;
  const std::uint64_t im = (ab + ba) % p;
  return {a_.with(static_cast<std::int64_t>(re)), a_.with(static_cast<std::int64_t>(im)), nr_};
}

Fp2 Fp2::inv() const {
  if (is_zero()) throw DomainError("inverse of zero in F_" + std::to_string(modulus()) + "^2");
  const Fp n = norm().inv();
  return {a_ * n, -b_ * n, nr_};
}

Fp2 Fp2::pow(std::uint64_t e) const {
  Fp2 result = one();
  Fp2 base = *this;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::string Fp2::to_string() const {
  if (b_.is_zero()) return std::to_string(a_.value());
  std::ostringstream os;
  os << a_.value() << "+" << b_.value() << "w";
  return os.str();
}

PrimeField::PrimeField(std::uint64_t p) {
  if (p < 5 || p > kMaxModulus || !is_prime(p)) {
    throw DomainError("modulus must be a prime in [5, 2^31): got " + std::to_string(p));
  }
  p_ = static_cast<std::uint32_t>(p);
  for (std::uint32_t c = 2;; ++c) {
    if (pow_mod(c, (p_ - 1) / 2, p_) == p_ - 1) {
      nr_ = Fp(c, p_);
      break;
    }
  }
}

Fp PrimeField::operator()(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Fp(static_cast<std::uint32_t>(r), p_);
}

int legendre_symbol(Fp a) {
  if (a.is_zero()) return 0;
  return a.pow((a.modulus() - 1) / 2).value() == 1 ? 1 : -1;
}

int quadratic_character(const Fp2& z) { return legendre_symbol(z.norm()); }

std::optional<Fp> sqrt_fp(Fp a) {
  if (a.is_zero()) return a;
  if (legendre_symbol(a) != 1) return std::nullopt;
  const std::uint32_t p = a.modulus();
  Fp root;
  if (p % 4 == 3) {
    root = a.pow((p + 1) / 4);
  } else {
    // Tonelli-Shanks.
    std::uint32_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    Fp z = a.with(2);
    while (legendre_symbol(z) != -1) z = z + a.with(1);
    Fp c = z.pow(q);
    Fp t = a.pow(q);
    root = a.pow((q + 1) / 2);
    int m = s;
    while (t.value() != 1) {
      int i = 0;
      Fp t2 = t;
      while (t2.value() != 1) { t2 = t2 * t2; ++i; }
      Fp b = c;
      for (int k = 0; k < m - i - 1; ++k) b = b * b;
      root = root * b;
      c = b * b;
      t = t * c;
      m = i;
    }
  }
  const Fp other = -root;
  return other.value() < root.value() ? other : root;
}

Fp2 sqrt_in_fp2(Fp a) { return sqrt_in_fp2(PrimeField(a.modulus()), a); }

Fp2 sqrt_in_fp2(const PrimeField& field, Fp a) {
  const Fp zero = a.with(0);
  const Fp nr = field.nonresidue();
  if (auto r = sqrt_fp(a)) return Fp2(*r, zero, nr);
  // a/nr is a residue; the root is c*w with c^2 = a/nr.
  Fp c = *sqrt_fp(a / nr);
  // Among c*w and -c*w the smaller encoding has the smaller b-part.
  return Fp2(zero, c, nr);
}

std::optional<Fp2> sqrt_fp2(const Fp2& z) {
  if (z.is_zero()) return z;
  const Fp nr = z.nonresidue();
  if (z.in_base_field()) {
    if (auto r = sqrt_fp(z.a())) return Fp2(*r, z.a().with(0), nr);
    Fp c = *sqrt_fp(z.a() / nr);
    return Fp2(z.a().with(0), c, nr);
  }
  if (legendre_symbol(z.norm()) != 1) return std::nullopt;
  const Fp n = *sqrt_fp(z.norm());
  const Fp half = z.a().with(2).inv();
  Fp x2 = (z.a() + n) * half;
  if (legendre_symbol(x2) != 1) x2 = (z.a() - n) * half;
  const Fp x = *sqrt_fp(x2);
  const Fp y = z.b() * (x * z.a().with(2)).inv();
  Fp2 r(x, y, nr);
  Fp2 s = -r;
  return s.encodes_before(r) ? s : r;
}

}  // namespace ltavg
