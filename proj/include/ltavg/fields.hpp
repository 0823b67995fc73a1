// Exact arithmetic in F_p and F_{p^2} = F_p(w), w^2 = smallest non-residue.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltavg {

// Raised for inputs outside an operation's domain (singular parameters,
// non-primes, zero inverses).  Callers at the CLI boundary map it to exit 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool is_prime(std::uint64_t n);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
// All primes in [lo, hi].
std::vector<std::uint32_t> primes_in_range(std::uint32_t lo, std::uint32_t hi);

class PrimeField;

class Fp {
 public:
  Fp() = default;

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(Fp o) const { return make(v_ + o.v_ >= p_ ? v_ + o.v_ - p_ : v_ + o.v_); }
  Fp operator-(Fp o) const { return make(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_); }
  Fp operator-() const { return make(v_ == 0 ? 0 : p_ - v_); }
  Fp operator*(Fp o) const {
    return make(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_));
  }
  Fp operator/(Fp o) const { return *this * o.inv(); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  Fp inv() const;  // throws DomainError on zero
  Fp pow(std::uint64_t e) const { return make(static_cast<std::uint32_t>(pow_mod(v_, e, p_))); }
  // Same modulus, different residue.
  Fp with(std::int64_t v) const;

 private:
  friend class PrimeField;
  friend class Fp2;
  Fp(std::uint32_t v, std::uint32_t p) : v_(v), p_(p) {}
  Fp make(std::uint32_t v) const { return Fp(v, p_); }
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

// a + b*w with w^2 = nonresidue.
class Fp2 {
 public:
  Fp2() = default;
  Fp2(Fp a, Fp b, Fp nonresidue) : a_(a), b_(b), nr_(nonresidue) {}

  Fp a() const { return a_; }
  Fp b() const { return b_; }
  Fp nonresidue() const { return nr_; }
  std::uint32_t modulus() const { return a_.modulus(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool in_base_field() const { return b_.is_zero(); }
  bool valid() const { return a_.modulus() != 0; }

  Fp2 operator+(const Fp2& o) const { return {a_ + o.a_, b_ + o.b_, nr_}; }
  Fp2 operator-(const Fp2& o) const { return {a_ - o.a_, b_ - o.b_, nr_}; }
  Fp2 operator-() const { return {-a_, -b_, nr_}; }
  Fp2 operator*(const Fp2& o) const;
  Fp2 operator*(Fp s) const { return {a_ * s, b_ * s, nr_}; }
  Fp2 operator/(const Fp2& o) const { return *this * o.inv(); }
  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
  bool operator==(const Fp2& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const Fp2& o) const { return !(*this == o); }

  Fp2 square() const { return *this * *this; }
  Fp2 inv() const;  // throws DomainError on zero
  Fp2 pow(std::uint64_t e) const;
  Fp2 frobenius() const { return {a_, -b_, nr_}; }
  Fp norm() const { return a_ * a_ - nr_ * b_ * b_; }
  Fp2 from_int(std::int64_t v) const { return {a_.with(v), a_.with(0), nr_}; }
  Fp2 from_fp(Fp v) const { return {v, a_.with(0), nr_}; }
  Fp2 zero() const { return from_int(0); }
  Fp2 one() const { return from_int(1); }

  // Canonical ordering: a-part, then b-part.
  bool encodes_before(const Fp2& o) const {
    return a_.value() != o.a_.value() ? a_.value() < o.a_.value() : b_.value() < o.b_.value();
  }
  std::string to_string() const;

 private:
  Fp a_, b_, nr_;
};

struct Fp2Less {
  bool operator()(const Fp2& x, const Fp2& y) const { return x.encodes_before(y); }
};

// The only way to obtain field elements: validates the modulus once.
class PrimeField {
 public:
  static constexpr std::uint32_t kMaxModulus = 0x7fffffffu;

  explicit PrimeField(std::uint64_t p);

  std::uint32_t p() const { return p_; }
  Fp nonresidue() const { return nr_; }
  Fp operator()(std::int64_t v) const;
  Fp2 ext(std::int64_t a, std::int64_t b = 0) const { return Fp2((*this)(a), (*this)(b), nr_); }
  Fp2 ext(Fp a) const { return Fp2(a, (*this)(0), nr_); }
  Fp2 ext(Fp a, Fp b) const { return Fp2(a, b, nr_); }
  Fp2 omega() const { return ext(0, 1); }
  Fp2 fp2_from_index(std::uint64_t idx) const { return ext(static_cast<std::int64_t>(idx % p_), static_cast<std::int64_t>(idx / p_)); }

 private:
  std::uint32_t p_;
  Fp nr_;
};

int legendre_symbol(Fp a);
// Quadratic character of F_{p^2}: legendre of the norm.
int quadratic_character(const Fp2& z);
// Root in F_p if one exists; the smaller of the two representatives.
std::optional<Fp> sqrt_fp(Fp a);
// Root in F_{p^2} of an F_p element; canonical (smaller encoding) branch.
Fp2 sqrt_in_fp2(Fp a);
Fp2 sqrt_in_fp2(const PrimeField& field, Fp a);
// Root of an arbitrary F_{p^2} element, canonical branch, if it is a square.
std::optional<Fp2> sqrt_fp2(const Fp2& z);

}  // namespace ltavg
