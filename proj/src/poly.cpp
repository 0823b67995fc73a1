#include "ltavg/poly.hpp"

#include <algorithm>
#include <random>

namespace ltavg {

Fp2Poly::Fp2Poly(std::vector<Fp2> coeffs) : c_(std::move(coeffs)) { trim(); }

void Fp2Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Fp2 Fp2Poly::eval(const Fp2& x) const {
  if (c_.empty()) return x.zero();
  Fp2 acc = c_.back();
  for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Fp2Poly Fp2Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Fp2> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * c_[i].a().with(static_cast<std::int64_t>(i)));
  return Fp2Poly(std::move(d));
}

Fp2Poly Fp2Poly::monic() const {
  if (c_.empty()) return {};
  const Fp2 inv = c_.back().inv();
  std::vector<Fp2> m;
  m.reserve(c_.size());
  for (const auto& x : c_) m.push_back(x * inv);
  return Fp2Poly(std::move(m));
}

Fp2Poly Fp2Poly::operator+(const Fp2Poly& o) const {
  if (c_.empty()) return o;
  if (o.c_.empty()) return *this;
  std::vector<Fp2> r(std::max(c_.size(), o.c_.size()), (c_.empty() ? o.c_[0] : c_[0]).zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Fp2Poly(std::move(r));
}

Fp2Poly Fp2Poly::operator-(const Fp2Poly& o) const {
  if (o.c_.empty()) return *this;
  std::vector<Fp2> r(std::max(c_.size(), o.c_.size()), o.c_[0].zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return Fp2Poly(std::move(r));
}

Fp2Poly Fp2Poly::operator*(const Fp2Poly& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  std::vector<Fp2> r(c_.size() + o.c_.size() - 1, c_[0].zero());
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Fp2Poly(std::move(r));
}

std::pair<Fp2Poly, Fp2Poly> Fp2Poly::divmod(const Fp2Poly& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  if (degree() < d.degree()) return {Fp2Poly(), *this};
  std::vector<Fp2> rem = c_;
  const std::size_t dn = d.c_.size();
  std::vector<Fp2> quot(rem.size() - dn + 1, d.c_[0].zero());
  const Fp2 inv_lead = d.lead().inv();
  for (std::size_t k = rem.size(); k-- >= dn;) {
    const Fp2 coef = rem[k] * inv_lead;
    quot[k - dn + 1] = coef;
    if (coef.is_zero()) continue;
    for (std::size_t j = 0; j < dn; ++j) rem[k - dn + 1 + j] -= coef * d.c_[j];
    if (k == dn - 1) break;
  }
  rem.resize(dn - 1);
  return {Fp2Poly(std::move(quot)), Fp2Poly(std::move(rem))};
}

Fp2Poly Fp2Poly::linear_from_root(const Fp2& r) { return Fp2Poly({-r, r.one()}); }

Fp2Poly poly_gcd(Fp2Poly a, Fp2Poly b) {
  while (!b.is_zero()) {
    Fp2Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Fp2Poly poly_powmod(const Fp2Poly& base, std::uint64_t e, const Fp2Poly& m) {
  Fp2Poly result({m.lead().one()});
  result = result % m;
  Fp2Poly b = base % m;
  while (e) {
    if (e & 1) result = (result * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return result;
}

namespace {

void split_roots(const Fp2Poly& g, std::mt19937_64& rng, std::vector<Fp2>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    const Fp2Poly m = g.monic();
    out.push_back(-m[0]);
    return;
  }
  const Fp2& any = g.lead();
  const std::uint64_t p = any.modulus();
  const std::uint64_t half = (p * p - 1) / 2;
  for (;;) {
    const Fp2 a = any.from_int(static_cast<std::int64_t>(rng() % p)) +
                  Fp2(any.a().with(0), any.a().with(static_cast<std::int64_t>(rng() % p)), any.nonresidue());
    const Fp2Poly shifted({a, any.one()});
    Fp2Poly h = poly_powmod(shifted, half, g) - Fp2Poly({any.one()});
    Fp2Poly d = poly_gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_roots(d, rng, out);
      split_roots(g.divmod(d).first, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Fp2> roots_in_fp2(const Fp2Poly& f, std::uint64_t seed) {
  if (f.degree() <= 0) return {};
  const Fp2& any = f.lead();
  const std::uint64_t p = any.modulus();
  const Fp2Poly x({any.zero(), any.one()});
  const Fp2Poly xq = poly_powmod(x, p * p, f.monic());
  const Fp2Poly g = poly_gcd(f, xq - x);
  std::vector<Fp2> roots;
  std::mt19937_64 rng(seed);
  split_roots(g, rng, roots);
  std::sort(roots.begin(), roots.end(), Fp2Less{});
  return roots;
}

std::vector<Fp2> roots_by_scan(const Fp2Poly& f, const PrimeField& field) {
  std::vector<Fp2> roots;
  const std::uint64_t q = static_cast<std::uint64_t>(field.p()) * field.p();
  for (std::uint64_t i = 0; i < q; ++i) {
    const Fp2 x = field.fp2_from_index(i);
    if (f.eval(x).is_zero()) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end(), Fp2Less{});
  return roots;
}

int root_multiplicity(Fp2Poly f, const Fp2& r) {
  int m = 0;
  const Fp2Poly lin = Fp2Poly::linear_from_root(r);
  while (!f.is_zero() && f.eval(r).is_zero()) {
    f = f.divmod(lin).first;
    ++m;
  }
  return m;
}

}  // namespace ltavg
