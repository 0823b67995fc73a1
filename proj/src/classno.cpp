#include "ltavg/classno.hpp"

#include <mpfr.h>

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ltavg {

std::vector<QuadraticForm> reduced_forms(std::int64_t D) {
  if (D <= 0 || (D % 4 != 0 && D % 4 != 3)) {
    throw DomainError("-D must be a negative discriminant (0 or 1 mod 4): D = " + std::to_string(D));
  }
  if (D > kClassNumberBound) throw DomainError("D above enumeration bound: " + std::to_string(D));
  std::vector<QuadraticForm> forms;
  for (std::int64_t a = 1; 3 * a * a <= D; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (((b % 2) + 2) % 2 != D % 2) continue;
      const std::int64_t num = b * b + D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if ((a == c || b == -a) && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      forms.push_back({a, b, c});
    }
  }
  return forms;
}

std::int64_t class_number(std::int64_t D) { return static_cast<std::int64_t>(reduced_forms(D).size()); }

int kronecker(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw DomainError("kronecker symbol needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    const std::int64_t r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (a/n), n odd.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d >= 0) return false;
  auto squarefree = [](std::int64_t m) {
    m = std::abs(m);
    for (std::int64_t q = 2; q * q <= m; ++q) {
      if (m % (q * q) == 0) return false;
      if (m % q == 0) m /= q;
    }
    return true;
  };
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(d);
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree(m);
}

double dirichlet_crosscheck(std::int64_t D, std::int64_t terms) {
  double sum = 0.0;
  for (std::int64_t n = 1; n <= terms; ++n) {
    const int chi = kronecker(-D, n);
    if (chi) sum += chi / static_cast<double>(n);
  }
  return std::sqrt(static_cast<double>(D)) / M_PI * sum;
}

std::vector<mpz_class> j_series_coefficients(int count) {
  const int N = count;
  // E4 = 1 + 240 sum sigma_3(n) q^n
  std::vector<mpz_class> e4(N, 0);
  e4[0] = 1;
  for (int n = 1; n < N; ++n) {
    mpz_class s = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s += mpz_class(d) * d * d;
    e4[n] = 240 * s;
  }
  // prod (1 - q^n)^24
  std::vector<mpz_class> eta24(N, 0);
  eta24[0] = 1;
  for (int n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (int k = N - 1; k >= n; --k) eta24[k] -= eta24[k - n];
  auto mul = [N](const std::vector<mpz_class>& f, const std::vector<mpz_class>& g) {
    std::vector<mpz_class> r(N, 0);
    for (int i = 0; i < N; ++i)
      for (int k = 0; i + k < N; ++k) r[i + k] += f[i] * g[k];
    return r;
  };
  const std::vector<mpz_class> num = mul(mul(e4, e4), e4);
  // q j = num / eta24; eta24 has constant term 1.
  std::vector<mpz_class> out(N, 0);
  for (int n = 0; n < N; ++n) {
    mpz_class acc = num[n];
    for (int k = 1; k <= n; ++k) acc -= eta24[k] * out[n - k];
    out[n] = acc;
  }
  return out;
}

namespace {

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  ~Real() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
};

void cmul(Complex& out, const Complex& x, const Complex& y) {
  Real t1(out.re.prec()), t2(out.re.prec()), re(out.re.prec());
  mpfr_mul(t1.get(), x.re.get(), y.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), x.im.get(), y.im.get(), MPFR_RNDN);
  mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), x.re.get(), y.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), x.im.get(), y.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_set(out.re.get(), re.get(), MPFR_RNDN);
}

// j((-b + i sqrt(D)) / (2a)) from the truncated q-expansion.
Complex j_at_form(const QuadraticForm& f, std::int64_t D, const std::vector<mpz_class>& coeffs, mpfr_prec_t prec) {
  Real pi(prec), r(prec), theta(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  // |q| = exp(-pi sqrt(D) / a), arg q = -pi b / a
  mpfr_sqrt_ui(r.get(), static_cast<unsigned long>(D), MPFR_RNDN);
  mpfr_mul(r.get(), r.get(), pi.get(), MPFR_RNDN);
  mpfr_div_si(r.get(), r.get(), -f.a, MPFR_RNDN);
  mpfr_exp(r.get(), r.get(), MPFR_RNDN);
  mpfr_mul_si(theta.get(), pi.get(), -f.b, MPFR_RNDN);
  mpfr_div_si(theta.get(), theta.get(), f.a, MPFR_RNDN);
  Complex q(prec);
  mpfr_sin_cos(q.im.get(), q.re.get(), theta.get(), MPFR_RNDN);
  mpfr_mul(q.re.get(), q.re.get(), r.get(), MPFR_RNDN);
  mpfr_mul(q.im.get(), q.im.get(), r.get(), MPFR_RNDN);
  // Horner in q on sum_{n>=0} c_{n-1} q^n, then divide by q.
  Complex acc(prec);
  Real tmp(prec);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    cmul(acc, acc, q);
    mpfr_set_z(tmp.get(), coeffs[k].get_mpz_t(), MPFR_RNDN);
    mpfr_add(acc.re.get(), acc.re.get(), tmp.get(), MPFR_RNDN);
  }
  // acc / q = acc * conj(q) / |q|^2
  Complex qc(prec);
  mpfr_set(qc.re.get(), q.re.get(), MPFR_RNDN);
  mpfr_neg(qc.im.get(), q.im.get(), MPFR_RNDN);
  cmul(acc, acc, qc);
  Real n2(prec);
  mpfr_sqr(n2.get(), r.get(), MPFR_RNDN);
  mpfr_div(acc.re.get(), acc.re.get(), n2.get(), MPFR_RNDN);
  mpfr_div(acc.im.get(), acc.im.get(), n2.get(), MPFR_RNDN);
  return acc;
}

}  // namespace

long hilbert_precision_digits(std::int64_t D) {
  const double h = static_cast<double>(class_number(D));
  return static_cast<long>(std::ceil(15.0 + h * (M_PI * std::sqrt(static_cast<double>(D)) / std::log(10.0) + 10.0)));
}

HilbertPoly hilbert_poly(std::int64_t D) {
  const std::vector<QuadraticForm> forms = reduced_forms(D);
  const long digits = hilbert_precision_digits(D);
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::ceil(digits * std::log2(10.0))) + 32;
  static const std::vector<mpz_class> coeffs = j_series_coefficients(kJSeriesTerms);

  std::vector<Complex> roots;
  for (const auto& f : forms) roots.push_back(j_at_form(f, D, coeffs, prec));

  // Expand prod (X - j_k), coefficients ascending.
  std::vector<Complex> poly;
  poly.emplace_back(prec);
  mpfr_set_ui(poly[0].re.get(), 1, MPFR_RNDN);
  for (const auto& root : roots) {
    std::vector<Complex> next;
    for (std::size_t i = 0; i <= poly.size(); ++i) next.emplace_back(prec);
    Complex t(prec);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      mpfr_add(next[i + 1].re.get(), next[i + 1].re.get(), poly[i].re.get(), MPFR_RNDN);
      mpfr_add(next[i + 1].im.get(), next[i + 1].im.get(), poly[i].im.get(), MPFR_RNDN);
      cmul(t, poly[i], root);
      mpfr_sub(next[i].re.get(), next[i].re.get(), t.re.get(), MPFR_RNDN);
      mpfr_sub(next[i].im.get(), next[i].im.get(), t.im.get(), MPFR_RNDN);
    }
    poly = std::move(next);
  }

  HilbertPoly out;
  out.D = D;
  Real rounded(prec), diff(prec);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    mpfr_round(rounded.get(), poly[i].re.get());
    mpfr_sub(diff.get(), poly[i].re.get(), rounded.get(), MPFR_RNDN);
    if (mpfr_cmp_d(diff.get(), 0.01) > 0 || mpfr_cmp_d(diff.get(), -0.01) < 0 ||
        mpfr_cmp_d(poly[i].im.get(), 0.01) > 0 || mpfr_cmp_d(poly[i].im.get(), -0.01) < 0) {
      throw PrecisionError("Hilbert polynomial for D = " + std::to_string(D) + ": coefficient of X^" +
                           std::to_string(i) + " is not within 0.01 of an integer");
    }
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), rounded.get(), MPFR_RNDN);
    out.coefficients.push_back(z);
  }

  // The rounded polynomial must vanish at each floating root to working accuracy.
  for (const auto& root : roots) {
    Complex acc(prec);
    Real absroot(prec), tmp(prec), scale(prec);
    mpfr_hypot(absroot.get(), root.re.get(), root.im.get(), MPFR_RNDN);
    // Roots near zero (j = 0) would make a purely relative test meaningless.
    if (mpfr_cmp_ui(absroot.get(), 1) < 0) mpfr_set_ui(absroot.get(), 1, MPFR_RNDN);
    for (std::size_t k = out.coefficients.size(); k-- > 0;) {
      cmul(acc, acc, root);
      mpfr_set_z(tmp.get(), out.coefficients[k].get_mpz_t(), MPFR_RNDN);
      mpfr_add(acc.re.get(), acc.re.get(), tmp.get(), MPFR_RNDN);
      // scale = sum |c_k| max(1, |root|)^k
      mpfr_mul(scale.get(), scale.get(), absroot.get(), MPFR_RNDN);
      mpfr_abs(tmp.get(), tmp.get(), MPFR_RNDN);
      mpfr_add(scale.get(), scale.get(), tmp.get(), MPFR_RNDN);
    }
    Real mag(prec);
    mpfr_hypot(mag.get(), acc.re.get(), acc.im.get(), MPFR_RNDN);
    mpfr_div(mag.get(), mag.get(), scale.get(), MPFR_RNDN);
    if (mpfr_cmp_d(mag.get(), 1e-12) > 0) {
      throw PrecisionError("Hilbert polynomial for D = " + std::to_string(D) + ": rounded roots drift");
    }
  }
  return out;
}

std::string hilbert_cache_line(const HilbertPoly& h) {
  std::ostringstream os;
  os << h.D << ":";
  for (const auto& c : h.coefficients) os << " " << c.get_str();
  return os.str();
}

HilbertPoly parse_hilbert_cache_line(const std::string& line) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) throw std::runtime_error("Hilbert cache: missing ':' in line");
  HilbertPoly h;
  h.D = std::stoll(line.substr(0, colon));
  std::istringstream rest(line.substr(colon + 1));
  std::string tok;
  while (rest >> tok) h.coefficients.emplace_back(tok);
  if (h.coefficients.empty() || h.coefficients.back() != 1) throw std::runtime_error("Hilbert cache: entry not monic");
  return h;
}

void write_hilbert_cache(const std::string& path, const std::vector<HilbertPoly>& polys) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write Hilbert cache " + path);
  for (const auto& h : polys) out << hilbert_cache_line(h) << "\n";
}

std::map<std::int64_t, HilbertPoly> read_hilbert_cache(const std::string& path, bool reverify) {
  std::map<std::int64_t, HilbertPoly> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    HilbertPoly h = parse_hilbert_cache_line(line);
    if (reverify && hilbert_poly(h.D).coefficients != h.coefficients) continue;
    out[h.D] = std::move(h);
  }
  return out;
}

namespace {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    int e = 0;
    while (m % q == 0) { m /= q; ++e; }
    if (e) f.emplace_back(q, e);
  }
  if (m > 1) f.emplace_back(m, 1);
  return f;
}

}  // namespace

std::int64_t gross_zagier_ordp_F(std::int64_t m, std::int64_t D1, std::int64_t D2, std::int64_t p) {
  if (m <= 0) return 0;
  auto eps = [&](std::int64_t ell) {
    if (std::gcd(ell, D1) == 1) return kronecker(-D1, ell);
    return kronecker(-D2, ell);
  };
  std::int64_t result = 1;
  bool p_seen = false;
  for (const auto& [ell, e] : factorize(m)) {
    const int s = eps(ell);
    if (ell == p) {
      if (e % 2 == 0 || s != -1) return 0;
      result *= (e - 1) / 2 + 1;
      p_seen = true;
    } else if (s == -1) {
      if (e % 2 != 0) return 0;
    } else if (s == 1) {
      result *= e + 1;
    } else {
      return 0;
    }
  }
  return p_seen ? result : 0;
}

std::int64_t gross_zagier_ordp(std::int64_t D1, std::int64_t D2, std::int64_t p) {
  if (!is_fundamental_discriminant(-D1) || !is_fundamental_discriminant(-D2)) {
    throw DomainError("Gross-Zagier formula needs fundamental discriminants -D1, -D2");
  }
  if (std::gcd(D1, D2) != 1) throw DomainError("Gross-Zagier formula needs coprime D1, D2");
  if (!is_prime(static_cast<std::uint64_t>(p))) throw DomainError("p must be prime");
  const std::int64_t n = D1 * D2;
  std::int64_t total = 0;
  std::int64_t bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (bound * bound >= n) --bound;
  while ((bound + 1) * (bound + 1) < n) ++bound;
  for (std::int64_t x = -bound; x <= bound; ++x) {
    if ((n - x * x) % 4 != 0) continue;
    total += gross_zagier_ordp_F((n - x * x) / 4, D1, D2, p);
  }
  return total;
}

}  // namespace ltavg
