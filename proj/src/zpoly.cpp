#include "ltavg/zpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace ltavg {

void zpoly_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int zpoly_degree(const ZPoly& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (f[i] != 0) return static_cast<int>(i);
  return -1;
}

ZPoly zpoly_mul(const ZPoly& f, const ZPoly& g) {
  if (f.empty() || g.empty()) return {};
  ZPoly r(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  zpoly_trim(r);
  return r;
}

ZPoly zpoly_scale(const ZPoly& f, const mpz_class& c) {
  ZPoly r = f;
  for (auto& x : r) x *= c;
  zpoly_trim(r);
  return r;
}

mpz_class zpoly_eval(const ZPoly& f, const mpz_class& x) {
  mpz_class acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

Fp2Poly zpoly_reduce(const ZPoly& f, const PrimeField& field) {
  std::vector<Fp2> c;
  c.reserve(f.size());
  const mpz_class p = field.p();
  for (const auto& x : f) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    c.push_back(field.ext(static_cast<std::int64_t>(r.get_ui())));
  }
  return Fp2Poly(std::move(c));
}

std::string zpoly_to_string(const ZPoly& f, const char* var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    mpz_class c = f[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    c = abs(c);
    if (c != 1 || i == 0) os << c.get_str();
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

ZPoly interpolate_integer(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys) {
  const std::size_t n = xs.size();
  // Newton divided differences over Q.
  std::vector<mpq_class> dd(ys.begin(), ys.end());
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / mpq_class(xs[i] - xs[i - k]);
      if (i == k) break;
    }
  std::vector<mpq_class> poly{dd[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    // poly = poly * (X - xs[k]) + dd[k]
    std::vector<mpq_class> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * mpq_class(xs[k]);
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  ZPoly out;
  for (auto& q : poly) {
    q.canonicalize();
    if (q.get_den() != 1) throw std::logic_error("interpolant has a non-integer coefficient");
    out.push_back(q.get_num());
  }
  zpoly_trim(out);
  return out;
}

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

mpz_class resultant(const ZPoly& f0, const ZPoly& g0) {
  ZPoly f = f0, g = g0;
  zpoly_trim(f);
  zpoly_trim(g);
  const int m = zpoly_degree(f), n = zpoly_degree(g);
  if (m < 0 || n < 0) return 0;
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (size == 0) return 1;
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
  // Rows hold coefficients high degree first.
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
  return bareiss_determinant(std::move(s));
}

}  // namespace ltavg
