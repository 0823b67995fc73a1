#include "ltavg/average.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "ltavg/family.hpp"
#include "ltavg/fields.hpp"
#include "ltavg/parallel.hpp"

namespace ltavg {

std::string mode_label(AverageMode m) { return m == AverageMode::Integer ? "integer" : "rational"; }

AverageMode parse_mode(const std::string& s) {
  if (s == "integer") return AverageMode::Integer;
  if (s == "rational" || s == "rational-height") return AverageMode::Rational;
  throw DomainError("unknown mode '" + s + "' (expected integer or rational)");
}

double integer_constant() { return (6.0 + 4.0 * std::sqrt(3.0)) * M_PI / 9.0; }
double rational_constant() { return 4.0 * (3.0 + 2.0 * std::sqrt(3.0)) / (3.0 * M_PI); }

SuperspecialTable::SuperspecialTable(std::uint32_t X, unsigned threads) : X_(X) {
  if (X > kPsiBound) throw DomainError("X = " + std::to_string(X) + " above the enumeration bound");
  if (X > 5) primes_ = primes_in_range(5, X - 1);
  auto sets = parallel_map<std::vector<std::uint32_t>>(
      primes_.size(), threads, [&](std::size_t i) { return superspecial_lambdas(primes_[i]); });
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    std::vector<bool> member(primes_[i], false);
    for (std::uint32_t r : sets[i]) member[r] = true;
    member_.emplace(primes_[i], std::move(member));
    sets_.emplace(primes_[i], std::move(sets[i]));
  }
}

const std::vector<std::uint32_t>& SuperspecialTable::residues(std::uint32_t p) const {
  auto it = sets_.find(p);
  if (it == sets_.end()) throw DomainError("no superspecial set for p = " + std::to_string(p));
  return it->second;
}

bool SuperspecialTable::contains(std::uint32_t p, std::uint32_t r) const {
  auto it = member_.find(p);
  return it != member_.end() && r < p && it->second[r];
}

namespace {

std::uint32_t mod_p(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

// lambda = b/a, gcd(a, b) = 1, a >= 1.
std::int64_t phi_small(std::int64_t b, std::int64_t a, std::uint32_t X, const SuperspecialTable& table) {
  std::int64_t count = 0;
  for (std::uint32_t p : table.primes()) {
    if (p >= X) break;
    const std::uint32_t ar = mod_p(a, p);
    if (ar == 0) continue;
    const std::uint64_t r = mod_p(b, p) * pow_mod(ar, p - 2, p) % p;
    if (table.contains(p, static_cast<std::uint32_t>(r))) ++count;
  }
  return count;
}

}  // namespace

PhiResult phi_lambda(const mpq_class& lambda, std::uint32_t X, const SuperspecialTable& table) {
  if (X > table.bound()) throw DomainError("X exceeds the table bound");
  mpq_class l = lambda;
  l.canonicalize();
  if (l == 0 || l == 1) return {0, true};
  const mpz_class& a = l.get_den();
  const mpz_class& b = l.get_num();
  PhiResult out;
  for (std::uint32_t p : table.primes()) {
    if (p >= X) break;
    const unsigned long ar = mpz_fdiv_ui(a.get_mpz_t(), p);
    if (ar == 0) continue;
    const std::uint64_t r = mpz_fdiv_ui(b.get_mpz_t(), p) * pow_mod(ar, p - 2, p) % p;
    if (table.contains(p, static_cast<std::uint32_t>(r))) ++out.count;
  }
  return out;
}

PhiResult phi_lambda(const mpq_class& lambda, std::uint32_t X) {
  return phi_lambda(lambda, X, SuperspecialTable(X));
}

double estimated_cost(std::uint32_t X, std::int64_t N, AverageMode mode) {
  const double x = std::max<double>(X, 3);
  const double primes = x / std::log(x);
  double cost = x * x * x / (36.0 * std::log(x));  // superspecial scans
  if (mode == AverageMode::Rational) cost += primes * (static_cast<double>(N) + x * std::sqrt(x));
  else cost += primes * std::sqrt(x);
  return cost;
}

void check_budget(std::uint32_t X, std::int64_t N, AverageMode mode) {
  if (X < 5) throw DomainError("X must be at least 5");
  if (N < 1) throw DomainError("N must be positive");
  if (X > kPsiBound) throw DomainError("X = " + std::to_string(X) + " above the enumeration bound");
  if (N > 1'000'000'000) throw DomainError("N = " + std::to_string(N) + " above the window bound 10^9");
  const double cost = estimated_cost(X, N, mode);
  if (cost > kAverageBudget) {
    std::ostringstream os;
    os << "budget exceeded: estimated " << cost << " operations for X = " << X << ", N = " << N
       << " (limit " << kAverageBudget << ")";
    throw DomainError(os.str());
  }
}

std::vector<signed char> mobius_table(std::int64_t n) {
  std::vector<signed char> mu(static_cast<std::size_t>(n) + 1, 1);
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::int64_t> primes;
  if (n >= 0) mu[0] = 0;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::int64_t q : primes) {
      if (q * i > n) break;
      composite[q * i] = true;
      if (i % q == 0) {
        mu[q * i] = 0;
        break;
      }
      mu[q * i] = static_cast<signed char>(-mu[i]);
    }
  }
  return mu;
}

std::int64_t window_count_at(std::uint32_t p, const std::vector<std::uint32_t>& residues, std::int64_t N,
                             AverageMode mode, const std::vector<signed char>& mobius) {
  const std::int64_t P = p;
  const std::int64_t psi = static_cast<std::int64_t>(residues.size());
  if (psi == 0) return 0;

  if (mode == AverageMode::Integer) {
    // #{|l| <= N : l = s mod p} = 2q + [s <= t] + [s >= p - t] for s != 0.
    const std::int64_t q = N / P, t = N % P;
    std::int64_t c = 2 * q * psi;
    for (std::uint32_t s : residues) c += (s <= t) + (s >= P - t);
    return c;
  }

  // Coprime (a, b) in the box with b = s a mod p; by Moebius over the common divisor.
  // below[t] = #{(u, s) : 1 <= u <= t, su mod p <= t} + #{... : su mod p >= p - t}.
  std::vector<std::int64_t> below(p, 0);
  for (std::int64_t u = 1; u < P; ++u) {
    for (std::uint32_t s : residues) {
      const std::int64_t r = s * u % P;
      ++below[std::max(u, r)];
      ++below[std::max(u, P - r)];
    }
  }
  std::partial_sum(below.begin(), below.end(), below.begin());
  // Lattice points (a, b), 1 <= a <= M, |b| <= M, b = s a mod p, summed over s.
  auto lattice = [&](std::int64_t M) {
    const std::int64_t q = M / P, t = M % P;
    return q * psi * (2 * q + 1) + 2 * q * q * psi * (P - 1) + 4 * q * t * psi + below[t];
  };
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= N; ++d) {
    if (mobius[d] == 0 || d % P == 0) continue;
    total += mobius[d] * lattice(N / d);
  }
  // d = p e: every point of the shrunken box lies in each lattice.
  for (std::int64_t e = 1; e * P <= N; ++e) {
    if (mobius[e] == 0 || e % P == 0) continue;
    const std::int64_t M = N / (P * e);
    total -= mobius[e] * psi * M * (2 * M + 1);
  }
  return total;
}

namespace {

AverageRun finish_run(std::uint32_t X, std::int64_t N, AverageMode mode, std::int64_t total) {
  AverageRun r;
  r.mode = mode;
  r.X = X;
  r.N = N;
  r.total = total;
  const double n = static_cast<double>(N);
  r.normalized = mode == AverageMode::Integer ? total / n : total / (n * n);
  const double c = mode == AverageMode::Integer ? integer_constant() : rational_constant();
  r.predicted = c * std::sqrt(static_cast<double>(X)) / std::log(static_cast<double>(X));
  r.ratio = r.normalized / r.predicted;
  r.below_regime = N < static_cast<std::int64_t>(X);
  return r;
}

std::vector<std::uint32_t> primes_below(const SuperspecialTable& table, std::uint32_t X) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p : table.primes()) {
    if (p < X) out.push_back(p);
  }
  return out;
}

}  // namespace

AverageRun window_sum(std::uint32_t X, std::int64_t N, AverageMode mode, const SuperspecialTable& table,
                      unsigned threads) {
  check_budget(X, N, mode);
  if (X > table.bound()) throw DomainError("X exceeds the table bound");
  const std::vector<std::uint32_t> primes = primes_below(table, X);
  const std::vector<signed char> mobius = mode == AverageMode::Rational ? mobius_table(N) : std::vector<signed char>{};
  const auto counts = parallel_map<std::int64_t>(primes.size(), threads, [&](std::size_t i) {
    return window_count_at(primes[i], table.residues(primes[i]), N, mode, mobius);
  });
  return finish_run(X, N, mode, std::accumulate(counts.begin(), counts.end(), std::int64_t{0}));
}

AverageRun window_sum(std::uint32_t X, std::int64_t N, AverageMode mode, unsigned threads) {
  check_budget(X, N, mode);
  return window_sum(X, N, mode, SuperspecialTable(X, threads), threads);
}

std::int64_t brute_force_total(std::uint32_t X, std::int64_t N, AverageMode mode, const SuperspecialTable& table) {
  if (X > table.bound()) throw DomainError("X exceeds the table bound");
  const double work = static_cast<double>(N) * (mode == AverageMode::Rational ? 2.0 * N : 2.0) *
                      static_cast<double>(table.primes().size() + 1);
  if (work > 1e10) throw DomainError("brute-force check too large for X = " + std::to_string(X) +
                                     ", N = " + std::to_string(N));
  std::int64_t total = 0;
  if (mode == AverageMode::Integer) {
    for (std::int64_t l = -N; l <= N; ++l) {
      if (l != 0 && l != 1) total += phi_small(l, 1, X, table);
    }
    return total;
  }
  for (std::int64_t a = 1; a <= N; ++a) {
    for (std::int64_t b = -N; b <= N; ++b) {
      if (std::gcd(a, b) != 1 || (a == 1 && (b == 0 || b == 1))) continue;
      total += phi_small(b, a, X, table);
    }
  }
  return total;
}

std::int64_t default_window(std::uint32_t X) {
  return static_cast<std::int64_t>(std::ceil(std::pow(static_cast<long double>(X), 1.1L)));
}

std::vector<AverageRun> convergence_table(const std::vector<std::uint32_t>& Xs, AverageMode mode, unsigned threads) {
  if (Xs.empty()) return {};
  std::vector<std::uint32_t> sorted = Xs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::uint32_t X : sorted) check_budget(X, default_window(X), mode);
  const SuperspecialTable table(sorted.back(), threads);
  std::vector<AverageRun> out;
  for (std::uint32_t X : sorted) out.push_back(window_sum(X, default_window(X), mode, table, threads));
  return out;
}

std::string average_metadata() {
  return "# window: integer |lambda| <= N, or rational b/a with gcd(a,b) = 1, a >= 1, max(a,|b|) <= N\n"
         "# lambda in {0, 1} excluded; primes 5 <= p < X; p | a skipped as bad reduction\n"
         "# residues 0, 1 and roots of lambda^2 - lambda + 1 are never superspecial and never counted\n"
         "# normalized = total/N (integer) or total/N^2 (rational); predicted = C sqrt(X)/log(X)\n";
}

std::string average_csv_header() { return "mode,X,N,total,normalized,predicted,ratio"; }

namespace {

std::string fixed(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string average_csv(const AverageRun& r) {
  return mode_label(r.mode) + "," + std::to_string(r.X) + "," + std::to_string(r.N) + "," + std::to_string(r.total) +
         "," + fixed(r.normalized) + "," + fixed(r.predicted) + "," + fixed(r.ratio);
}

std::string average_json(const std::vector<AverageRun>& runs) {
  nlohmann::ordered_json j;
  j["metadata"] = {
      {"window", "integer |lambda| <= N; rational b/a, gcd(a,b) = 1, a >= 1, max(a,|b|) <= N"},
      {"excluded", "lambda in {0, 1}; primes dividing the denominator; degenerate residues"},
      {"integer_constant", integer_constant()},
      {"rational_constant", rational_constant()},
  };
  j["rows"] = nlohmann::ordered_json::array();
  for (const AverageRun& r : runs) {
    j["rows"].push_back({{"mode", mode_label(r.mode)},
                         {"X", r.X},
                         {"N", r.N},
                         {"total", r.total},
                         {"normalized", r.normalized},
                         {"predicted", r.predicted},
                         {"ratio", r.ratio}});
  }
  return j.dump();
}

}  // namespace ltavg
