// Averages of phi_lambda(X) = #{5 <= p < X : C_lambda superspecial mod p}
// over integer windows |lambda| <= N and rational height boxes ht <= N.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ltavg {

enum class AverageMode { Integer, Rational };
std::string mode_label(AverageMode m);
AverageMode parse_mode(const std::string& s);  // throws DomainError

// (6 + 4 sqrt 3) pi / 9 and 4 (3 + 2 sqrt 3) / (3 pi).
double integer_constant();
double rational_constant();

// Superspecial residues for every prime 5 <= p < X.
class SuperspecialTable {
 public:
  explicit SuperspecialTable(std::uint32_t X, unsigned threads = 1);

  std::uint32_t bound() const { return X_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  const std::vector<std::uint32_t>& residues(std::uint32_t p) const;  // sorted
  bool contains(std::uint32_t p, std::uint32_t r) const;

 private:
  std::uint32_t X_;
  std::vector<std::uint32_t> primes_;
  std::map<std::uint32_t, std::vector<std::uint32_t>> sets_;
  std::map<std::uint32_t, std::vector<bool>> member_;
};

struct PhiResult {
  std::int64_t count = 0;
  bool degenerate = false;  // lambda in {0, 1}
};

// lambda = b/a; reduced internally, a != 0.  Primes p < min(X, table bound).
PhiResult phi_lambda(const mpq_class& lambda, std::uint32_t X, const SuperspecialTable& table);
PhiResult phi_lambda(const mpq_class& lambda, std::uint32_t X);

struct AverageRun {
  AverageMode mode = AverageMode::Integer;
  std::uint32_t X = 0;
  std::int64_t N = 0;
  std::int64_t total = 0;
  double normalized = 0;  // total / N or total / N^2
  double predicted = 0;   // constant * sqrt(X) / log(X)
  double ratio = 0;
  bool below_regime = false;  // N < X
};

// Rough operation count for a run; throws DomainError above the budget.
inline constexpr double kAverageBudget = 2e11;
double estimated_cost(std::uint32_t X, std::int64_t N, AverageMode mode);
void check_budget(std::uint32_t X, std::int64_t N, AverageMode mode);

// Per-prime count of admissible window elements reducing into the table's set.
std::int64_t window_count_at(std::uint32_t p, const std::vector<std::uint32_t>& residues, std::int64_t N,
                             AverageMode mode, const std::vector<signed char>& mobius);
std::vector<signed char> mobius_table(std::int64_t n);

AverageRun window_sum(std::uint32_t X, std::int64_t N, AverageMode mode, const SuperspecialTable& table,
                      unsigned threads = 1);
AverageRun window_sum(std::uint32_t X, std::int64_t N, AverageMode mode, unsigned threads = 1);

// The same total by looping over every lambda in the window.
std::int64_t brute_force_total(std::uint32_t X, std::int64_t N, AverageMode mode, const SuperspecialTable& table);

std::int64_t default_window(std::uint32_t X);  // ceil(X^1.1)
std::vector<AverageRun> convergence_table(const std::vector<std::uint32_t>& Xs, AverageMode mode,
                                          unsigned threads = 1);

std::string average_metadata();
std::string average_csv_header();
std::string average_csv(const AverageRun& r);
std::string average_json(const std::vector<AverageRun>& runs);

}  // namespace ltavg
