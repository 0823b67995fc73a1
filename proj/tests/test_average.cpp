#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ltavg/average.hpp"
#include "ltavg/fields.hpp"

using namespace ltavg;

TEST_CASE("constants") {
  CHECK(integer_constant() == doctest::Approx(4.5128).epsilon(1e-4));
  CHECK(rational_constant() == doctest::Approx(2.7434).epsilon(1e-4));
}

TEST_CASE("phi at small X") {
  const SuperspecialTable table(50);
  CHECK(phi_lambda(2, 7, table).count == 1);
  CHECK(phi_lambda(mpq_class(1, 2), 7, table).count == 1);
  const PhiResult zero = phi_lambda(0, 50, table);
  CHECK(zero.count == 0);
  CHECK(zero.degenerate);
  CHECK(phi_lambda(1, 50, table).degenerate);
  CHECK(phi_lambda(mpq_class(2, 4), 7, table).count == 1);
  CHECK(phi_lambda(2, 7).count == 1);
  CHECK_THROWS_AS(phi_lambda(2, 60, table), DomainError);
  // p = 5 divides the denominator: bad reduction, skipped.
  CHECK(phi_lambda(mpq_class(1, 5), 7, table).count == 0);
}

TEST_CASE("window sums equal the direct double loop") {
  const SuperspecialTable table(50);
  for (std::uint32_t X : {5u, 6u, 10u, 20u, 37u, 50u}) {
    for (std::int64_t N : {1, 2, 7, 30, 97, 200}) {
      for (AverageMode mode : {AverageMode::Integer, AverageMode::Rational}) {
        const AverageRun run = window_sum(X, N, mode, table);
        CHECK_MESSAGE(run.total == brute_force_total(X, N, mode, table), "X = ", X, ", N = ", N, ", ",
                      mode_label(mode));
      }
    }
  }
}

TEST_CASE("monotone in X and N") {
  const SuperspecialTable table(200);
  for (AverageMode mode : {AverageMode::Integer, AverageMode::Rational}) {
    std::int64_t prev_x = -1;
    for (std::uint32_t X = 5; X <= 200; X += 15) {
      const std::int64_t t = window_sum(X, 150, mode, table).total;
      CHECK(t >= prev_x);
      prev_x = t;
    }
    std::int64_t prev_n = -1;
    for (std::int64_t N = 1; N <= 400; N += 37) {
      const std::int64_t t = window_sum(200, N, mode, table).total;
      CHECK(t >= prev_n);
      prev_n = t;
    }
  }
}

TEST_CASE("normalization and regime flag") {
  const AverageRun r = window_sum(10, 30, AverageMode::Integer);
  CHECK(r.normalized == doctest::Approx(static_cast<double>(r.total) / 30));
  CHECK(r.predicted == doctest::Approx(integer_constant() * std::sqrt(10.0) / std::log(10.0)));
  CHECK(r.ratio == doctest::Approx(r.normalized / r.predicted));
  CHECK_FALSE(r.below_regime);
  CHECK(window_sum(10, 5, AverageMode::Integer).below_regime);
  const AverageRun q = window_sum(10, 30, AverageMode::Rational);
  CHECK(q.normalized == doctest::Approx(static_cast<double>(q.total) / 900));
}

TEST_CASE("budget and window defaults") {
  CHECK(default_window(1000) == 1996);
  CHECK(default_window(10000) == 25119);
  CHECK_THROWS_AS(check_budget(4, 10, AverageMode::Integer), DomainError);
  CHECK_THROWS_AS(check_budget(100000, 10, AverageMode::Integer), DomainError);
  CHECK_THROWS_AS(check_budget(1000, 2'000'000'000, AverageMode::Rational), DomainError);
  CHECK_NOTHROW(check_budget(10000, 25119, AverageMode::Rational));
  CHECK(parse_mode("integer") == AverageMode::Integer);
  CHECK(parse_mode("rational") == AverageMode::Rational);
  CHECK_THROWS_AS(parse_mode("real"), DomainError);
}

TEST_CASE("Moebius table") {
  const auto mu = mobius_table(30);
  CHECK(mu[1] == 1);
  CHECK(mu[2] == -1);
  CHECK(mu[4] == 0);
  CHECK(mu[6] == 1);
  CHECK(mu[30] == -1);
  CHECK(mu[12] == 0);
}

TEST_CASE("csv and json") {
  const AverageRun r = window_sum(20, 50, AverageMode::Rational);
  CHECK(average_csv_header() == "mode,X,N,total,normalized,predicted,ratio");
  CHECK(average_csv(r).rfind("rational,20,50,4185,", 0) == 0);
  CHECK(average_json({r}).find("\"total\":4185") != std::string::npos);
  CHECK(average_metadata().rfind("# ", 0) == 0);
}
