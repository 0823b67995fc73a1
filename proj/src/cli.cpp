#include "ltavg/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>

#include "ltavg/average.hpp"
#include "ltavg/family.hpp"
#include "ltavg/fields.hpp"
#include "ltavg/isogenies.hpp"
#include "ltavg/parallel.hpp"
#include "ltavg/structure.hpp"

namespace ltavg {

namespace {

struct Options {
  std::int64_t from = 0, to = 0;
  std::vector<std::int64_t> Xs;
  std::int64_t N = 0;
  std::string mode = "integer";
  std::int64_t p = 0, lambda = 0;
  int trials = 50;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  std::string output;
  unsigned threads = 0;
  bool check_bruteforce = false;
};

// Stream for rows: the --output file when given, otherwise stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw DomainError("cannot open output file " + path);
    os_ = file_.get();
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

std::vector<std::uint32_t> prime_range(const Options& o) {
  if (o.from < 5) throw DomainError("--from must be at least 5, got " + std::to_string(o.from));
  if (o.to < o.from) throw DomainError("empty range: --to " + std::to_string(o.to) + " < --from " + std::to_string(o.from));
  if (o.to > kPsiBound) {
    throw DomainError("--to " + std::to_string(o.to) + " above the enumeration bound " + std::to_string(kPsiBound));
  }
  auto primes = primes_in_range(static_cast<std::uint32_t>(o.from), static_cast<std::uint32_t>(o.to));
  if (primes.empty()) {
    throw DomainError("no primes in [" + std::to_string(o.from) + ", " + std::to_string(o.to) + "]");
  }
  return primes;
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw DomainError("unsupported --format " + f);
}

int cmd_psi(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o.format, {"csv", "json"});
  const auto primes = prime_range(o);
  Sink sink(o.output, out);
  const bool csv = o.format == "csv";
  if (csv) *sink << psi_report_csv_header() << "\n";
  std::size_t pass = 0;
  const unsigned threads = resolve_threads(o.threads);
  parallel_ordered<PsiReport>(
      primes.size(), threads, 2 * threads, [&](std::size_t i) { return psi_p(primes[i]); },
      [&](std::size_t, PsiReport&& r) {
        if (r.ok) ++pass;
        *sink << (csv ? psi_report_csv(r) : psi_report_json(r)) << "\n";
        (*sink).flush();
      });
  err << "psi: " << primes.size() << " primes, " << pass << " pass, " << primes.size() - pass << " fail\n";
  return pass == primes.size() ? 0 : 1;
}

int cmd_structure(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o.format, {"csv", "json", "dot"});
  const auto primes = prime_range(o);
  const bool dot = o.format == "dot";
  if (dot) {
    if (o.output.empty()) throw DomainError("--format dot needs --output DIR");
    std::filesystem::create_directories(o.output);
  }
  Sink sink(dot ? std::string() : o.output, out);
  if (o.format != "json") *sink << structure_csv_header() << "\n";
  std::size_t pass = 0;
  const unsigned threads = resolve_threads(o.threads);
  parallel_ordered<StructureRow>(
      primes.size(), threads, 2 * threads, [&](std::size_t i) { return structure_row(primes[i]); },
      [&](std::size_t, StructureRow&& row) {
        if (row.ok) ++pass;
        *sink << (o.format == "json" ? structure_json(row) : structure_csv(row)) << "\n";
        (*sink).flush();
        if (!row.diagnostic.empty()) err << "p = " << row.report.p << ": " << row.diagnostic << "\n";
        if (dot && row.graph) {
          const auto path = std::filesystem::path(o.output) / ("G_" + std::to_string(row.report.p) + ".dot");
          std::ofstream f(path, std::ios::binary);
          if (!f) throw DomainError("cannot write " + path.string());
          f << graph_dot(*row.graph);
        }
      });
  err << "structure: " << primes.size() << " primes, " << pass << " pass, " << primes.size() - pass << " fail\n";
  return pass == primes.size() ? 0 : 1;
}

int cmd_isogeny(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o.format, {"csv", "json"});
  if (o.p < 5 || !is_prime(static_cast<std::uint64_t>(o.p)) || o.p > kPsiBound) {
    throw DomainError("--p must be a prime in [5, " + std::to_string(kPsiBound) + "], got " + std::to_string(o.p));
  }
  if (o.trials < 1) throw DomainError("--trials must be positive");
  const PrimeField field(static_cast<std::uint64_t>(o.p));
  const Fp lambda = field(o.lambda);
  if (lambda.is_zero() || lambda.value() == 1 || lambda_delta(lambda).is_zero()) {
    throw DomainError("lambda = " + std::to_string(o.lambda) + " is singular mod " + std::to_string(o.p));
  }
  const IsogenyAnchors anchors = isogeny_anchors(lambda);
  const bool compose = compose_is_minus3(lambda, o.trials, o.seed);
  const bool ok = anchors.all() && compose;
  Sink sink(o.output, out);
  if (o.format == "csv") {
    *sink << "p,lambda,trials,seed,anchors,compose,ok\n"
          << o.p << "," << lambda.value() << "," << o.trials << "," << o.seed << ","
          << (anchors.all() ? "true" : "false") << "," << (compose ? "true" : "false") << ","
          << (ok ? "true" : "false") << "\n";
  } else {
    nlohmann::ordered_json j;
    j["p"] = o.p;
    j["lambda"] = lambda.value();
    j["trials"] = o.trials;
    j["seed"] = o.seed;
    j["anchors"] = {{"origin", anchors.origin},
                    {"unit", anchors.unit},
                    {"two_torsion", anchors.two_torsion},
                    {"kernel", anchors.kernel}};
    j["compose"] = compose;
    j["ok"] = ok;
    *sink << j.dump() << "\n";
  }
  err << "isogeny: " << (ok ? "pass" : "fail") << "\n";
  return ok ? 0 : 1;
}

int cmd_average(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o.format, {"csv", "json"});
  const AverageMode mode = parse_mode(o.mode);
  if (o.Xs.empty()) throw DomainError("--X is required");
  std::vector<std::uint32_t> Xs;
  for (std::int64_t X : o.Xs) {
    if (X < 5 || X > kPsiBound) throw DomainError("--X " + std::to_string(X) + " outside [5, " + std::to_string(kPsiBound) + "]");
    Xs.push_back(static_cast<std::uint32_t>(X));
  }
  std::sort(Xs.begin(), Xs.end());
  Xs.erase(std::unique(Xs.begin(), Xs.end()), Xs.end());
  auto window = [&](std::uint32_t X) { return o.N > 0 ? o.N : default_window(X); };
  for (std::uint32_t X : Xs) check_budget(X, window(X), mode);

  const SuperspecialTable table(Xs.back(), o.threads);
  std::vector<AverageRun> runs;
  bool brute_ok = true;
  for (std::uint32_t X : Xs) {
    runs.push_back(window_sum(X, window(X), mode, table, o.threads));
    const AverageRun& r = runs.back();
    if (r.below_regime) err << "warning: N = " << r.N << " < X = " << X << ", outside the large-window regime\n";
    if (o.check_bruteforce) {
      const std::int64_t brute = brute_force_total(X, r.N, mode, table);
      const bool match = brute == r.total;
      brute_ok = brute_ok && match;
      err << "bruteforce X = " << X << ", N = " << r.N << ": " << (match ? "match" : "MISMATCH") << " (" << brute
          << " vs " << r.total << ")\n";
    }
  }
  Sink sink(o.output, out);
  if (o.format == "csv") {
    *sink << average_metadata() << average_csv_header() << "\n";
    for (const AverageRun& r : runs) *sink << average_csv(r) << "\n";
  } else {
    *sink << average_json(runs) << "\n";
  }
  return brute_ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superspecial genus-2 Legendre family: counts, structure checks and averages"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format: csv, json (dot for structure)");
    c->add_option("--output", o.output, "Output file (directory for dot)");
    c->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
    c->add_option("--seed", o.seed, "Random seed");
  };
  auto add_range = [&](CLI::App* c) {
    c->add_option("--from", o.from, "Smallest prime candidate")->required();
    c->add_option("--to", o.to, "Largest prime candidate")->required();
  };

  CLI::App* psi = app.add_subcommand("psi", "Count superspecial lambdas and compare with class numbers");
  add_range(psi);
  add_common(psi);
  CLI::App* structure = app.add_subcommand("structure", "Root-set shape and graph checks per prime");
  add_range(structure);
  add_common(structure);
  CLI::App* isogeny = app.add_subcommand("isogeny", "Check that the 3-isogeny pair composes to [-3]");
  isogeny->add_option("--p", o.p, "Prime")->required();
  isogeny->add_option("--lambda", o.lambda, "Parameter, reduced mod p")->required();
  isogeny->add_option("--trials", o.trials, "Random points per curve");
  add_common(isogeny);
  CLI::App* average = app.add_subcommand("average", "Window sums of phi_lambda(X) against the predicted constants");
  average->add_option("--X", o.Xs, "Prime bounds, comma separated")->required()->delimiter(',');
  average->add_option("--N", o.N, "Window size (default ceil(X^1.1))");
  average->add_option("--mode", o.mode, "integer or rational");
  average->add_flag("--check-bruteforce", o.check_bruteforce, "Compare with the direct double loop");
  add_common(average);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (psi->parsed()) return cmd_psi(o, out, err);
    if (structure->parsed()) return cmd_structure(o, out, err);
    if (isogeny->parsed()) return cmd_isogeny(o, out, err);
    return cmd_average(o, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ltavg
