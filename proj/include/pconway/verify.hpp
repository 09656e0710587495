#pragma once
// Executable congruence statements for periodic links, each returning a
// self-contained report that can be replayed from its recorded inputs.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pconway/periodic.hpp"
#include "pconway/skein.hpp"

namespace pconway {

enum class Outcome { pass, fail, not_applicable, skipped };

std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

namespace statement {
inline constexpr const char* main_theorem = "main-theorem";
inline constexpr const char* lemma_4_1 = "lemma-4.1";
inline constexpr const char* lemma_4_3 = "lemma-4.3";
inline constexpr const char* hopf = "hopf-counterexample";
}  // namespace statement

struct VerificationReport {
  std::string statement;
  std::optional<QuotientPattern> pattern;
  int p = 0;
  std::optional<std::size_t> crossing;
  Outcome outcome = Outcome::pass;
  std::string detail;
  /// Computed values behind the outcome, in insertion order; on failure
  /// these are the offending polynomials and coefficients.
  std::vector<std::pair<std::string, std::string>> witness;
  std::chrono::milliseconds elapsed{0};
};

/// Budget applied to every check; exceeding it yields Outcome::skipped.
struct CheckLimits {
  std::chrono::milliseconds time_limit{60000};
};

VerificationReport verify_lemma_4_1(const QuotientPattern& q, std::size_t crossing, int p,
                                    ConwayEngine& engine, CheckLimits limits = {});
VerificationReport verify_main_theorem(const QuotientPattern& q, int p, ConwayEngine& engine,
                                       CheckLimits limits = {});
VerificationReport verify_lemma_4_3(const QuotientPattern& q, int p, ConwayEngine& engine,
                                    CheckLimits limits = {});
VerificationReport verify_hopf_counterexample(ConwayEngine& engine);

/// Two rightward strands with one crossing of the given sign: a single
/// quotient component of winding 2 whose 2-fold lift is a Hopf link.
QuotientPattern hopf_quotient(int sign = 1);

/// Re-runs a report from its recorded inputs.
VerificationReport replay(const VerificationReport& recorded, ConwayEngine& engine,
                          CheckLimits limits = {});

struct SuiteConfig {
  /// Any of "main", "lemma41", "lemma43", "hopf".
  std::vector<std::string> suites;
  std::vector<int> primes{3, 5};
  /// Checks per (suite, prime).
  int count = 100;
  std::uint64_t seed = 42;
  /// Quotient crossing ceiling per prime; primes not listed use 4.
  std::vector<std::pair<int, int>> max_quotient_crossings{{3, 8}, {5, 5}};
  std::size_t max_crossings = 64;
  std::chrono::milliseconds time_limit{60000};
  bool use_cache = true;
  int threads = 1;
  /// Failing reports are written here as replayable JSON when set.
  std::optional<std::filesystem::path> witness_dir;
};

struct OutcomeCounts {
  int pass = 0;
  int fail = 0;
  int not_applicable = 0;
  int skipped = 0;
  int total() const { return pass + fail + not_applicable + skipped; }
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<VerificationReport> reports;

  /// Counts per statement id, sorted by id.
  std::vector<std::pair<std::string, OutcomeCounts>> summary() const;
  OutcomeCounts totals() const;
};

/// Per-check seed derived from the master seed; stable across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::string_view suite, int p, int index);

SuiteReport run_suite(const SuiteConfig& config);

}  // namespace pconway
