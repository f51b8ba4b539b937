#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "billiard/direction.hpp"
#include "billiard/language.hpp"
#include "billiard/numeric.hpp"

namespace billiard {

/// D_n = count(w, prefix of length n) - n mu[w], where an occurrence counts
/// once it ends inside the prefix (start position <= n - |w|).
struct DiscrepancySample {
  std::size_t n = 0;
  std::size_t count = 0;
  double expected = 0;
  double d = 0;
  double running_max = 0;  // max |D_k| over k <= n
};

struct DiscrepancySeries {
  std::string factor;
  Real mu;
  Provenance provenance = Provenance::Empirical;
  std::size_t n_max = 0;
  std::vector<DiscrepancySample> checkpoints;
  std::vector<DiscrepancySample> samples;  // every `stride` steps, when stride > 0
  std::size_t stride = 0;
  double max_abs = 0;
  /// Steps with |D_n| above the bound passed in, if any.
  std::optional<double> bound;
  std::size_t violations = 0;
};

/// Throws std::invalid_argument if a checkpoint exceeds the word length or
/// the checkpoints are not strictly increasing.
DiscrepancySeries discrepancy_series(std::string_view word, std::string_view factor, const FrequencyValue& mu,
                                     const std::vector<std::size_t>& checkpoints, std::size_t stride = 0,
                                     std::optional<double> bound = std::nullopt);

enum class VerdictKind { CertifiedBounded, EmpiricallyBounded, GrowthDetected };
const char* to_string(VerdictKind k);

struct BalanceVerdict {
  VerdictKind kind = VerdictKind::EmpiricallyBounded;
  std::optional<double> certified_bound;
  std::vector<std::pair<std::size_t, double>> maxima;  // (checkpoint, running max)
  bool bound_violated = false;                          // certified bound exceeded: a defect, never expected
};

/// Growth threshold between the first and last checkpoint maxima.
inline constexpr double kGrowthFactor = 1.5;

/// CertifiedBounded when a bound is supplied and never exceeded; otherwise
/// GrowthDetected when the last running max is at least 1.5 times the
/// first (and positive); otherwise EmpiricallyBounded. Needs 3 checkpoints.
BalanceVerdict balance_verdict(const DiscrepancySeries& series, std::optional<double> certified_bound);

/// {N/100, N/10, N}.
std::vector<std::size_t> default_checkpoints(std::size_t n);

struct BalanceEntry {
  DiscrepancySeries series;
  BalanceVerdict verdict;
};

struct BalanceReport {
  std::string direction;
  mpfr_prec_t precision = kDefaultPrecision;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 0;
  std::uint64_t seed_used = 0;
  std::size_t n = 0;
  std::vector<std::size_t> checkpoints;
  std::vector<std::string> parameter;  // m, decimal
  std::string caveat;
  std::vector<BalanceEntry> entries;
  std::vector<std::string> notes;

  std::size_t count(VerdictKind k) const;
};

/// Generates N letters from a sampled generic parameter and issues one
/// verdict per factor of length <= max_factor_len present in the word.
BalanceReport balance_report(const Direction& dir, std::size_t max_factor_len, std::size_t n, std::uint64_t seed,
                             double eps, std::vector<std::size_t> checkpoints = {});

}  // namespace billiard
