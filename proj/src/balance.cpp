#include "billiard/balance.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "billiard/dynamics.hpp"
#include "billiard/geometry.hpp"

namespace billiard {

DiscrepancySeries discrepancy_series(std::string_view word, std::string_view factor, const FrequencyValue& mu,
                                     const std::vector<std::size_t>& checkpoints, std::size_t stride,
                                     std::optional<double> bound) {
  if (factor.empty()) throw std::invalid_argument("empty factor");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] > word.size()) throw std::invalid_argument("checkpoint exceeds word length");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("checkpoints must increase");
  }
  DiscrepancySeries s;
  s.factor = std::string(factor);
  s.mu = mu.value;
  s.provenance = mu.provenance;
  s.n_max = checkpoints.empty() ? word.size() : checkpoints.back();
  s.stride = stride;
  s.bound = bound;

  // 64-bit mantissa: n mu stays within 1e-13 of exact for n <= 1e7.
  const long double m = mu.value.to_long_double();
  const std::size_t len = factor.size();
  std::size_t count = 0;
  double running = 0;
  std::size_t next = 0;
  auto record = [&](std::size_t n, double d) {
    return DiscrepancySample{n, count, static_cast<double>(static_cast<long double>(n) * m), d, running};
  };
  if (stride > 0) s.samples.push_back(record(0, 0.0));
  while (next < checkpoints.size() && checkpoints[next] == 0) s.checkpoints.push_back(record(checkpoints[next++], 0.0));

  for (std::size_t n = 1; n <= s.n_max; ++n) {
    if (n >= len && std::memcmp(word.data() + (n - len), factor.data(), len) == 0) ++count;
    const double d = static_cast<double>(static_cast<long double>(count) - static_cast<long double>(n) * m);
    const double a = std::fabs(d);
    if (a > running) running = a;
    if (bound && a > *bound) ++s.violations;
    if (stride > 0 && n % stride == 0) s.samples.push_back(record(n, d));
    while (next < checkpoints.size() && checkpoints[next] == n) s.checkpoints.push_back(record(checkpoints[next++], d));
  }
  s.max_abs = running;
  return s;
}

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedBounded:
      return "CertifiedBoundedByC";
    case VerdictKind::EmpiricallyBounded:
      return "EmpiricallyBounded";
    case VerdictKind::GrowthDetected:
      return "GrowthDetected";
  }
  return "?";
}

BalanceVerdict balance_verdict(const DiscrepancySeries& series, std::optional<double> certified_bound) {
  if (series.checkpoints.size() < 3) throw std::invalid_argument("a verdict needs at least 3 checkpoints");
  BalanceVerdict v;
  for (const auto& c : series.checkpoints) v.maxima.emplace_back(c.n, c.running_max);
  if (certified_bound) {
    v.certified_bound = certified_bound;
    if (series.max_abs <= *certified_bound) {
      v.kind = VerdictKind::CertifiedBounded;
      return v;
    }
    v.bound_violated = true;
  }
  const double first = series.checkpoints.front().running_max;
  const double last = series.checkpoints.back().running_max;
  v.kind = (last > 0 && last >= kGrowthFactor * first) ? VerdictKind::GrowthDetected : VerdictKind::EmpiricallyBounded;
  return v;
}

std::vector<std::size_t> default_checkpoints(std::size_t n) {
  if (n < 100) throw std::invalid_argument("N must be at least 100 for the default checkpoints");
  return {n / 100, n / 10, n};
}

std::size_t BalanceReport::count(VerdictKind k) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [k](const BalanceEntry& e) { return e.verdict.kind == k; }));
}

BalanceReport balance_report(const Direction& dir, std::size_t max_factor_len, std::size_t n, std::uint64_t seed,
                             double eps, std::vector<std::size_t> checkpoints) {
  dir.require_numeric("balance_report");
  if (max_factor_len == 0) throw std::invalid_argument("max factor length must be positive");
  if (checkpoints.empty()) checkpoints = default_checkpoints(n);
  if (checkpoints.back() > n) throw std::invalid_argument("checkpoint exceeds N");

  BalanceReport r;
  r.direction = dir.text;
  r.precision = dir.precision;
  r.epsilon = eps;
  r.seed = seed;
  r.n = n;
  r.checkpoints = checkpoints;
  r.caveat = irrationality_caveat(dir);

  auto gen = generate_generic_word(dir, seed, 0, n, eps);
  r.seed_used = gen.seed_used;
  for (const auto& c : gen.word.m.coords) r.parameter.push_back(c.to_string(30));
  const std::string& word = gen.word.letters;

  std::vector<double> bounds;
  for (int a = 1; a <= dir.d + 1; ++a) bounds.push_back(letter_discrepancy_bound(dir, a).to_double());

  for (std::size_t len = 1; len <= max_factor_len && len <= word.size(); ++len) {
    const FactorTable table = factor_table(word, len);
    for (const auto& [w, c] : table.counts) {
      FrequencyValue mu = reference_frequency(dir, w, table, eps);
      std::optional<double> bound;
      if (len == 1) bound = bounds[static_cast<std::size_t>(w[0] - '1')];
      BalanceEntry e;
      e.series = discrepancy_series(word, w, mu, checkpoints, 0, bound);
      e.verdict = balance_verdict(e.series, bound);
      r.entries.push_back(std::move(e));
    }
  }
  r.notes.push_back("Finite data cannot prove boundedness: non-certified verdicts describe running maxima at the checkpoints only.");
  r.notes.push_back("GrowthDetected means the last running max is at least 1.5 times the first.");
  r.notes.push_back("Balance on factors of length n+1 implies balance on factors of length n.");
  r.notes.push_back("Letter bounds C_a are upper bounds, not claimed optimal.");
  r.notes.push_back("Frequencies of provenance 'empirical' come from the same word (empirical-mu), mixing frequency error into the discrepancy.");
  if (gen.seed_used != seed)
    r.notes.push_back("Parameter from seed " + std::to_string(gen.seed_used) + " after earlier seeds met a boundary.");
  return r;
}

}  // namespace billiard
