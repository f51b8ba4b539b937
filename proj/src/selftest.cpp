#include "billiard/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <set>

#include "billiard/balance.hpp"
#include "billiard/brs.hpp"
#include "billiard/dynamics.hpp"
#include "billiard/geometry.hpp"
#include "billiard/language.hpp"

namespace billiard {

namespace {

class Suite {
 public:
  void run(const char* module, const char* name, const std::function<std::string()>& body) {
    SelftestCheck c{module, name, false, {}};
    try {
      c.detail = body();
      c.passed = c.detail.empty();
    } catch (const std::exception& ex) {
      c.detail = std::string("exception: ") + ex.what();
    }
    checks.push_back(std::move(c));
  }
  std::vector<SelftestCheck> checks;
};

std::string expect(bool ok, const std::string& what) { return ok ? std::string() : what; }

}  // namespace

std::vector<SelftestCheck> run_selftest() {
  Suite s;
  const Direction cubic = parse_direction("1,sqrt(3),sqrt(2)");
  const double eps = kDefaultEpsilon;

  s.run("scalars", "sqrt(2)^2 = 2 at 128 bits", [] {
    Real r = sqrt(Real(2L, 128));
    return expect(std::fabs((r * r - Real(2L, 128)).to_double()) < 1e-35, "square root round trip");
  });
  s.run("scalars", "rational function cancellation", [] {
    auto t1 = RationalFunction::variable(1);
    auto q = (t1 * t1 - RationalFunction(1)) / (t1 - RationalFunction(1));
    return expect(q == t1 + RationalFunction(1), "(t^2-1)/(t-1) != t+1");
  });
  s.run("scalars", "integer system witness", [] {
    std::vector<std::vector<mpq_class>> rows{{1, 1, 0}, {0, 1, 1}};
    std::vector<mpq_class> rhs{2, 2};
    auto sol = solve_integer_system(rows, rhs, 3);
    if (!sol) return std::string("no solution found");
    return expect(satisfies_system(rows, rhs, sol->particular) && sol->kernel.size() == 1, "bad solution set");
  });

  s.run("geometry", "piece volumes sum to the window volume", [&] {
    Real sum(cubic.precision);
    for (int a = 1; a <= 3; ++a) sum += piece_volume(cubic, a);
    return expect(std::fabs((sum - window_volume(cubic)).to_double()) < 1e-30, "volumes disagree");
  });
  s.run("geometry", "exchange step inverts", [&] {
    NumericPoint m = sample_generic_parameter(cubic, 7, eps);
    auto [a, p] = exchange_step(m, cubic, eps);
    auto [b, q] = exchange_inverse(p, cubic, eps);
    Real err(cubic.precision);
    for (std::size_t j = 0; j < q.coords.size(); ++j) err += abs(q.coords[j] - m.coords[j]);
    return expect(a == b && err.to_double() < 1e-30, "inverse does not undo the step");
  });

  s.run("dynamics", "forward and backward codings agree", [&] {
    NumericPoint m = sample_generic_parameter(cubic, 11, eps);
    auto both = generate_word(m, cubic, 200, 200, eps);
    auto fwd = generate_word(m, cubic, 0, 200, eps);
    return expect(both.letters.substr(200) == fwd.letters, "forward halves differ");
  });
  s.run("dynamics", "letter counts track n mu", [&] {
    auto w = generate_generic_word(cubic, 3, 0, 20000, eps).word.letters;
    for (int a = 1; a <= 3; ++a) {
      const double c = static_cast<double>(std::count(w.begin(), w.end(), static_cast<char>('0' + a)));
      const double bound = letter_discrepancy_bound(cubic, a).to_double();
      if (std::fabs(c - 20000 * letter_frequency(cubic, a).to_double()) > bound) return std::string("letter bound exceeded");
    }
    return std::string();
  });

  s.run("language", "pair frequencies sum to one", [] {
    RationalFunction sum(0);
    for (const auto& w : length2_factors_d2()) sum += pair_frequency_symbolic(w);
    return expect(sum == RationalFunction(1), "symbolic sum differs from 1");
  });
  s.run("language", "seven length-2 factors", [&] {
    auto w = generate_generic_word(cubic, 5, 0, 50000, eps).word.letters;
    return expect(factor_table(w, 2).complexity() == 7, "wrong number of length-2 factors");
  });

  s.run("balance", "verdict rule", [] {
    DiscrepancySeries series;
    series.checkpoints = {{10, 0, 0, 1, 1}, {100, 0, 0, 2, 2}, {1000, 0, 0, 3, 3}};
    series.max_abs = 3;
    return expect(balance_verdict(series, std::nullopt).kind == VerdictKind::GrowthDetected &&
                      balance_verdict(series, 4.0).kind == VerdictKind::CertifiedBounded,
                  "verdict rule misclassifies");
  });

  s.run("brs", "cell verdicts at the reference direction", [&] {
    auto rep = brs_report(cubic, eps);
    return expect(rep.cells.size() == 7 && rep.count(BRSStatus::NotBRS, BRSReason::NoSymmetryCenter) == 6 &&
                      rep.count(BRSStatus::NotBRS, BRSReason::Condition2Fail) == 1,
                  "unexpected verdict multiset");
  });
  s.run("brs", "window hexagon passes", [&] {
    auto v = gl_polygon_verdict(window_polygon(cubic), cubic, eps);
    return expect(v.status == BRSStatus::BRS, "window not BRS");
  });
  s.run("brs", "return group maps onto the torus group", [] {
    for (const auto& f : symbolic_basis_vectors(2))
      if (!torus_membership(torus_image(f))) return std::string("image of a basis vector not in Z alpha + Z^2");
    return std::string();
  });
  return s.checks;
}

}  // namespace billiard
