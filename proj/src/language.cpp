#include "billiard/language.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace billiard {

std::size_t FactorTable::total() const {
  std::size_t s = 0;
  for (const auto& [w, c] : counts) s += c;
  return s;
}

std::size_t FactorTable::count(std::string_view w) const {
  auto it = counts.find(std::string(w));
  return it == counts.end() ? 0 : it->second;
}

FactorTable factor_table(std::string_view word, std::size_t n) {
  if (n == 0) throw std::invalid_argument("factor length must be positive");
  if (n > word.size()) throw std::invalid_argument("factor length exceeds word length");
  std::unordered_map<std::string_view, std::size_t> hashed;
  for (std::size_t i = 0; i + n <= word.size(); ++i) ++hashed[word.substr(i, n)];
  FactorTable t;
  t.n = n;
  t.source_length = word.size();
  for (const auto& [w, c] : hashed) t.counts.emplace(std::string(w), c);
  return t;
}

std::vector<std::size_t> complexity_profile(std::string_view word, std::size_t max_n) {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= max_n && n <= word.size(); ++n) {
    std::set<std::string_view> seen;
    for (std::size_t i = 0; i + n <= word.size(); ++i) seen.insert(word.substr(i, n));
    out.push_back(seen.size());
  }
  return out;
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm:
      return "closed-form";
    case Provenance::Geometric:
      return "geometric";
    case Provenance::Empirical:
      return "empirical";
  }
  return "?";
}

RationalFunction letter_frequency_symbolic(int d, int letter) {
  if (letter < 1 || letter > d + 1) throw std::out_of_range("letter out of range");
  RationalFunction s(1);
  for (int j = 1; j <= d; ++j) s += RationalFunction::variable(j);
  RationalFunction top = letter == 1 ? RationalFunction(1) : RationalFunction::variable(letter - 1);
  return top / s;
}

Real letter_frequency(const Direction& dir, int letter) {
  if (letter < 1 || letter > dir.d + 1) throw std::out_of_range("letter out of range");
  Real s(1L, dir.precision);
  for (const auto& t : dir.theta) s += t;
  return dir.component(letter - 1) / s;
}

RationalFunction pair_frequency_symbolic(std::string_view w) {
  if (w.size() != 2) throw std::invalid_argument("length-2 factor expected");
  const auto t1 = RationalFunction::variable(1);
  const auto t2 = RationalFunction::variable(2);
  const auto s = RationalFunction(1) + t1 + t2;
  const auto two_t1_s = RationalFunction(2) * t1 * s;
  std::string key(w);
  std::sort(key.begin(), key.end());
  if (key == "13") return t2 / two_t1_s;
  if (key == "12") return (RationalFunction(2) * t1 - t2) / two_t1_s;
  if (key == "23") return t2 * (RationalFunction(2) * t1 - RationalFunction(1)) / two_t1_s;
  if (key == "22") return (t1 - RationalFunction(1)) * (t1 - t2) / (t1 * s);
  if (key == "11" || key == "33") return RationalFunction(0);
  throw std::invalid_argument("not a factor over {1,2,3}: " + std::string(w));
}

const std::vector<std::string>& length2_factors_d2() {
  static const std::vector<std::string> factors{"12", "21", "13", "31", "23", "32", "22"};
  return factors;
}

std::string ChamberReduction::map_word(std::string_view original) const {
  std::string out;
  for (char c : original) out.push_back(static_cast<char>('0' + to_chamber[static_cast<std::size_t>(c - '1')]));
  return out;
}

ChamberReduction reduce_to_chamber(const Direction& dir, double eps) {
  dir.require_numeric("reduce_to_chamber");
  if (dir.d != 2) throw ChamberError("the chamber reduction is defined for d = 2");
  const auto c = dir.ambient();
  auto close = [&](const Real& a, const Real& b) {
    return std::fabs((a - b).to_double()) <= eps * std::max(a.to_double(), b.to_double());
  };
  if (close(c[0], c[1]) || close(c[0], c[2]) || close(c[1], c[2]))
    throw ChamberError("direction has two equal components; no chamber reduction applies");

  ChamberReduction r;
  if (c[1] > c[2] && c[1] > c[0]) {
    r.reduced = dir;
    return r;
  }
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return c[static_cast<std::size_t>(a)] > c[static_cast<std::size_t>(b)]; });
  // order[0] largest -> chamber letter 2, order[1] -> letter 1, order[2] -> letter 3.
  r.to_original = {order[1] + 1, order[0] + 1, order[2] + 1};
  for (int k = 0; k < 3; ++k) r.to_chamber[static_cast<std::size_t>(r.to_original[static_cast<std::size_t>(k)] - 1)] = k + 1;
  const Real& unit = c[static_cast<std::size_t>(order[1])];
  std::vector<Real> theta{c[static_cast<std::size_t>(order[0])] / unit, c[static_cast<std::size_t>(order[2])] / unit};
  r.reduced = make_numeric_direction(std::move(theta));
  r.reduced.has_rational_component = dir.has_rational_component;
  r.permuted = true;
  return r;
}

Real pair_frequency_d2(const Direction& dir, std::string_view w, double eps) {
  auto red = reduce_to_chamber(dir, eps);
  auto f = pair_frequency_symbolic(red.map_word(w));
  return f.evaluate(red.reduced.theta, dir.precision);
}

namespace {

Polygon piece_polygon(const std::vector<NumericPoint>& f, int letter) {
  std::vector<NumericPoint> others;
  for (int i = 1; i <= 3; ++i)
    if (i != letter) others.push_back(f[static_cast<std::size_t>(i - 1)]);
  NumericPoint origin{std::vector<Real>(2, Real(f[0].coords[0].precision()))};
  return parallelogram(origin, others[0], others[1]);
}

}  // namespace

Polygon cell_polygon(const Direction& dir, std::string_view w, double eps) {
  dir.require_numeric("cell_polygon");
  if (dir.d != 2) throw std::invalid_argument("cell polygons are planar (d = 2)");
  if (w.empty()) throw std::invalid_argument("empty factor");
  const auto f = basis_vectors(dir);
  NumericPoint shift{std::vector<Real>(2, Real(dir.precision))};
  Polygon cell;
  for (std::size_t k = 0; k < w.size(); ++k) {
    int a = w[k] - '0';
    if (a < 1 || a > 3) throw std::invalid_argument("letter out of range");
    Polygon piece = piece_polygon(f, a);
    for (auto& p : piece) p -= shift;
    cell = k == 0 ? piece : clip_convex(cell, piece, eps);
    if (cell.size() < 3) return {};
    shift += f[static_cast<std::size_t>(a - 1)];
  }
  return cell;
}

std::optional<Real> geometric_frequency(const Direction& dir, std::string_view w, double eps) {
  dir.require_numeric("geometric_frequency");
  if (dir.d == 1) {
    // Pieces [0, 1] (letter 1) and [-theta_1, 0] (letter 2).
    const Real& t = dir.theta[0];
    Real lo(0L, dir.precision), hi(1L, dir.precision);
    Real shift(dir.precision);
    bool first = true;
    for (char c : w) {
      Real a = c == '1' ? Real(0L, dir.precision) : -t;
      Real b = c == '1' ? Real(1L, dir.precision) : Real(0L, dir.precision);
      a -= shift;
      b -= shift;
      if (first) {
        lo = a;
        hi = b;
        first = false;
      } else {
        lo = max(lo, a);
        hi = min(hi, b);
      }
      if (c == '1')
        shift -= t;  // f_1
      else
        shift += Real(1L, dir.precision);  // f_2
    }
    Real len = hi - lo;
    if (len.sign() < 0 || len.to_double() <= eps) len = Real(0L, dir.precision);
    return len / (Real(1L, dir.precision) + t);
  }
  if (dir.d == 2) {
    Polygon cell = cell_polygon(dir, w, eps);
    Real area = cell.empty() ? Real(0L, dir.precision) : abs(signed_area(cell));
    return area / window_volume(dir);
  }
  return std::nullopt;
}

std::optional<IntegerWitness> eigenvalue_group_membership(const RationalFunction& value, int d) {
  RationalFunction s(1);
  for (int j = 1; j <= d; ++j) s += RationalFunction::variable(j);
  RationalFunction x = value * s;
  if (!x.is_polynomial()) return std::nullopt;
  // Denominator is monic, so a polynomial value has denominator 1.
  IntegerWitness n(static_cast<std::size_t>(d) + 1, 0);
  for (const auto& [mono, coeff] : x.numerator().terms()) {
    if (coeff.get_den() != 1 || !coeff.get_num().fits_slong_p()) return std::nullopt;
    int slot;
    if (mono.is_unit()) {
      slot = 0;
    } else if (mono.total_degree() == 1 && mono.max_variable() <= d) {
      slot = mono.max_variable();
    } else {
      return std::nullopt;
    }
    n[static_cast<std::size_t>(slot)] = coeff.get_num().get_si();
  }
  return n;
}

std::optional<double> FrequencyRow::abs_error() const {
  if (!closed_form) return std::nullopt;
  return std::fabs(closed_form->to_double() - empirical);
}

namespace {

std::optional<std::pair<Real, Provenance>> known_frequency(const Direction& dir, std::string_view w, double eps) {
  if (w.size() == 1) return std::make_pair(letter_frequency(dir, w[0] - '0'), Provenance::ClosedForm);
  if (w.size() == 2 && dir.d == 2) {
    try {
      return std::make_pair(pair_frequency_d2(dir, w, eps), Provenance::ClosedForm);
    } catch (const ChamberError&) {
    }
  }
  if (auto g = geometric_frequency(dir, w, eps)) return std::make_pair(*g, Provenance::Geometric);
  return std::nullopt;
}

}  // namespace

std::vector<FrequencyRow> frequency_table(const Direction& dir, std::string_view word, std::size_t n, double eps) {
  const FactorTable table = factor_table(word, n);
  const std::size_t windows = table.total();
  std::set<std::string> factors;
  for (const auto& [w, c] : table.counts) factors.insert(w);
  if (n == 1)
    for (int a = 1; a <= dir.d + 1; ++a) factors.insert(std::string(1, static_cast<char>('0' + a)));
  if (n == 2 && dir.d == 2) {
    try {
      const auto red = reduce_to_chamber(dir, eps);
      for (const auto& w : length2_factors_d2()) {
        std::string original;
        for (char c : w) original.push_back(static_cast<char>('0' + red.to_original[static_cast<std::size_t>(c - '1')]));
        factors.insert(original);
      }
    } catch (const ChamberError&) {
    }
  }

  std::vector<FrequencyRow> rows;
  for (const auto& w : factors) {
    FrequencyRow row;
    row.factor = w;
    row.N = word.size();
    row.empirical = static_cast<double>(table.count(w)) / static_cast<double>(windows);
    if (auto k = known_frequency(dir, w, eps)) {
      row.closed_form = k->first;
      row.provenance = k->second;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FrequencyValue reference_frequency(const Direction& dir, std::string_view w, const FactorTable& table, double eps) {
  if (auto k = known_frequency(dir, w, eps)) return {k->first, k->second};
  Real v(static_cast<long>(table.count(w)), dir.precision);
  v /= Real(static_cast<long>(table.total()), dir.precision);
  return {v, Provenance::Empirical};
}

}  // namespace billiard
