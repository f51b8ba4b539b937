#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "billiard/diophantine.hpp"
#include "billiard/direction.hpp"
#include "billiard/geometry.hpp"
#include "billiard/rational_function.hpp"

namespace billiard {

/// Sliding-window occurrence counts of the length-n factors of a word.
struct FactorTable {
  std::size_t n = 0;
  std::size_t source_length = 0;
  std::map<std::string, std::size_t> counts;

  std::size_t total() const;
  std::size_t complexity() const { return counts.size(); }
  std::size_t count(std::string_view w) const;
};

/// Throws std::invalid_argument when n == 0 or n > word.size().
FactorTable factor_table(std::string_view word, std::size_t n);

/// p(1), ..., p(max_n) of the word.
std::vector<std::size_t> complexity_profile(std::string_view word, std::size_t max_n);

enum class Provenance { ClosedForm, Geometric, Empirical };
const char* to_string(Provenance p);

/// mu[a] = theta_{a-1} / (1 + sum_j theta_j), theta_0 = 1.
RationalFunction letter_frequency_symbolic(int d, int letter);
Real letter_frequency(const Direction& dir, int letter);

/// Closed-form frequency of a length-2 factor for d = 2 in the chamber
/// t_1 > t_2 > 0, t_1 > 1. Factors that cannot occur (11, 33) get 0.
RationalFunction pair_frequency_symbolic(std::string_view w);

/// The seven length-2 factors occurring for d = 2.
const std::vector<std::string>& length2_factors_d2();

class ChamberError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relabeling that brings a d = 2 direction into the chamber theta_1 > theta_2 > 0, theta_1 > 1.
struct ChamberReduction {
  std::array<int, 3> to_original{1, 2, 3};  // chamber letter -> original letter
  std::array<int, 3> to_chamber{1, 2, 3};   // original letter -> chamber letter
  Direction reduced;
  bool permuted = false;

  std::string map_word(std::string_view original) const;
};

/// The largest ambient component becomes letter 2, the larger of the other
/// two becomes letter 1, and the vector is rescaled so letter 1 has
/// component 1. A direction already in the chamber is left unchanged.
/// Throws ChamberError when two components agree within eps (relative).
ChamberReduction reduce_to_chamber(const Direction& dir, double eps);

/// Numeric length-2 frequency for d = 2 (through the chamber reduction).
Real pair_frequency_d2(const Direction& dir, std::string_view w, double eps);

/// Region of W_theta whose points have coding starting with w (d = 2):
/// intersection of W^(w_k) - (f_{w_0} + ... + f_{w_{k-1}}).
Polygon cell_polygon(const Direction& dir, std::string_view w, double eps);

/// Frequency of w from the length (d = 1) or area (d = 2) of its cell,
/// normalised by the window. std::nullopt for d >= 3.
std::optional<Real> geometric_frequency(const Direction& dir, std::string_view w, double eps);

/// Decides value = sum_i n_i mu[i] with integer n_i: value * (1 + sum t_j)
/// must be n_1 + sum_j n_{j+1} t_j with integer coefficients.
std::optional<IntegerWitness> eigenvalue_group_membership(const RationalFunction& value, int d);

/// One row of the frequency report.
struct FrequencyRow {
  std::string factor;
  std::optional<Real> closed_form;
  Provenance provenance = Provenance::Empirical;  // of closed_form
  double empirical = 0;
  std::size_t N = 0;

  std::optional<double> abs_error() const;
};

/// Closed-form (letters, and length-2 factors for d = 2) or geometric
/// (d <= 2) frequencies next to empirical ones, for every length-n factor
/// of the word and every factor with a nonzero closed form.
std::vector<FrequencyRow> frequency_table(const Direction& dir, std::string_view word, std::size_t n, double eps);

/// Frequency used for discrepancy series: closed form when available, then
/// geometric, else the empirical value over the whole word.
struct FrequencyValue {
  Real value;
  Provenance provenance = Provenance::Empirical;
};
FrequencyValue reference_frequency(const Direction& dir, std::string_view w, const FactorTable& table, double eps);

}  // namespace billiard
