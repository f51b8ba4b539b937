#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "billiard/direction.hpp"
#include "billiard/geometry.hpp"

namespace billiard {

/// Point of an orbit of the exchange map, stored as the start parameter m
/// plus the number of times each f_i has been added. The current point is
/// m + sum_i counts[i] f_i, so coordinates never accumulate rounding drift.
class Orbit {
 public:
  Orbit(const Direction& dir, NumericPoint m, double eps);

  /// Applies E: returns the letter of the current point and moves to p + f_letter.
  /// Throws NearBoundaryError (step index = steps taken so far).
  int forward();
  /// Applies E^{-1}: returns the letter of the preimage and moves to p - f_letter.
  int backward();

  NumericPoint point() const;
  const std::vector<long>& counts() const { return counts_; }
  long position() const { return position_; }
  double min_margin() const { return min_margin_; }

 private:
  void refresh();

  const Direction* dir_;
  NumericPoint m_;
  std::vector<long> counts_;  // counts_[i] multiplies f_{i+1}
  std::vector<Real> p_;
  Real tmp_;
  PieceLocator locator_;
  long position_ = 0;
  double min_margin_;
};

/// x -> (i, x + f_i) for x in W^(i).
std::pair<int, NumericPoint> exchange_step(const NumericPoint& p, const Direction& dir, double eps);
/// x -> (i, x - f_i) for x in W^(i) + f_i.
std::pair<int, NumericPoint> exchange_inverse(const NumericPoint& p, const Direction& dir, double eps);

/// Finite piece x_{-n_back} ... x_{n_fwd - 1} of the coding of the orbit of m.
struct CodedWord {
  std::string letters;        // digits '1'..'9'
  std::size_t origin = 0;     // index of x_0 in `letters`
  std::string direction_text;
  NumericPoint m;
  double min_margin = 0;

  std::size_t size() const { return letters.size(); }
  int letter_at(std::size_t i) const { return letters[i] - '0'; }
};

/// Iterates E forward n_fwd times and E^{-1} backward n_back times from m.
/// Throws NearBoundaryError if any visited point is within eps of a piece boundary.
CodedWord generate_word(const NumericPoint& m, const Direction& dir, std::size_t n_back, std::size_t n_fwd,
                        double eps);

class GenericSamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pseudo-random point sum_i u_i f_i of W_theta (u_i uniform in [0, 1)),
/// rejected until a 1000-step forward orbit clears margin 10 eps.
/// Deterministic for a fixed seed; throws GenericSamplingError after 100 rejections.
NumericPoint sample_generic_parameter(const Direction& dir, std::uint64_t seed, double eps);

/// A word generated from a sampled generic parameter.
struct GeneratedWord {
  CodedWord word;
  std::uint64_t seed_used = 0;  // seed that produced the accepted parameter
  int attempts = 1;
};

/// Samples m from `seed` and generates; on NearBoundary the whole word is
/// discarded and the next seed (seed + 1, ...) is tried, at most `attempts`
/// times. Throws GenericSamplingError when every attempt fails.
GeneratedWord generate_generic_word(const Direction& dir, std::uint64_t seed, std::size_t n_back, std::size_t n_fwd,
                                    double eps, int attempts = 16);

/// Tiles of the cut-and-project set Lambda_m along the physical line.
struct TilingSegment {
  std::vector<int> letters;
  std::vector<Real> lengths;
  Real start;
};

/// Length of the tile of letter i: theta_{i-1} / |theta| (theta_0 = 1).
std::vector<Real> tile_lengths(const Direction& dir);
TilingSegment cut_project_segment(const NumericPoint& m, const Direction& dir, std::size_t count, double eps);

/// Point on the boundary of [0,1]^{d+1} moving along (+-1, +-theta_1, ..., +-theta_d).
struct BilliardState {
  std::vector<Real> position;
  std::vector<int> signs;  // +1 or -1 per coordinate
};

class CornerHitError : public std::runtime_error {
 public:
  CornerHitError(long step) : std::runtime_error("trajectory within epsilon of a corner at bounce " + std::to_string(step)), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

/// Start on the face x_1 = 0 at a pseudo-random interior point, all signs positive.
BilliardState billiard_start(const Direction& dir, std::uint64_t seed);

/// Mirror-law simulation: letter i is written each time the trajectory hits a
/// face x_i in {0, 1}. Throws CornerHitError when two faces are reached
/// within eps of the same time.
std::string billiard_simulate(BilliardState& state, const Direction& dir, std::size_t n, double eps);

/// Header "# theta=<text> m=<c1,...,cd> origin=<k>" followed by the digits.
void write_word(std::ostream& out, const CodedWord& w);
/// Reads the format written by write_word; the parameter is kept as text.
struct WordFile {
  std::string theta;
  std::string m;
  std::size_t origin = 0;
  std::string letters;
};
WordFile read_word(std::istream& in);

}  // namespace billiard
