#include "billiard/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace billiard {

namespace {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Orbit::Orbit(const Direction& dir, NumericPoint m, double eps)
    : dir_(&dir),
      m_(std::move(m)),
      counts_(static_cast<std::size_t>(dir.d) + 1, 0),
      p_(m_.coords),
      tmp_(dir.precision),
      locator_(dir, eps),
      min_margin_(std::numeric_limits<double>::infinity()) {
  if (static_cast<int>(m_.coords.size()) != dir.d) throw std::invalid_argument("parameter dimension mismatch");
}

void Orbit::refresh() {
  // p_j = m_j + k_{j+1} - theta_j k_1
  const auto& theta = dir_->theta;
  for (std::size_t j = 0; j < p_.size(); ++j) {
    mpfr_ptr out = p_[j].get();
    mpfr_mul_si(tmp_.get(), theta[j].get(), counts_[0], MPFR_RNDN);
    mpfr_add_si(out, m_.coords[j].get(), counts_[j + 1], MPFR_RNDN);
    mpfr_sub(out, out, tmp_.get(), MPFR_RNDN);
  }
}

int Orbit::forward() {
  auto r = locator_.classify(p_);
  if (r.status == PieceLocator::Status::NearBoundary) throw NearBoundaryError(r.letter, r.margin, position_);
  if (r.status == PieceLocator::Status::Outside) throw OutsideWindowError("orbit left the window at step " + std::to_string(position_));
  min_margin_ = std::min(min_margin_, r.margin);
  ++counts_[static_cast<std::size_t>(r.letter - 1)];
  ++position_;
  refresh();
  return r.letter;
}

int Orbit::backward() {
  auto r = locator_.classify_upper(p_);
  if (r.status == PieceLocator::Status::NearBoundary) throw NearBoundaryError(r.letter, r.margin, position_ - 1);
  if (r.status == PieceLocator::Status::Outside) throw OutsideWindowError("orbit left the window at step " + std::to_string(position_ - 1));
  min_margin_ = std::min(min_margin_, r.margin);
  --counts_[static_cast<std::size_t>(r.letter - 1)];
  --position_;
  refresh();
  return r.letter;
}

NumericPoint Orbit::point() const { return NumericPoint{p_}; }

std::pair<int, NumericPoint> exchange_step(const NumericPoint& p, const Direction& dir, double eps) {
  auto loc = locate_piece(p, dir, eps);
  const auto f = basis_vectors(dir);
  return {loc.letter, p + f[static_cast<std::size_t>(loc.letter - 1)]};
}

std::pair<int, NumericPoint> exchange_inverse(const NumericPoint& p, const Direction& dir, double eps) {
  PieceLocator locator(dir, eps);
  auto r = locator.classify_upper(p.coords);
  if (r.status == PieceLocator::Status::NearBoundary) throw NearBoundaryError(r.letter, r.margin);
  if (r.status == PieceLocator::Status::Outside) throw OutsideWindowError("point lies outside the window");
  const auto f = basis_vectors(dir);
  return {r.letter, p - f[static_cast<std::size_t>(r.letter - 1)]};
}

CodedWord generate_word(const NumericPoint& m, const Direction& dir, std::size_t n_back, std::size_t n_fwd,
                        double eps) {
  dir.require_numeric("generate_word");
  if (dir.d + 1 > 9) throw std::invalid_argument("alphabet larger than 9 letters");
  CodedWord w;
  w.direction_text = dir.text;
  w.m = m;
  w.origin = n_back;
  w.letters.assign(n_back + n_fwd, '0');
  double margin = std::numeric_limits<double>::infinity();

  if (n_fwd > 0) {
    Orbit fwd(dir, m, eps);
    for (std::size_t k = 0; k < n_fwd; ++k) w.letters[n_back + k] = static_cast<char>('0' + fwd.forward());
    margin = std::min(margin, fwd.min_margin());
  }
  if (n_back > 0) {
    Orbit back(dir, m, eps);
    for (std::size_t k = 0; k < n_back; ++k) w.letters[n_back - 1 - k] = static_cast<char>('0' + back.backward());
    margin = std::min(margin, back.min_margin());
  }
  w.min_margin = margin;
  return w;
}

NumericPoint sample_generic_parameter(const Direction& dir, std::uint64_t seed, double eps) {
  dir.require_numeric("sample_generic_parameter");
  std::mt19937_64 rng(seed);
  const auto f = basis_vectors(dir);
  constexpr int kAttempts = 100;
  constexpr int kWarmup = 1000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    NumericPoint p{std::vector<Real>(static_cast<std::size_t>(dir.d), Real(dir.precision))};
    for (const auto& fi : f) p += Real(unit_double(rng), dir.precision) * fi;
    try {
      Orbit orbit(dir, p, 10 * eps);
      for (int k = 0; k < kWarmup; ++k) orbit.forward();
      return p;
    } catch (const NearBoundaryError&) {
    } catch (const OutsideWindowError&) {
    }
  }
  throw GenericSamplingError("no generic parameter found after 100 attempts");
}

GeneratedWord generate_generic_word(const Direction& dir, std::uint64_t seed, std::size_t n_back, std::size_t n_fwd,
                                    double eps, int attempts) {
  for (int k = 0; k < attempts; ++k) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    try {
      NumericPoint m = sample_generic_parameter(dir, s, eps);
      return {generate_word(m, dir, n_back, n_fwd, eps), s, k + 1};
    } catch (const NearBoundaryError&) {
    } catch (const GenericSamplingError&) {
    }
  }
  throw GenericSamplingError("every sampled parameter met a piece boundary within epsilon");
}

std::vector<Real> tile_lengths(const Direction& dir) {
  auto amb = dir.ambient();
  Real norm(dir.precision);
  for (const auto& x : amb) norm += x * x;
  norm = sqrt(norm);
  std::vector<Real> out;
  for (const auto& x : amb) out.push_back(x / norm);
  return out;
}

TilingSegment cut_project_segment(const NumericPoint& m, const Direction& dir, std::size_t count, double eps) {
  auto word = generate_word(m, dir, 0, count, eps);
  auto lengths = tile_lengths(dir);
  TilingSegment seg;
  seg.start = Real(dir.precision);
  for (char c : word.letters) {
    int a = c - '0';
    seg.letters.push_back(a);
    seg.lengths.push_back(lengths[static_cast<std::size_t>(a - 1)]);
  }
  return seg;
}

BilliardState billiard_start(const Direction& dir, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BilliardState s;
  s.position.emplace_back(0L, dir.precision);
  for (int i = 0; i < dir.d; ++i) s.position.emplace_back(0.05 + 0.9 * unit_double(rng), dir.precision);
  s.signs.assign(static_cast<std::size_t>(dir.d) + 1, 1);
  return s;
}

std::string billiard_simulate(BilliardState& state, const Direction& dir, std::size_t n, double eps) {
  dir.require_numeric("billiard_simulate");
  const auto speed = dir.ambient();
  const std::size_t dim = speed.size();
  if (state.position.size() != dim || state.signs.size() != dim) throw std::invalid_argument("state dimension mismatch");
  std::string out;
  out.reserve(n);
  std::vector<Real> time(dim, Real(dir.precision));
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      Real gap = state.signs[i] > 0 ? Real(1L, dir.precision) - state.position[i] : state.position[i];
      time[i] = gap / speed[i];
      if (time[i] < time[hit]) hit = i;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == hit) continue;
      if ((time[i] - time[hit]).to_double() <= eps) throw CornerHitError(static_cast<long>(step));
    }
    const Real t = time[hit];
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == hit) {
        state.position[i] = Real(state.signs[i] > 0 ? 1L : 0L, dir.precision);
      } else {
        Real delta = speed[i] * t;
        if (state.signs[i] > 0)
          state.position[i] += delta;
        else
          state.position[i] -= delta;
      }
    }
    state.signs[hit] = -state.signs[hit];
    out.push_back(static_cast<char>('1' + hit));
  }
  return out;
}

void write_word(std::ostream& out, const CodedWord& w) {
  out << "# theta=" << w.direction_text << " m=";
  for (std::size_t i = 0; i < w.m.coords.size(); ++i) out << (i ? "," : "") << w.m.coords[i].to_string(40);
  out << " origin=" << w.origin << "\n" << w.letters << "\n";
}

WordFile read_word(std::istream& in) {
  WordFile f;
  std::string header;
  if (!std::getline(in, header) || header.rfind("# ", 0) != 0) throw std::runtime_error("missing word file header");
  std::istringstream fields(header.substr(2));
  std::string field;
  while (fields >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed header field: " + field);
    std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "theta")
      f.theta = value;
    else if (key == "m")
      f.m = value;
    else if (key == "origin")
      f.origin = std::stoul(value);
  }
  std::getline(in, f.letters);
  for (char c : f.letters)
    if (c < '1' || c > '9') throw std::runtime_error("word contains a non-letter character");
  return f;
}

}  // namespace billiard
