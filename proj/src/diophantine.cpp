#include "billiard/diophantine.hpp"

#include <stdexcept>
#include <utility>

namespace billiard {

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// column[dst] -= q * column[src]
void subtract_column(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (auto& row : m) row[dst] -= q * row[src];
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::optional<IntegerSolutionSet> solve_integer_system(const std::vector<std::vector<mpq_class>>& rows,
                                                       const std::vector<mpq_class>& rhs, std::size_t unknowns) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("row count and right-hand side size differ");
  const std::size_t m = rows.size();
  const std::size_t n = unknowns;

  // Clear denominators row by row.
  IntMatrix a(m, std::vector<mpz_class>(n));
  std::vector<mpz_class> b(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (rows[r].size() != n) throw std::invalid_argument("row has the wrong number of unknowns");
    mpz_class l = rhs[r].get_den();
    for (const auto& x : rows[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t c = 0; c < n; ++c) {
      mpq_class v = rows[r][c] * l;
      a[r][c] = v.get_num();
    }
    mpq_class v = rhs[r] * l;
    b[r] = v.get_num();
  }

  IntMatrix u(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  // Column reduction: a * u becomes lower echelon.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, column)
  std::size_t pc = 0;
  for (std::size_t r = 0; r < m && pc < n; ++r) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t c = pc; c < n; ++c) {
        if (a[r][c] == 0) continue;
        if (best == n || abs(a[r][c]) < abs(a[r][best])) best = c;
      }
      if (best == n) break;
      if (best != pc) {
        swap_columns(a, best, pc);
        swap_columns(u, best, pc);
      }
      bool done = true;
      for (std::size_t c = pc + 1; c < n; ++c) {
        if (a[r][c] == 0) continue;
        mpz_class q = floor_div(a[r][c], a[r][pc]);
        subtract_column(a, c, pc, q);
        subtract_column(u, c, pc, q);
        if (a[r][c] != 0) done = false;
      }
      if (done) {
        pivots.emplace_back(r, pc);
        ++pc;
        break;
      }
    }
  }

  // Forward substitution for y with (a u) y = b.
  std::vector<mpz_class> y(n);
  std::size_t next_pivot = 0;
  for (std::size_t r = 0; r < m; ++r) {
    mpz_class s = b[r];
    std::size_t limit = next_pivot < pivots.size() && pivots[next_pivot].first == r ? pivots[next_pivot].second : pc;
    for (std::size_t c = 0; c < limit; ++c) s -= a[r][c] * y[c];
    if (next_pivot < pivots.size() && pivots[next_pivot].first == r) {
      std::size_t col = pivots[next_pivot].second;
      if (!mpz_divisible_p(s.get_mpz_t(), a[r][col].get_mpz_t())) return std::nullopt;
      mpz_divexact(y[col].get_mpz_t(), s.get_mpz_t(), a[r][col].get_mpz_t());
      ++next_pivot;
    } else if (s != 0) {
      return std::nullopt;
    }
  }

  IntegerSolutionSet out;
  out.particular.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c) out.particular[i] += u[i][c] * y[c];
  for (std::size_t c = pc; c < n; ++c) {
    std::vector<mpz_class> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = u[i][c];
    out.kernel.push_back(std::move(k));
  }
  return out;
}

bool satisfies_system(const std::vector<std::vector<mpq_class>>& rows, const std::vector<mpq_class>& rhs,
                      const std::vector<mpz_class>& x) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    mpq_class s = 0;
    for (std::size_t c = 0; c < x.size(); ++c) s += rows[r][c] * x[c];
    if (s != rhs[r]) return false;
  }
  return true;
}

std::optional<IntegerWitness> to_witness(const std::vector<mpz_class>& x) {
  IntegerWitness out;
  out.reserve(x.size());
  for (const auto& v : x) {
    if (!v.fits_slong_p()) return std::nullopt;
    out.push_back(v.get_si());
  }
  return out;
}

}  // namespace billiard
