#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace billiard {

/// Integer coefficients (n_1, ..., n_{d+1}) of a return-group element
/// sum n_i f_i, or of a frequency combination sum n_i mu[i].
using IntegerWitness = std::vector<long>;

/// All integer solutions of A x = b: particular + Z-span(kernel).
struct IntegerSolutionSet {
  std::vector<mpz_class> particular;
  std::vector<std::vector<mpz_class>> kernel;  // basis of {x in Z^n : A x = 0}
};

/// Solves A x = b over the integers (A given by rows over Q, n unknowns).
/// Uses unimodular column reduction to lower echelon (Hermite) form.
/// Returns std::nullopt when no integer solution exists.
std::optional<IntegerSolutionSet> solve_integer_system(const std::vector<std::vector<mpq_class>>& rows,
                                                       const std::vector<mpq_class>& rhs, std::size_t unknowns);

/// True when A x == b exactly.
bool satisfies_system(const std::vector<std::vector<mpq_class>>& rows, const std::vector<mpq_class>& rhs,
                      const std::vector<mpz_class>& x);

/// Converts to machine integers; std::nullopt on overflow.
std::optional<IntegerWitness> to_witness(const std::vector<mpz_class>& x);

}  // namespace billiard
