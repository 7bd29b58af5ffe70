#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace pqs {

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct SmithForm {
  IntMatrix S;  // diagonal, d_1 | d_2 | ..., nonnegative
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix V;  // cols x cols, unimodular
};

/// U * M * V = S. Pivots on the entry of least absolute value.
SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero diagonal of the Smith form only (no transforms), ascending by divisibility.
std::vector<mpz_class> smith_diagonal(IntMatrix m);

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
mpz_class determinant(IntMatrix m);

/// Z^r x Z_d1 x ... with d_1 | d_2 | ..., every d_i >= 2.
struct AbelianInvariants {
  int free_rank = 0;
  std::vector<mpz_class> torsion;

  /// From any list of cyclic orders (0 = infinite cyclic, 1 = trivial).
  static AbelianInvariants from_cyclic_orders(const std::vector<mpz_class>& orders);
  /// Parses the output form and table spellings: "Z^2 x Z_3 x Z_15", "Z_2^3 x Z_4", "Z3xZ15", "0".
  static AbelianInvariants parse(std::string_view text);

  /// "Z^r x Z_{d1} x ..."-style canonical text, written "Z^2 x Z_3 x Z_15"; "0" if trivial.
  std::string to_string() const;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

}  // namespace pqs
