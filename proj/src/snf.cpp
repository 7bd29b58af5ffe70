#include "pqs/snf.hpp"

#include <algorithm>
#include <stdexcept>

namespace pqs {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t rows = a.size();
  const std::size_t inner = b.size();
  const std::size_t cols = inner ? b[0].size() : 0;
  IntMatrix c(rows, std::vector<mpz_class>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("matrix shapes do not match");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

mpz_class determinant(IntMatrix m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

// Dense Smith reduction; U and V are updated when non-null.
void reduce(IntMatrix& a, IntMatrix* u, IntMatrix* v) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;

  const auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (u) std::swap((*u)[i], (*u)[j]);
  };
  const auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    if (v) {
      for (auto& row : *v) std::swap(row[i], row[j]);
    }
  };
  // row_i -= q * row_j
  const auto add_row = [&](std::size_t i, std::size_t j, const mpz_class& q) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (a[j][c] != 0) a[i][c] -= q * a[j][c];
    }
    if (u) {
      for (std::size_t c = 0; c < rows; ++c) {
        if ((*u)[j][c] != 0) (*u)[i][c] -= q * (*u)[j][c];
      }
    }
  };
  // col_i -= q * col_j
  const auto add_col = [&](std::size_t i, std::size_t j, const mpz_class& q) {
    for (std::size_t r = 0; r < rows; ++r) {
      if (a[r][j] != 0) a[r][i] -= q * a[r][j];
    }
    if (v) {
      for (std::size_t r = 0; r < cols; ++r) {
        if ((*v)[r][j] != 0) (*v)[r][i] -= q * (*v)[r][j];
      }
    }
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // least nonzero absolute value in the trailing block
      std::size_t pi = rows, pj = cols;
      mpz_class best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          if (pi == rows || abs(a[i][j]) < best) {
            best = abs(a[i][j]);
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) return;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        add_row(i, t, q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        add_col(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into row t and retry
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      add_row(t, bad, -1);
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      if (u) {
        for (auto& x : (*u)[t]) x = -x;
      }
    }
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out;
  out.S = m;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (const auto& row : m) {
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");
  }
  out.U = identity_matrix(rows);
  out.V = identity_matrix(cols);
  reduce(out.S, &out.U, &out.V);
  return out;
}

std::vector<mpz_class> smith_diagonal(IntMatrix m) {
  reduce(m, nullptr, nullptr);
  std::vector<mpz_class> d;
  for (std::size_t i = 0; i < m.size() && i < (m.empty() ? 0 : m[0].size()); ++i) {
    if (m[i][i] != 0) d.push_back(m[i][i]);
  }
  return d;
}

AbelianInvariants AbelianInvariants::from_cyclic_orders(const std::vector<mpz_class>& orders) {
  AbelianInvariants out;
  std::vector<mpz_class> finite;
  for (const auto& o : orders) {
    if (o < 0) throw std::invalid_argument("negative cyclic order");
    if (o == 0) {
      ++out.free_rank;
    } else if (o > 1) {
      finite.push_back(o);
    }
  }
  IntMatrix diag(finite.size(), std::vector<mpz_class>(finite.size(), 0));
  for (std::size_t i = 0; i < finite.size(); ++i) diag[i][i] = finite[i];
  for (const auto& d : smith_diagonal(std::move(diag))) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

namespace {

std::vector<std::string> split_factors(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    // accept the multiplication sign as a separator
    if (text.substr(i).starts_with("×")) {
      s += 'x';
      i += std::string_view("×").size() - 1;
      continue;
    }
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '{' || c == '}') continue;
    s += c;
  }
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == 'x' || c == '*') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

long parse_count(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("bad number in abelian group: '" + s + "'");
  }
  return std::stol(s);
}

}  // namespace

AbelianInvariants AbelianInvariants::parse(std::string_view text) {
  const auto factors = split_factors(text);
  if (factors.size() == 1 && (factors[0] == "0" || factors[0] == "1")) return {};
  std::vector<mpz_class> orders;
  for (const auto& f : factors) {
    if (f.size() < 1 || f[0] != 'Z') throw std::invalid_argument("bad abelian factor: '" + f + "'");
    std::string rest = f.substr(1);
    long power = 1;
    if (auto caret = rest.find('^'); caret != std::string::npos) {
      power = parse_count(rest.substr(caret + 1));
      rest = rest.substr(0, caret);
    }
    if (!rest.empty() && rest[0] == '_') rest = rest.substr(1);
    const mpz_class order = rest.empty() ? mpz_class(0) : mpz_class(parse_count(rest));
    for (long k = 0; k < power; ++k) orders.push_back(order);
  }
  return from_cyclic_orders(orders);
}

std::string AbelianInvariants::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (std::size_t i = 0; i < torsion.size();) {
    std::size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
    std::string p = "Z_" + torsion[i].get_str();
    if (j - i > 1) p += "^" + std::to_string(j - i);
    parts.push_back(p);
    i = j;
  }
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " x " + parts[i];
  return s;
}

}  // namespace pqs
