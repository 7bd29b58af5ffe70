#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace pqs {

using DivisorClass = std::vector<std::int64_t>;

/// Numerical class lattice of a smooth surface Y.
struct PicardLattice {
  std::string name;
  std::vector<std::string> names;
  std::vector<std::vector<std::int64_t>> form;
  DivisorClass canonical;
  std::int64_t chi = 0;  // chi(O_Y)

  std::size_t rank() const { return names.size(); }
  std::int64_t dot(const DivisorClass& a, const DivisorClass& b) const;
  std::int64_t k_squared() const { return dot(canonical, canonical); }

  /// Blow-up of P^2 in three points: L, E1, E2, E3.
  static PicardLattice del_pezzo_6();
  /// E1 x E2 with fibre classes f1, f2.
  static PicardLattice elliptic_product();
  /// "dP6" or "ExE"; nullopt otherwise.
  static std::optional<PicardLattice> by_name(std::string_view name);
};

/// Element of Z_2^r, bit k = value of the k-th basis character.
using Z2Vector = std::uint32_t;

std::string bits_to_string(Z2Vector v, int r);

/// Branch data of a Z_2^r cover: D_sigma for sigma != 0 and L_i for the
/// basis characters chi_1..chi_r.
struct BuildingData {
  PicardLattice lattice;
  int r = 1;
  std::map<Z2Vector, DivisorClass> d;
  std::vector<DivisorClass> l;  // index i-1 holds L_i

  /// L_chi for any nonzero character chi (bit i-1 set = chi_i summand),
  /// built from the basis classes by L_{chi+eta} = L_chi + L_eta - sum D_sigma.
  DivisorClass l_chi(Z2Vector chi) const;
  DivisorClass d_sigma(Z2Vector sigma) const;
};

/// chi(sigma) for characters and group elements in the same bit coordinates.
inline int pairing(Z2Vector chi, Z2Vector sigma) { return __builtin_parity(chi & sigma); }

struct BuildingDataError : std::runtime_error {
  BuildingDataError(std::size_t line, const std::string& what);
  std::size_t line;
};

/// `lattice <name>`, `D <sigma-bits> <c...>`, `L <i> <c...>`; '#' starts a comment.
BuildingData parse_building_data(std::string_view text);
BuildingData load_building_data(const std::string& path);

/// One message per violated condition; empty means valid.
std::vector<std::string> validate_building_data(const BuildingData& bd);

/// The sigma with D_sigma != 0 span Z_2^r.
bool is_cover_irreducible(const BuildingData& bd);

/// z_chi z_eta = z_{chi+eta} prod x_sigma, with z_0 = 1.
struct CoverRelation {
  Z2Vector chi = 0, eta = 0;
  Z2Vector product = 0;          // chi + eta
  std::vector<Z2Vector> sigmas;  // the x_sigma factors, sorted
  std::string to_string(int r) const;
};

/// Every unordered pair chi <= eta of nonzero characters, squares included.
std::vector<CoverRelation> cover_equations(const BuildingData& bd);

struct DoubleCoverInvariants {
  std::int64_t k2 = 0;
  std::int64_t chi = 0;
  bool integral = true;  // false when L.(L + K_Y) is odd
};

/// Smooth double cover branched on a divisor in |2L|.
DoubleCoverInvariants double_cover_invariants(const PicardLattice& lattice, std::int64_t chi_y,
                                              std::int64_t ky2, const DivisorClass& l);

/// Invariants of the quotient by a free action of a group of the given order.
/// Throws std::invalid_argument if they are not divisible.
DoubleCoverInvariants free_quotient(const DoubleCoverInvariants& inv, std::int64_t order);

/// a y1 + b y2 + c y3 = 0.
struct ProjectiveLine {
  mpq_class a, b, c;
};

struct ConfigurationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BurniatConfiguration {
  int m = 0;                  // points of multiplicity 3 other than P1, P2, P3
  bool nodal = false;         // three collinear points of multiplicity >= 3
  std::string classification; // primary, secondary, tertiary, quaternary
  int k2 = 6;
  std::vector<std::vector<mpq_class>> triple_points;  // normalized coordinates
};

/// Nine lines: the three sides y_k = 0 and two more lines through each P_i,
/// in any order. Throws ConfigurationError for coincident lines or lines
/// that do not fit this pattern.
BurniatConfiguration burniat_configuration(const std::vector<ProjectiveLine>& lines);

/// Nine `line <a> <b> <c>` entries with rational coefficients.
std::vector<ProjectiveLine> parse_lines(std::string_view text);

}  // namespace pqs
