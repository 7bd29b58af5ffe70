#include "pqs/covers.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace pqs {

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::int64_t parse_int(const std::string& s, std::size_t line) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw BuildingDataError(line, "not an integer: " + s);
  return v;
}

std::string class_to_string(const PicardLattice& lat, const DivisorClass& c) {
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    const std::int64_t a = c[k] < 0 ? -c[k] : c[k];
    out += c[k] < 0 ? (out.empty() ? "-" : " - ") : (out.empty() ? "" : " + ");
    if (a != 1) out += std::to_string(a);
    out += lat.names[k];
  }
  return out.empty() ? "0" : out;
}

DivisorClass add(DivisorClass a, const DivisorClass& b, std::int64_t s = 1) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += s * b[k];
  return a;
}

// sum of D_sigma over sigma with chi(sigma) = eta(sigma) = 1
DivisorClass common_branch(const BuildingData& bd, Z2Vector chi, Z2Vector eta) {
  DivisorClass s(bd.lattice.rank(), 0);
  for (const auto& [sigma, d] : bd.d) {
    if (pairing(chi, sigma) && pairing(eta, sigma)) s = add(s, d);
  }
  return s;
}

}  // namespace

std::int64_t PicardLattice::dot(const DivisorClass& a, const DivisorClass& b) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) s += a[i] * form[i][j] * b[j];
  return s;
}

PicardLattice PicardLattice::del_pezzo_6() {
  return {"dP6", {"L", "E1", "E2", "E3"}, {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}},
          {-3, 1, 1, 1}, 1};
}

PicardLattice PicardLattice::elliptic_product() { return {"ExE", {"f1", "f2"}, {{0, 1}, {1, 0}}, {0, 0}, 0}; }

std::optional<PicardLattice> PicardLattice::by_name(std::string_view name) {
  if (name == "dP6") return del_pezzo_6();
  if (name == "ExE") return elliptic_product();
  return std::nullopt;
}

std::string bits_to_string(Z2Vector v, int r) {
  std::string s;
  for (int k = 0; k < r; ++k) s += (v >> k & 1) ? '1' : '0';
  return s;
}

DivisorClass BuildingData::d_sigma(Z2Vector sigma) const {
  const auto it = d.find(sigma);
  return it == d.end() ? DivisorClass(lattice.rank(), 0) : it->second;
}

DivisorClass BuildingData::l_chi(Z2Vector chi) const {
  DivisorClass acc(lattice.rank(), 0);
  Z2Vector so_far = 0;
  for (int i = 0; i < r; ++i) {
    if (!(chi >> i & 1)) continue;
    const Z2Vector basis = Z2Vector{1} << i;
    acc = so_far == 0 ? l.at(i) : add(add(acc, l.at(i)), common_branch(*this, so_far, basis), -1);
    so_far |= basis;
  }
  return acc;
}

BuildingDataError::BuildingDataError(std::size_t line, const std::string& what)
    : std::runtime_error("building data line " + std::to_string(line) + ": " + what), line(line) {}

BuildingData parse_building_data(std::string_view text) {
  BuildingData bd;
  bool have_lattice = false;
  std::map<int, DivisorClass> ls;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  int r = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const auto t = tokens(raw);
    if (t.empty()) continue;
    if (t[0] == "lattice") {
      if (t.size() != 2) throw BuildingDataError(lineno, "expected: lattice <name>");
      if (have_lattice) throw BuildingDataError(lineno, "lattice given twice");
      auto lat = PicardLattice::by_name(t[1]);
      if (!lat) throw BuildingDataError(lineno, "unknown lattice " + t[1]);
      bd.lattice = *lat;
      have_lattice = true;
      continue;
    }
    if (!have_lattice) throw BuildingDataError(lineno, "lattice must come first");
    if (t[0] != "D" && t[0] != "L") throw BuildingDataError(lineno, "unknown keyword " + t[0]);
    if (t.size() != 2 + bd.lattice.rank()) {
      throw BuildingDataError(lineno, "expected " + std::to_string(bd.lattice.rank()) + " coefficients");
    }
    DivisorClass c;
    for (std::size_t k = 2; k < t.size(); ++k) c.push_back(parse_int(t[k], lineno));
    if (t[0] == "D") {
      const std::string& bits = t[1];
      if (bits.empty() || bits.size() > 16 || bits.find_first_not_of("01") != std::string::npos) {
        throw BuildingDataError(lineno, "bad sigma " + bits);
      }
      if (r != 0 && static_cast<int>(bits.size()) != r) throw BuildingDataError(lineno, "sigma length differs");
      r = static_cast<int>(bits.size());
      Z2Vector sigma = 0;
      for (int k = 0; k < r; ++k) sigma |= static_cast<Z2Vector>(bits[k] == '1') << k;
      if (sigma == 0) throw BuildingDataError(lineno, "sigma must be nonzero");
      if (!bd.d.emplace(sigma, c).second) throw BuildingDataError(lineno, "duplicate D_" + bits);
    } else {
      const auto i = parse_int(t[1], lineno);
      if (i < 1 || i > 16) throw BuildingDataError(lineno, "bad character index");
      if (!ls.emplace(static_cast<int>(i), c).second) throw BuildingDataError(lineno, "duplicate L_" + t[1]);
    }
  }
  if (!have_lattice) throw BuildingDataError(lineno, "no lattice given");
  if (r == 0) r = ls.empty() ? 1 : ls.rbegin()->first;
  if (!ls.empty() && ls.rbegin()->first > r) throw BuildingDataError(lineno, "character index exceeds r");
  bd.r = r;
  for (int i = 1; i <= r; ++i) {
    const auto it = ls.find(i);
    if (it == ls.end()) throw BuildingDataError(lineno, "missing L_" + std::to_string(i));
    bd.l.push_back(it->second);
  }
  return bd;
}

BuildingData load_building_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BuildingDataError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_building_data(ss.str());
}

std::vector<std::string> validate_building_data(const BuildingData& bd) {
  std::vector<std::string> out;
  const Z2Vector all = (Z2Vector{1} << bd.r) - 1;
  for (Z2Vector chi = 1; chi <= all; ++chi) {
    DivisorClass rhs(bd.lattice.rank(), 0);
    for (const auto& [sigma, d] : bd.d) {
      if (pairing(chi, sigma)) rhs = add(rhs, d);
    }
    const DivisorClass twice = add(bd.l_chi(chi), bd.l_chi(chi));
    if (twice != rhs) {
      const bool basis = (chi & (chi - 1)) == 0;
      out.push_back(std::string(basis ? "condition (#)" : "derived class") + " fails for chi " +
                    bits_to_string(chi, bd.r) + ": 2L = " + class_to_string(bd.lattice, twice) +
                    ", sum of D = " + class_to_string(bd.lattice, rhs));
    }
  }
  return out;
}

bool is_cover_irreducible(const BuildingData& bd) {
  // rank over Z_2 of the support
  std::vector<Z2Vector> basis;
  for (const auto& [sigma, d] : bd.d) {
    if (std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x == 0; })) continue;
    Z2Vector v = sigma;
    for (Z2Vector b : basis) v = std::min(v, v ^ b);
    if (v != 0) basis.push_back(v);
  }
  return static_cast<int>(basis.size()) == bd.r;
}

std::string CoverRelation::to_string(int r) const {
  auto z = [&](Z2Vector v) { return "z_" + bits_to_string(v, r); };
  std::string s = chi == eta ? z(chi) + "^2" : z(chi) + " " + z(eta);
  s += " =";
  if (product != 0) s += " " + z(product);
  for (Z2Vector x : sigmas) s += " x_" + bits_to_string(x, r);
  if (product == 0 && sigmas.empty()) s += " 1";
  return s;
}

std::vector<CoverRelation> cover_equations(const BuildingData& bd) {
  std::vector<CoverRelation> out;
  const Z2Vector all = (Z2Vector{1} << bd.r) - 1;
  for (Z2Vector chi = 1; chi <= all; ++chi) {
    for (Z2Vector eta = chi; eta <= all; ++eta) {
      CoverRelation rel{chi, eta, chi ^ eta, {}};
      for (const auto& [sigma, d] : bd.d) {
        if (pairing(chi, sigma) && pairing(eta, sigma)) rel.sigmas.push_back(sigma);
      }
      out.push_back(std::move(rel));
    }
  }
  return out;
}

DoubleCoverInvariants double_cover_invariants(const PicardLattice& lattice, std::int64_t chi_y,
                                              std::int64_t ky2, const DivisorClass& l) {
  const std::int64_t kl = lattice.dot(lattice.canonical, l), ll = lattice.dot(l, l);
  DoubleCoverInvariants inv;
  inv.k2 = 2 * (ky2 + 2 * kl + ll);
  const std::int64_t t = ll + kl;
  inv.integral = t % 2 == 0;
  inv.chi = 2 * chi_y + t / 2;
  return inv;
}

DoubleCoverInvariants free_quotient(const DoubleCoverInvariants& inv, std::int64_t order) {
  if (order <= 0 || inv.k2 % order != 0 || inv.chi % order != 0) {
    throw std::invalid_argument("invariants not divisible by the group order");
  }
  return {inv.k2 / order, inv.chi / order, inv.integral};
}

namespace {

using Point = std::vector<mpq_class>;

Point normalize(Point p) {
  for (const auto& x : p) {
    if (x != 0) {
      const mpq_class s = x;
      for (auto& y : p) y /= s;
      break;
    }
  }
  return p;
}

Point cross(const ProjectiveLine& u, const ProjectiveLine& v) {
  return {u.b * v.c - u.c * v.b, u.c * v.a - u.a * v.c, u.a * v.b - u.b * v.a};
}

bool on(const ProjectiveLine& l, const Point& p) { return l.a * p[0] + l.b * p[1] + l.c * p[2] == 0; }

bool collinear(const Point& p, const Point& q, const Point& s) {
  const mpq_class det = p[0] * (q[1] * s[2] - q[2] * s[1]) - p[1] * (q[0] * s[2] - q[2] * s[0]) +
                        p[2] * (q[0] * s[1] - q[1] * s[0]);
  return det == 0;
}

struct PointLess {
  bool operator()(const Point& x, const Point& y) const {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }
};

}  // namespace

BurniatConfiguration burniat_configuration(const std::vector<ProjectiveLine>& lines) {
  if (lines.size() != 9) throw ConfigurationError("expected 9 lines, got " + std::to_string(lines.size()));
  const std::vector<Point> p = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<int> sides(3, 0), pencil(3, 0);
  for (std::size_t i = 0; i < 9; ++i) {
    const auto& l = lines[i];
    if (l.a == 0 && l.b == 0 && l.c == 0) throw ConfigurationError("line " + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < i; ++j) {
      const auto x = cross(l, lines[j]);
      if (x[0] == 0 && x[1] == 0 && x[2] == 0) {
        throw ConfigurationError("lines " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
      }
    }
    int through = 0, last = -1;
    for (int k = 0; k < 3; ++k) {
      if (on(l, p[k])) {
        ++through;
        last = k;
      }
    }
    if (through == 2) {
      // y_k = 0 misses exactly P_k
      for (int k = 0; k < 3; ++k)
        if (!on(l, p[k])) ++sides[k];
    } else if (through == 1) {
      ++pencil[last];
    } else {
      throw ConfigurationError("line " + std::to_string(i + 1) + " passes through none of P1, P2, P3");
    }
  }
  for (int k = 0; k < 3; ++k) {
    if (sides[k] != 1) throw ConfigurationError("the side y" + std::to_string(k + 1) + " = 0 is missing");
    if (pencil[k] != 2) {
      throw ConfigurationError("expected two further lines through P" + std::to_string(k + 1) + ", got " +
                               std::to_string(pencil[k]));
    }
  }

  std::map<Point, std::set<std::size_t>, PointLess> incidence;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = i + 1; j < 9; ++j) {
      auto& s = incidence[normalize(cross(lines[i], lines[j]))];
      s.insert(i);
      s.insert(j);
    }

  BurniatConfiguration out;
  for (const auto& [pt, ls] : incidence) {
    if (ls.size() >= 3 && std::find(p.begin(), p.end(), pt) == p.end()) out.triple_points.push_back(pt);
  }
  out.m = static_cast<int>(out.triple_points.size());
  out.k2 = 6 - out.m;

  std::vector<Point> heavy = p;
  heavy.insert(heavy.end(), out.triple_points.begin(), out.triple_points.end());
  for (std::size_t i = 0; i < heavy.size() && !out.nodal; ++i)
    for (std::size_t j = i + 1; j < heavy.size() && !out.nodal; ++j)
      for (std::size_t k = j + 1; k < heavy.size() && !out.nodal; ++k)
        out.nodal = collinear(heavy[i], heavy[j], heavy[k]);

  static const char* names[] = {"primary", "secondary", "secondary", "tertiary", "quaternary"};
  out.classification = out.m <= 4 ? names[out.m] : "beyond quaternary";
  return out;
}

std::vector<ProjectiveLine> parse_lines(std::string_view text) {
  std::vector<ProjectiveLine> out;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const auto t = tokens(raw);
    if (t.empty()) continue;
    if (t[0] != "line" || t.size() != 4) throw BuildingDataError(lineno, "expected: line <a> <b> <c>");
    ProjectiveLine l;
    mpq_class* slots[] = {&l.a, &l.b, &l.c};
    for (int k = 0; k < 3; ++k) {
      const std::string& s = t[k + 1];
      if (s.find_first_not_of("+-0123456789/") != std::string::npos || s.empty()) {
        throw BuildingDataError(lineno, "not a rational: " + s);
      }
      try {
        mpq_class q(s.front() == '+' ? s.substr(1) : s, 10);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        q.canonicalize();
        *slots[k] = q;
      } catch (const std::invalid_argument&) {
        throw BuildingDataError(lineno, "not a rational: " + s);
      }
    }
    out.push_back(l);
  }
  return out;
}

}  // namespace pqs
