#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pqs/covers.hpp"

using namespace pqs;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(PQS_DATA_DIR) + "/covers/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Number of concurrent triples of lines away from P1, P2, P3. Each P_i lies
// on exactly four of the lines and contributes four triples; elsewhere at
// most three lines meet, so this equals the number of extra triple points.
int concurrent_triples_oracle(const std::vector<ProjectiveLine>& l) {
  int count = 0;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j)
      for (std::size_t k = j + 1; k < l.size(); ++k) {
        const mpq_class det = l[i].a * (l[j].b * l[k].c - l[j].c * l[k].b) -
                              l[i].b * (l[j].a * l[k].c - l[j].c * l[k].a) +
                              l[i].c * (l[j].a * l[k].b - l[j].b * l[k].a);
        if (det == 0) ++count;
      }
  return count - 12;
}

// y'_j = s_j y_{perm[j]}
std::vector<ProjectiveLine> transform(const std::vector<ProjectiveLine>& lines, const int perm[3],
                                      const mpq_class s[3]) {
  std::vector<ProjectiveLine> out;
  for (const auto& l : lines) {
    const mpq_class c[3] = {l.a, l.b, l.c};
    out.push_back({c[perm[0]] / s[0], c[perm[1]] / s[1], c[perm[2]] / s[2]});
  }
  return out;
}

DivisorClass add_classes(DivisorClass a, const DivisorClass& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

BuildingData burniat() { return parse_building_data(read_data("burniat.bd")); }

}  // namespace

TEST_CASE("lattices") {
  const auto dp = PicardLattice::del_pezzo_6();
  CHECK(dp.k_squared() == 6);
  const auto e = PicardLattice::elliptic_product();
  CHECK(e.k_squared() == 0);
  CHECK(e.dot({2, 2}, {2, 2}) == 8);
  CHECK_FALSE(PicardLattice::by_name("P2").has_value());
}

TEST_CASE("building data parsing") {
  const auto bd = burniat();
  CHECK(bd.r == 2);
  CHECK(bd.d.size() == 3);
  CHECK(bd.d_sigma(0b10) == DivisorClass{3, -3, -1, 1});
  CHECK_THROWS_AS(parse_building_data("D 1 1 1\n"), BuildingDataError);
  CHECK_THROWS_AS(parse_building_data("lattice ExE\nD 1 1\n"), BuildingDataError);
  CHECK_THROWS_AS(parse_building_data("lattice ExE\nD 00 1 1\nL 1 0 0\n"), BuildingDataError);
  CHECK_THROWS_AS(parse_building_data("lattice ExE\nD 1 2 2\n"), BuildingDataError);  // no L_1
  try {
    parse_building_data("lattice ExE\n\nD 1 x 2\n");
    FAIL("expected an error");
  } catch (const BuildingDataError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("validation") {
  auto bd = burniat();
  CHECK(validate_building_data(bd).empty());
  // the derived third class is 3L - E1 - 2E2
  CHECK(bd.l_chi(0b11) == DivisorClass{3, -1, -2, 0});
  // D_3 + D_2 = 6L - 4E_3 - 2E_2 = 2L_1
  CHECK(add_classes(bd.d_sigma(0b11), bd.d_sigma(0b01)) == DivisorClass{6, 0, -2, -4});

  SUBCASE("r = 1, D = 2B") {
    const auto b = parse_building_data("lattice dP6\nD 1 2 -2 0 4\nL 1 1 -1 0 2\n");
    CHECK(validate_building_data(b).empty());
  }
  SUBCASE("parity break") {
    bd.d[0b10][1] += 1;
    const auto v = validate_building_data(bd);
    // D_1 enters L_2 and the derived L_3 but not L_1
    REQUIRE(v.size() == 2);
    CHECK(v[0].find("condition (#)") == 0);
    CHECK(v[0].find("chi 01") != std::string::npos);
    CHECK(v[1].find("derived class") == 0);
  }
  SUBCASE("every character satisfies the doubling relation on random valid data") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
      BuildingData d;
      d.lattice = PicardLattice::del_pezzo_6();
      d.r = 3;
      // take even D_sigma and L_i = half the sum; this always satisfies (#)
      for (Z2Vector s = 1; s < 8; ++s) {
        DivisorClass x;
        for (int k = 0; k < 4; ++k) x.push_back(2 * c(rng));
        d.d[s] = x;
      }
      for (int i = 0; i < 3; ++i) {
        DivisorClass x(4, 0);
        for (const auto& [s, cls] : d.d)
          if (s >> i & 1)
            for (int k = 0; k < 4; ++k) x[k] += cls[k] / 2;
        d.l.push_back(x);
      }
      CHECK(validate_building_data(d).empty());
    }
  }
}

TEST_CASE("irreducibility") {
  CHECK(is_cover_irreducible(burniat()));
  CHECK_FALSE(is_cover_irreducible(parse_building_data("lattice ExE\nD 10 2 2\nL 1 1 1\nL 2 0 0\n")));
  CHECK(is_cover_irreducible(parse_building_data("lattice ExE\nD 10 2 2\nD 01 2 0\nL 1 1 1\nL 2 1 0\n")));
  // a zero class does not count as branch
  CHECK_FALSE(is_cover_irreducible(parse_building_data("lattice ExE\nD 10 2 2\nD 01 0 0\nL 1 1 1\nL 2 0 0\n")));
}

TEST_CASE("cover equations") {
  const auto r1 = cover_equations(parse_building_data("lattice ExE\nD 1 4 4\nL 1 2 2\n"));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].to_string(1) == "z_1^2 = x_1");

  // Burniat: D_i lives at the sigma killed by chi_i, and u_i is the fibre
  // coordinate for L_{i+1}, so u1 = z_chi2, u2 = z_chi3, u3 = z_chi1.
  const auto bd = burniat();
  const auto rels = cover_equations(bd);
  CHECK(rels.size() == 6);
  const Z2Vector chi[4] = {0, 0b01, 0b10, 0b11};
  const Z2Vector delta[4] = {0, 0b10, 0b01, 0b11};  // sigma of D_i
  const Z2Vector u[4] = {0, chi[2], chi[3], chi[1]};
  auto find = [&](Z2Vector a, Z2Vector b) {
    for (const auto& r : rels)
      if ((r.chi == a && r.eta == b) || (r.chi == b && r.eta == a)) return r;
    FAIL("relation missing");
    return CoverRelation{};
  };
  for (int i = 1; i <= 3; ++i) {
    const int j = i % 3 + 1, k = j % 3 + 1, prev = (i + 1) % 3 + 1;
    // u_i u_{i+1} = delta_i u_{i+2}
    const auto prod = find(u[i], u[j]);
    CHECK(prod.product == u[k]);
    CHECK(prod.sigmas == std::vector<Z2Vector>{delta[i]});
    // u_i^2 = delta_{i-1} delta_i
    auto sq = find(u[i], u[i]).sigmas;
    std::vector<Z2Vector> want{delta[prev], delta[i]};
    std::sort(want.begin(), want.end());
    CHECK(sq == want);
  }

  SUBCASE("associativity of exponents") {
    BuildingData d;
    d.lattice = PicardLattice::elliptic_product();
    d.r = 3;
    for (Z2Vector s = 1; s < 8; ++s) d.d[s] = {2, 0};
    const auto all = cover_equations(d);
    auto x = [&](Z2Vector a, Z2Vector b) {
      std::vector<int> e(8, 0);
      if (a == 0 || b == 0) return e;
      for (const auto& r : all)
        if ((r.chi == a && r.eta == b) || (r.chi == b && r.eta == a))
          for (auto s : r.sigmas) ++e[s];
      return e;
    };
    for (Z2Vector a = 1; a < 8; ++a)
      for (Z2Vector b = 1; b < 8; ++b)
        for (Z2Vector c = 1; c < 8; ++c) {
          auto left = x(a, b), l2 = x(a ^ b, c), right = x(b, c), r2 = x(a, b ^ c);
          for (int s = 0; s < 8; ++s) {
            left[s] += l2[s];
            right[s] += r2[s];
          }
          CHECK(left == right);
        }
  }
}

TEST_CASE("double covers") {
  const auto e = PicardLattice::elliptic_product();
  const auto kn = double_cover_invariants(e, 0, 0, {2, 2});
  CHECK(kn.k2 == 16);
  CHECK(kn.chi == 4);
  CHECK(kn.integral);
  const auto q = free_quotient(kn, 4);
  CHECK(q.k2 == 4);
  CHECK(q.chi == 1);
  CHECK_THROWS(free_quotient(kn, 3));

  const auto dp = PicardLattice::del_pezzo_6();
  const auto etale = double_cover_invariants(dp, 1, 6, {0, 0, 0, 0});
  CHECK(etale.k2 == 12);
  CHECK(etale.chi == 2);
  // L = E1: L.(L + K) = -1 - 1 = -2, even; L = L_line: 1 - 3 = -2
  CHECK(double_cover_invariants(dp, 1, 6, {1, 0, 0, 0}).integral);
  // parity: L.(L+K) = L^2 + K.L = L^2 - L^2 mod 2 on these lattices, so always even
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int t = 0; t < 50; ++t) {
    const DivisorClass l{c(rng), c(rng), c(rng), c(rng)};
    const auto inv = double_cover_invariants(dp, 1, 6, l);
    CHECK(inv.integral);
    CHECK(inv.k2 % 2 == 0);
  }
}

TEST_CASE("Burniat line configurations") {
  const auto m0 = burniat_configuration(parse_lines(read_data("burniat_m0.lines")));
  CHECK(m0.m == 0);
  CHECK(m0.k2 == 6);
  CHECK(m0.classification == "primary");
  const auto m1 = burniat_configuration(parse_lines(read_data("burniat_m1.lines")));
  CHECK(m1.m == 1);
  CHECK(m1.k2 == 5);
  CHECK(m1.classification == "secondary");
  CHECK(m1.triple_points == std::vector<std::vector<mpq_class>>{{1, 1, 1}});
  const auto m2 = burniat_configuration(parse_lines(read_data("burniat_m2.lines")));
  CHECK(m2.m == 2);
  CHECK(m2.k2 == 4);
  CHECK_FALSE(m2.nodal);
  const auto nodal = burniat_configuration(parse_lines(read_data("burniat_nodal.lines")));
  CHECK(nodal.m == 2);
  CHECK(nodal.nodal);

  for (const char* f : {"burniat_m0.lines", "burniat_m1.lines", "burniat_m2.lines", "burniat_nodal.lines"}) {
    const auto l = parse_lines(read_data(f));
    CHECK(burniat_configuration(l).m == concurrent_triples_oracle(l));
  }

  SUBCASE("errors") {
    auto l = parse_lines(read_data("burniat_m0.lines"));
    auto dup = l;
    dup[4] = {0, 2, -2};  // proportional to line 4
    CHECK_THROWS_AS(burniat_configuration(dup), ConfigurationError);
    auto stray = l;
    stray[8] = {1, 1, 1};
    CHECK_THROWS_AS(burniat_configuration(stray), ConfigurationError);
    auto short_list = l;
    short_list.pop_back();
    CHECK_THROWS_AS(burniat_configuration(short_list), ConfigurationError);
    CHECK_THROWS(parse_lines("line 1 0\n"));
    CHECK_THROWS(parse_lines("line 1/0 0 1\n"));
    CHECK(parse_lines("line -1/2 +3 0\n")[0].a == mpq_class(-1, 2));
  }

  SUBCASE("random configurations against the oracle, invariant under coordinate maps") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> small(-3, 3);
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    int tested = 0, with_points = 0;
    while (tested < 200) {
      std::vector<ProjectiveLine> l = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 2; ++k) {
          mpq_class u = small(rng), v = small(rng);
          // the line vanishes at P_i: its i-th coefficient is zero
          mpq_class line[3];
          line[i] = 0;
          line[(i + 1) % 3] = u;
          line[(i + 2) % 3] = v;
          l.push_back({line[0], line[1], line[2]});
        }
      BurniatConfiguration conf;
      try {
        conf = burniat_configuration(l);
      } catch (const ConfigurationError&) {
        continue;
      }
      ++tested;
      if (conf.m > 0) ++with_points;
      CHECK(conf.m == concurrent_triples_oracle(l));
      CHECK(conf.k2 == 6 - conf.m);
      const mpq_class s[3] = {mpq_class(small(rng) | 1) / 2, mpq_class(5) / (small(rng) | 1), 7};
      const auto moved = burniat_configuration(transform(l, perms[tested % 6], s));
      CHECK(moved.m == conf.m);
      CHECK(moved.nodal == conf.nodal);
    }
    CHECK(with_points > 10);
  }
}
