// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "pqs/classify.hpp"
#include "pqs/covers.hpp"
#include "pqs/snf.hpp"

using namespace pqs;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

const std::string kData = PQS_DATA_DIR;

const GroupCatalog& catalog() {
  static const GroupCatalog cat = load_catalog(kData + "/groups.txt");
  return cat;
}

int jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<ClassificationRecord> fixture_rows() {
  std::ifstream in(kData + "/fixtures/tables.tsv");
  if (!in) throw std::runtime_error("missing fixtures");
  return read_records(in);
}

std::string row_text(const ClassificationRecord& r) {
  return "K2=" + std::to_string(r.k2) + " " + r.group_name + " " + Signature::parse(r.t1).compact() + " / " +
         Signature::parse(r.t2).compact();
}

std::pair<std::string, std::string> ordered(const std::string& a, const std::string& b) {
  return Signature::parse(a) <= Signature::parse(b) ? std::pair{a, b} : std::pair{b, a};
}

// Verifies fixture rows end to end and checks K_X^2 = K_S'^2 + sum of corrections
// from the genera given by Riemann-Hurwitz.
void verify_rows(const std::vector<ClassificationRecord>& rows, Outcome& out) {
  for (const auto& v : verify(rows, catalog(), jobs())) {
    if (v.status != VerifyStatus::pass) out.require(false, v.to_string());
  }
  for (const auto& r : rows) {
    const auto t1 = Signature::parse(r.t1), t2 = Signature::parse(r.t2);
    const std::int64_t order = r.group.order;
    const auto g1 = rh_genus(order, t1), g2 = rh_genus(order, t2);
    Rational ks2 = kx_squared(g1.genus, g2.genus, order);
    for (const auto& t : parse_basket(r.basket)) ks2 -= resolution_correction(t);
    out.require(g1.integral && g2.integral && ks2 == r.k2, row_text(r) + ": K_X^2 and basket disagree with K^2");
    const auto ec = euler_and_chi(g1.genus, g2.genus, order, parse_basket(r.basket));
    out.require(ec.integral && ec.chi == 1, row_text(r) + ": chi != 1");
  }
}

Outcome criterion_1() {
  Outcome out;
  std::map<std::tuple<std::string, std::string, GroupLabel>, ClassificationRecord> expected;
  for (const auto& r : fixture_rows()) {
    if (r.k2 != 8 || r.mixed()) continue;
    const auto [a, b] = ordered(r.t1, r.t2);
    expected[{a, b, r.group}] = r;
  }
  const auto got = classify(catalog(), {8, {}, true, jobs()});
  std::size_t matched = 0;
  for (const auto& r : got) {
    const auto it = expected.find({r.t1, r.t2, r.group});
    if (it == expected.end()) {
      out.require(false, "extra family " + row_text(r));
      continue;
    }
    const auto& e = it->second;
    bool ok = true;
    if (e.h1 != r.h1) {
      out.require(false, row_text(e) + ": H1 expected " + e.h1 + ", got " + r.h1);
      ok = false;
    }
    if (e.n_families != r.n_families) {
      out.require(false, row_text(e) + ": N expected " + std::to_string(*e.n_families) + ", got " +
                             (r.n_families ? std::to_string(*r.n_families) : "?"));
      ok = false;
    }
    matched += ok;
    expected.erase(it);
  }
  for (const auto& [k, e] : expected) out.require(false, "missing family " + row_text(e));
  out.notes.insert(out.notes.begin(), std::to_string(matched) + "/12 rows match exactly");
  return out;
}

Outcome criterion_2() {
  Outcome out;
  std::vector<ClassificationRecord> rows;
  for (const auto& r : fixture_rows())
    if (r.k2 >= 4 && r.k2 <= 6 && catalog().find(r.group)) rows.push_back(r);
  verify_rows(rows, out);

  // the K_X^2 values quoted for the A5 rows
  const auto a5 = catalog().find("A5");
  const auto kx = [&](const char* t1, const char* t2) {
    return kx_squared(rh_genus(60, Signature::parse(t1)).genus, rh_genus(60, Signature::parse(t2)).genus, 60);
  };
  out.require(a5 && kx("3,5^2", "2^3,3") == Rational(16, 3), "A5 K2=5: K_X^2 != 16/3");
  out.require(a5 && kx("2^3,5", "3^2,5") == Rational(24, 5), "A5 K2=4: K_X^2 != 24/5");
  if (out.pass) out.notes.push_back(std::to_string(rows.size()) + " rows verified");
  return out;
}

Outcome criterion_3() {
  Outcome out;
  std::vector<ClassificationRecord> rows;
  for (const auto& r : fixture_rows()) {
    if ((r.k2 == 2 && r.group_name == "Z4^2") || (r.k2 == 1 && r.group_name == "S4")) rows.push_back(r);
  }
  out.require(rows.size() == 2, "spot rows not found in the fixtures");
  verify_rows(rows, out);
  return out;
}

Outcome criterion_4() {
  Outcome out;
  std::size_t seen = 0;
  ClassificationCache cache;
  for (int k2 = 1; k2 <= 8; ++k2) {
    for (const auto& r : classify(catalog(), {k2, {}, false, jobs()}, cache)) {
      ++seen;
      const bool free = r.flags.count("free") > 0;
      out.require((r.k2 == 8) == free, row_text(r) + ": K^2 = 8 but flags disagree on freeness");
      out.require(free == (r.basket == "-"), row_text(r) + ": free flag and basket disagree");
    }
  }
  out.notes.push_back(std::to_string(seen) + " records over K^2 = 1..8");
  return out;
}

Outcome criterion_5() {
  Outcome out;
  int checked = 0;
  for (int n = 2; n <= 50; ++n) {
    for (int a = 1; a < n; ++a) {
      if (std::gcd(n, a) != 1) continue;
      ++checked;
      const auto b = hj_expansion(n, a);
      const std::string t = "1/" + std::to_string(n) + "(1," + std::to_string(a) + ")";
      out.require(hj_value(b) == Rational(n, a), t + ": continued fraction does not reconstruct n/a");
      out.require(std::all_of(b.begin(), b.end(), [](int x) { return x >= 2; }), t + ": some b_i < 2");
      const auto k = resolution_correction(SingularityType(n, a));
      out.require(k >= 0, t + ": negative correction");
      out.require((k == 0) == (a == n - 1), t + ": correction vanishes off the RDP case or vice versa");
    }
  }
  out.require(resolution_correction(SingularityType(4, 1)) == 1, "1/4(1,1) correction != 1");
  out.notes.push_back(std::to_string(checked) + " types");
  return out;
}

Outcome criterion_6() {
  Outcome out;
  std::mt19937 rng(500);
  std::uniform_int_distribution<int> entry(-20, 20), dim(1, 8);
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 500; ++trial) {
    const int r = dim(rng), c = dim(rng);
    IntMatrix m(r, std::vector<mpz_class>(c));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    const auto f = smith_normal_form(m);
    const std::string t = "matrix " + std::to_string(trial);
    out.require(multiply(multiply(f.U, m), f.V) == f.S, t + ": U M V != S");
    out.require(abs(determinant(f.U)) == 1 && abs(determinant(f.V)) == 1, t + ": transform not unimodular");
    bool diagonal = true, chain = true;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j && f.S[i][j] != 0) diagonal = false;
    for (int i = 0; i + 1 < std::min(r, c); ++i) {
      const auto& d = f.S[i][i];
      const auto& e = f.S[i + 1][i + 1];
      if (d < 0 || (d == 0 && e != 0) || (d != 0 && e % d != 0)) chain = false;
    }
    out.require(diagonal, t + ": S not diagonal");
    out.require(chain, t + ": divisibility chain broken");
    out.require(oracle::minor_gcd(m, 1) == oracle::diagonal_prefix_product(f.S, 1), t + ": 1-minor gcd");
    out.require(oracle::minor_gcd(m, 2) == oracle::diagonal_prefix_product(f.S, 2), t + ": 2-minor gcd");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < 10, "took longer than 10 s");
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << "500 matrices in " << secs << " s";
  out.notes.push_back(s.str());
  return out;
}

Outcome criterion_7() {
  Outcome out;
  std::size_t groups = 0, cases = 0;
  for (const auto& g : catalog().groups()) {
    if (g->order() > 24) continue;
    ++groups;
    for (int r = 1; r <= 4; ++r) {
      std::vector<int> m(r, 2);
      while (true) {
        ++cases;
        const Signature sig(0, m);
        const auto got = enumerate_generating_vectors(*g, sig).size();
        const auto want = oracle::naive_vector_count(*g, m);
        out.require(got == want, g->name() + " " + sig.to_string() + ": " + std::to_string(got) + " vs naive " +
                                     std::to_string(want));
        int k = r - 1;
        while (k >= 0 && m[k] == 6) --k;
        if (k < 0) break;
        ++m[k];
        for (int j = k + 1; j < r; ++j) m[j] = m[k];
      }
    }
  }
  out.notes.push_back(std::to_string(groups) + " groups, " + std::to_string(cases) + " signatures each checked");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_8() {
  Outcome out;
  const auto bd = parse_building_data(read_file(kData + "/covers/burniat.bd"));
  const auto violations = validate_building_data(bd);
  out.require(violations.empty(), "Burniat building data: " + (violations.empty() ? "" : violations[0]));

  // u_1 u_2 = delta_1 u_3 with u_i the coordinate for L_{i+1}
  const Z2Vector u[4] = {0, 0b10, 0b11, 0b01};
  const Z2Vector delta[4] = {0, 0b10, 0b01, 0b11};
  const auto rels = cover_equations(bd);
  for (int i = 1; i <= 3; ++i) {
    const int j = i % 3 + 1, k = j % 3 + 1;
    bool found = false;
    for (const auto& rel : rels) {
      if (!((rel.chi == u[i] && rel.eta == u[j]) || (rel.chi == u[j] && rel.eta == u[i]))) continue;
      found = rel.product == u[k] && rel.sigmas == std::vector<Z2Vector>{delta[i]};
    }
    out.require(found, "u_" + std::to_string(i) + " u_" + std::to_string(j) + " = delta_" + std::to_string(i) +
                           " u_" + std::to_string(k) + " missing");
  }

  const auto kn_bd = parse_building_data(read_file(kData + "/covers/keum_naie.bd"));
  out.require(validate_building_data(kn_bd).empty(), "Keum-Naie building data invalid");
  const auto kn = double_cover_invariants(kn_bd.lattice, kn_bd.lattice.chi, kn_bd.lattice.k_squared(), kn_bd.l[0]);
  out.require(kn.k2 == 16 && kn.chi == 4, "Keum-Naie double cover: (K^2, chi) != (16, 4)");
  const auto q = free_quotient(kn, 4);
  out.require(q.k2 == 4 && q.chi == 1, "Keum-Naie quotient: (K^2, chi) != (4, 1)");

  for (int m = 0; m <= 2; ++m) {
    const auto c = burniat_configuration(
        parse_lines(read_file(kData + "/covers/burniat_m" + std::to_string(m) + ".lines")));
    out.require(c.m == m && c.k2 == 6 - m && !c.nodal,
                "configuration m=" + std::to_string(m) + " gives m=" + std::to_string(c.m) +
                    ", K^2=" + std::to_string(c.k2));
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"K^2=8 unmixed families (T1, T2, G, H1, N)", criterion_1},
      {"K^2=6,5,4 rows: basket, K^2, chi, H1", criterion_2},
      {"Z4^2 K^2=2 and S4 K^2=1 rows", criterion_3},
      {"K^2 = 8 iff the action is free", criterion_4},
      {"Hirzebruch-Jung suite, n <= 50", criterion_5},
      {"Smith normal form suite", criterion_6},
      {"generating vectors vs brute force, |G| <= 24", criterion_7},
      {"abelian covers", criterion_8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::ostringstream t;
    t.precision(1);
    t << std::fixed << secs;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << t.str() << " s)\n";
    for (const auto& n : o.notes) std::cout << "    " << n << '\n';
    std::cout.flush();
  }
  std::cout << "criterion 9: EXCLUDED  full |G| <= 2000 sweep, mixed actions, fake-plane count and moduli claims "
               "are out of scope\n";
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << '\n';
  return failed ? 1 : 0;
}
