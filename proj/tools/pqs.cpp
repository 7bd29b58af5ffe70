// Command-line driver: classify, verify, invariants, cover.
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pqs/classify.hpp"
#include "pqs/covers.hpp"
#include "pqs/pi1.hpp"

using namespace pqs;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GroupCatalog catalog_or_throw(const std::string& path, const std::vector<std::string>& only) {
  auto full = load_catalog(path);
  if (only.empty()) return full;
  GroupCatalog subset;
  for (const auto& key : only) {
    auto g = full.find(key);
    if (!g) throw UsageError("group '" + key + "' is not in the catalog");
    subset.add(g);
  }
  return subset;
}

// "2,1,3;1,3,2" -> elements given by 1-based image lists
std::vector<Elem> parse_vector(const FiniteGroup& g, const std::string& text) {
  std::vector<Elem> out;
  std::stringstream ss(text);
  for (std::string perm; std::getline(ss, perm, ';');) {
    std::vector<int> images;
    std::stringstream ps(perm);
    for (std::string tok; std::getline(ps, tok, ',');) {
      try {
        images.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw UsageError("bad permutation entry '" + tok + "'");
      }
    }
    if (images.size() != g.degree()) {
      throw UsageError("permutation '" + perm + "' has degree " + std::to_string(images.size()) + ", group has " +
                       std::to_string(g.degree()));
    }
    Permutation p;
    try {
      p = Permutation::from_one_based(images);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    const auto e = g.find(p);
    if (!e) throw UsageError("permutation '" + perm + "' is not in " + g.name());
    out.push_back(*e);
  }
  return out;
}

int run_classify(int k2, const std::string& catalog_path, const std::vector<std::string>& only,
                 const SweepBounds& bounds, bool require_free, int jobs, const std::string& out_path) {
  const auto catalog = catalog_or_throw(catalog_path, only);
  if (bounds.max_order < 2) throw UsageError("--max-order must be at least 2");
  if (k2 < 1 || k2 > 8) throw UsageError("--k2 must lie in [1, 8]");
  const auto records = classify(catalog, {k2, bounds, require_free, jobs});
  if (out_path.empty() || out_path == "-") {
    write_records(std::cout, records);
  } else {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    write_records(out, records);
  }
  return kOk;
}

int run_verify(const std::string& fixtures_path, const std::string& catalog_path, int jobs) {
  std::ifstream in(fixtures_path);
  if (!in) throw UsageError("cannot open " + fixtures_path);
  const auto fixtures = read_records(in);
  const auto catalog = load_catalog(catalog_path);
  const auto results = verify(fixtures, catalog, jobs);
  int pass = 0, fail = 0, skipped = 0;
  for (const auto& r : results) {
    std::cout << r.to_string() << '\n';
    if (r.status == VerifyStatus::pass) ++pass;
    else if (r.status == VerifyStatus::fail) ++fail;
    else ++skipped;
  }
  std::cout << "summary: " << pass << " pass, " << fail << " fail, " << skipped << " unverifiable\n";
  return fail ? kFailed : kOk;
}

int run_invariants(const std::string& catalog_path, const std::string& group, const std::string& t1_text,
                   const std::string& t2_text, const std::string& v1_text, const std::string& v2_text) {
  const auto catalog = load_catalog(catalog_path);
  const auto g = catalog.find(group);
  if (!g) throw UsageError("group '" + group + "' is not in the catalog");
  Signature t1, t2;
  try {
    t1 = Signature::parse(t1_text);
    t2 = Signature::parse(t2_text);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (t1.genus != 0 || t2.genus != 0) throw UsageError("only genus-0 signatures are supported");

  auto pick = [&](const Signature& t, const std::string& text) -> std::optional<GeneratingVector> {
    if (!text.empty()) {
      auto branch = parse_vector(*g, text);
      if (!is_generating_vector(*g, t, {}, branch)) {
        throw UsageError("'" + text + "' is not a generating vector of type " + t.to_string());
      }
      return GeneratingVector{g.get(), t, {}, branch};
    }
    const auto vs = enumerate_generating_vectors(*g, t);
    if (vs.size() == 0) return std::nullopt;
    return vs.at(0);
  };
  const auto v1 = pick(t1, v1_text);
  const auto v2 = pick(t2, v2_text);
  if (!v1 || !v2) {
    std::cout << "no cover: " << g->name() << " has no generating vector of type "
              << (v1 ? t2 : t1).to_string() << '\n';
    return kFailed;
  }

  const auto inv = surface_invariants(*g, v1->branch, v2->branch);
  std::cout << "group      " << g->name() << " G(" << g->order() << "," << g->label().index << ")\n"
            << "T1, T2     " << t1.to_string() << " / " << t2.to_string() << '\n'
            << "genera     g1=" << inv.g1 << " g2=" << inv.g2 << '\n'
            << "K_X^2      " << to_string(inv.kx2) << '\n'
            << "basket     " << basket_to_string(inv.basket) << '\n';
  for (const auto& t : inv.basket) {
    std::cout << "  1/" << t.n << "(1," << t.a << ")  HJ [";
    const auto hj = hj_expansion(t.n, t.a);
    for (std::size_t i = 0; i < hj.size(); ++i) std::cout << (i ? "," : "") << hj[i];
    std::cout << "]  correction " << to_string(resolution_correction(t)) << '\n';
  }
  std::cout << "K_S'^2     " << to_string(inv.ks2) << '\n'
            << "e(S')      " << to_string(inv.euler) << '\n'
            << "chi        " << to_string(inv.chi) << '\n'
            << "free       " << (inv.free ? "yes" : "no") << '\n';
  if (inv.minimality_unverified) std::cout << "note       minimality unverified\n";
  const auto pres = pi1_presentation(*g, *v1, *v2);
  std::cout << "H1         " << abelianization(pres).to_string() << '\n';
  const auto small = simplify(pres);
  std::cout << "pi1        " << pres.generator_count << " generators, " << pres.relators.size()
            << " relators; after Tietze " << small.generator_count << " generators, " << small.relators.size()
            << " relators\n";
  return kOk;
}

int run_cover(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  // a file of `line` entries is a Burniat configuration
  std::istringstream probe(text);
  std::string first;
  for (std::string line; std::getline(probe, line);) {
    std::istringstream ls(line);
    if (ls >> first && first[0] != '#') break;
    first.clear();
  }
  if (first == "line") {
    BurniatConfiguration conf;
    try {
      conf = burniat_configuration(parse_lines(text));
    } catch (const ConfigurationError& e) {
      std::cout << "invalid configuration: " << e.what() << '\n';
      return kFailed;
    }
    std::cout << "triple points off P1,P2,P3: " << conf.m << '\n';
    for (const auto& p : conf.triple_points) {
      std::cout << "  (" << p[0].get_str() << " : " << p[1].get_str() << " : " << p[2].get_str() << ")\n";
    }
    std::cout << "classification: " << conf.classification << (conf.nodal ? " (nodal type)" : "") << '\n'
              << "K^2 = " << conf.k2 << '\n';
    return kOk;
  }

  const auto bd = parse_building_data(text);
  const auto violations = validate_building_data(bd);
  std::cout << "lattice " << bd.lattice.name << ", r = " << bd.r << '\n';
  if (violations.empty()) {
    std::cout << "validation: ok\n";
  } else {
    for (const auto& v : violations) std::cout << "violation: " << v << '\n';
  }
  std::cout << "irreducible: " << (is_cover_irreducible(bd) ? "yes" : "no") << '\n';
  std::cout << "equations:\n";
  for (const auto& rel : cover_equations(bd)) std::cout << "  " << rel.to_string(bd.r) << '\n';
  if (bd.r == 1 && violations.empty()) {
    const auto dc = double_cover_invariants(bd.lattice, bd.lattice.chi, bd.lattice.k_squared(), bd.l[0]);
    std::cout << "double cover: K^2 = " << dc.k2 << ", chi = " << dc.chi
              << (dc.integral ? "" : " (inconsistent: L.(L+K) is odd)") << '\n';
  }
  return violations.empty() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product-quotient surface classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  const std::string default_catalog = std::string(PQS_DATA_DIR) + "/groups.txt";

  int k2 = 8, jobs = 1;
  std::string catalog = default_catalog, out, fixtures = std::string(PQS_DATA_DIR) + "/fixtures/tables.tsv";
  std::vector<std::string> only;
  SweepBounds bounds;
  bool require_free = false;

  auto* cls = app.add_subcommand("classify", "sweep the catalog for surfaces with the given K^2");
  cls->add_option("--k2", k2, "K^2 of the minimal resolution")->required();
  cls->add_option("--catalog", catalog, "group catalog file");
  cls->add_option("--group", only, "restrict to these groups (label or name); repeatable");
  cls->add_option("--max-order", bounds.max_order, "largest group order");
  cls->add_option("--max-r", bounds.max_r, "largest number of branch points");
  cls->add_option("--max-m", bounds.max_m, "largest branch multiplicity");
  cls->add_flag("--require-free", require_free, "keep only free actions");
  cls->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  cls->add_option("--out", out, "output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "re-run the pipeline on fixture rows");
  ver->add_option("--fixtures", fixtures, "fixture records");
  ver->add_option("--catalog", catalog, "group catalog file");
  ver->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string group, t1, t2, v1, v2;
  auto* inv = app.add_subcommand("invariants", "report on one configuration");
  inv->add_option("--group", group, "label such as G(60,5) or a catalog name")->required();
  inv->add_option("--t1", t1, "first signature, e.g. 2,5^2")->required();
  inv->add_option("--t2", t2, "second signature")->required();
  inv->add_option("--v1", v1, "explicit branch elements as 1-based image lists separated by ';'");
  inv->add_option("--v2", v2, "explicit branch elements for the second factor");
  inv->add_option("--catalog", catalog, "group catalog file");

  std::string cover_file;
  auto* cov = app.add_subcommand("cover", "validate building data or a Burniat line configuration");
  cov->add_option("file", cover_file, "building-data or lines file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cls) return run_classify(k2, catalog, only, bounds, require_free, jobs, out);
    if (*ver) return run_verify(fixtures, catalog, jobs);
    if (*inv) return run_invariants(catalog, group, t1, t2, v1, v2);
    if (*cov) return run_cover(cover_file);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RecordError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BuildingDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
