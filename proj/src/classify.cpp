#include "pqs/classify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <functional>
#include <future>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "pqs/pi1.hpp"

namespace pqs {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_field_int(const std::string& s, const char* field) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw RecordError(0, std::string("bad ") + field + ": '" + s + "'");
  }
  return v;
}

const std::set<std::string>& known_flags() {
  static const std::set<std::string> f{"free", "rdp-only", "minimality-unverified", "mixed-unsupported"};
  return f;
}

// Runs body(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace

RecordError::RecordError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "record line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::string ClassificationRecord::to_line() const {
  std::ostringstream out;
  out << k2 << '\t' << basket << '\t' << t1 << '\t' << t2 << '\t' << group.order << '\t' << group.index << '\t'
      << group_name << '\t' << (n_families ? std::to_string(*n_families) : "?") << '\t'
      << (h1.empty() ? "-" : h1) << '\t';
  if (flags.empty()) {
    out << '-';
  } else {
    bool first = true;
    for (const auto& f : flags) {
      out << (first ? "" : ",") << f;
      first = false;
    }
  }
  return out.str();
}

ClassificationRecord ClassificationRecord::parse_line(std::string_view line) {
  const auto f = split(line, '\t');
  if (f.size() != 10) throw RecordError(0, "expected 10 tab-separated fields, got " + std::to_string(f.size()));
  ClassificationRecord r;
  r.k2 = parse_field_int(f[0], "k2");
  r.basket = f[1];
  if (r.basket != "-") {
    try {
      r.basket = basket_to_string(parse_basket(r.basket));
    } catch (const std::exception& e) {
      throw RecordError(0, std::string("bad basket: ") + e.what());
    }
  }
  r.t1 = f[2];
  r.t2 = f[3];
  for (std::string* t : {&r.t1, &r.t2}) {
    if (*t == "mixed") continue;
    try {
      *t = Signature::parse(*t).to_string();
    } catch (const std::exception& e) {
      throw RecordError(0, std::string("bad signature: ") + e.what());
    }
  }
  r.group = {parse_field_int(f[4], "order"), parse_field_int(f[5], "index")};
  r.group_name = f[6];
  if (f[7] != "?") r.n_families = parse_field_int(f[7], "N");
  r.h1 = f[8] == "-" ? "" : f[8];
  if (!r.h1.empty()) {
    try {
      r.h1 = AbelianInvariants::parse(r.h1).to_string();
    } catch (const std::exception& e) {
      throw RecordError(0, std::string("bad H1: ") + e.what());
    }
  }
  if (f[9] != "-") {
    for (const auto& flag : split(f[9], ',')) {
      if (!known_flags().count(flag)) throw RecordError(0, "unknown flag '" + flag + "'");
      r.flags.insert(flag);
    }
  }
  return r;
}

std::string record_header() {
  return std::string("# pqs ") + kVersion + "\n# k2\tbasket\tt1\tt2\torder\tindex\tname\tn\th1\tflags";
}

void write_records(std::ostream& out, const std::vector<ClassificationRecord>& records) {
  out << record_header() << '\n';
  for (const auto& r : records) out << r.to_line() << '\n';
}

std::vector<ClassificationRecord> read_records(std::istream& in) {
  std::vector<ClassificationRecord> out;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    try {
      out.push_back(ClassificationRecord::parse_line(line));
    } catch (const RecordError& e) {
      throw RecordError(lineno, e.what());
    }
  }
  return out;
}

void normalize_records(std::vector<ClassificationRecord>& records) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
  std::vector<ClassificationRecord> merged;
  for (auto& r : records) {
    if (!merged.empty() && merged.back().key() == r.key()) {
      auto& m = merged.back();
      m.n_families = m.n_families && r.n_families ? std::optional<int>(*m.n_families + *r.n_families)
                                                  : std::nullopt;
      m.flags.insert(r.flags.begin(), r.flags.end());
    } else {
      merged.push_back(std::move(r));
    }
  }
  records = std::move(merged);
}

std::vector<Signature> candidate_signatures(const FiniteGroup& g, const SweepBounds& bounds) {
  std::vector<int> orders;
  for (int m : g.element_orders())
    if (m <= bounds.max_m) orders.push_back(m);
  std::vector<Signature> out;
  std::vector<int> m;
  // nondecreasing multisets of the allowed orders
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (m.size() >= 3) {
      const Signature s(0, m);
      if (s.theta() > 0 && rh_genus(g.order(), s).hyperbolic()) out.push_back(s);
    }
    if (static_cast<int>(m.size()) == bounds.max_r) return;
    for (std::size_t k = from; k < orders.size(); ++k) {
      m.push_back(orders[k]);
      extend(k);
      m.pop_back();
    }
  };
  extend(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Signature, Signature>> signature_pairs(const FiniteGroup& g, int k2,
                                                              const SweepBounds& bounds) {
  std::vector<std::pair<Signature, Signature>> out;
  if (g.order() > bounds.max_order) return out;
  const auto sigs = candidate_signatures(g, bounds);
  const Rational lo(k2, 2 * g.order()), hi(4, g.order());
  std::vector<Rational> theta;
  for (const auto& s : sigs) theta.push_back(s.theta());
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    for (std::size_t j = i; j < sigs.size(); ++j) {
      const Rational p = theta[i] * theta[j];
      if (p >= lo && p <= hi) out.emplace_back(sigs[i], sigs[j]);
    }
  }
  return out;
}

struct ClassificationCache::Impl {
  std::mutex mutex;
  std::map<std::pair<const FiniteGroup*, Signature>, std::shared_future<std::shared_ptr<Entry>>> vectors;
  std::map<const FiniteGroup*, std::shared_future<std::shared_ptr<std::optional<std::vector<Automorphism>>>>>
      automorphisms;
};

ClassificationCache::ClassificationCache() : impl_(std::make_unique<Impl>()) {}
ClassificationCache::~ClassificationCache() = default;

namespace {

// Computes the value once per key; concurrent callers wait for the first.
template <class Map, class Key, class Make>
auto& cached(std::mutex& mutex, Map& map, const Key& key, Make make) {
  using Ptr = std::decay_t<decltype(std::declval<typename Map::mapped_type>().get())>;
  std::promise<Ptr> promise;
  typename Map::mapped_type future;
  bool owner = false;
  {
    const std::lock_guard lock(mutex);
    auto it = map.find(key);
    if (it == map.end()) {
      future = promise.get_future().share();
      map.emplace(key, future);
      owner = true;
    } else {
      future = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(make());
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return *future.get();
}

}  // namespace

const ClassificationCache::Entry& ClassificationCache::vectors(const FiniteGroup& g, const Signature& sig) {
  return cached(impl_->mutex, impl_->vectors, std::make_pair(&g, sig), [&] {
    auto vs = enumerate_generating_vectors(g, sig);
    auto classes = hurwitz_classes(vs);
    return std::make_shared<Entry>(Entry{std::move(vs), std::move(classes)});
  });
}

const std::optional<std::vector<Automorphism>>& ClassificationCache::automorphism_generators(const FiniteGroup& g) {
  return cached(impl_->mutex, impl_->automorphisms, &g, [&] {
    auto all = automorphisms(g);
    std::optional<std::vector<Automorphism>> gens;
    if (all.computed()) gens = pqs::automorphism_generators(g, *all.maps);
    return std::make_shared<std::optional<std::vector<Automorphism>>>(std::move(gens));
  });
}

std::vector<ClassificationRecord> classify_pair(const FiniteGroup& g, const Signature& t1, const Signature& t2,
                                                int k2, bool require_free, ClassificationCache& cache,
                                                std::vector<std::optional<int>>* unordered) {
  const auto& e1 = cache.vectors(g, t1);
  const auto& e2 = cache.vectors(g, t2);
  if (e1.vectors.size() == 0 || e2.vectors.size() == 0) {
    if (unordered) unordered->clear();
    return {};
  }
  const auto& auts = cache.automorphism_generators(g);
  const auto orbits = hurwitz_orbits(e1.vectors, e1.classes, e2.vectors, e2.classes, false, auts);

  // Without automorphisms every class pair stands alone and N is unknown.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> groups = orbits.orbits;
  if (!orbits.computed) {
    groups.clear();
    for (std::size_t a = 0; a < e1.classes.count(); ++a)
      for (std::size_t b = 0; b < e2.classes.count(); ++b) groups.push_back({{a, b}});
  }

  std::vector<ClassificationRecord> out;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> record_of;  // class pair -> index in out
  for (const auto& orbit : groups) {
    const auto [a, b] = orbit.front();
    const std::size_t i1 = e1.classes.representatives[a], i2 = e2.classes.representatives[b];
    const auto inv = surface_invariants(g, e1.vectors.branch(i1), e2.vectors.branch(i2));
    if (!inv.integral || inv.chi != 1 || inv.ks2 != k2) continue;
    if (require_free && !inv.free) continue;
    ClassificationRecord r;
    r.k2 = k2;
    r.basket = basket_to_string(inv.basket);
    r.t1 = t1.to_string();
    r.t2 = t2.to_string();
    r.group = g.label();
    r.group_name = g.name();
    if (orbits.computed) r.n_families = 1;
    r.h1 = first_homology(g, e1.vectors.at(i1), e2.vectors.at(i2)).to_string();
    if (inv.free) r.flags.insert("free");
    if (!inv.basket.empty() && inv.rdp_only) r.flags.insert("rdp-only");
    if (inv.minimality_unverified) r.flags.insert("minimality-unverified");
    for (const auto& p : orbit) record_of[p] = out.size();
    out.push_back(std::move(r));
  }
  auto keys = out;
  normalize_records(out);

  if (unordered) {
    unordered->assign(out.size(), std::nullopt);
    if (!orbits.computed) return out;
    if (t1 != t2) {
      for (std::size_t i = 0; i < out.size(); ++i) (*unordered)[i] = out[i].n_families;
      return out;
    }
    const auto swapped = hurwitz_orbits(e1.vectors, e1.classes, e2.vectors, e2.classes, true, auts);
    std::map<std::size_t, int> count;  // index in `keys`
    for (const auto& orbit : swapped.orbits) {
      const auto it = record_of.find(orbit.front());
      if (it != record_of.end()) ++count[it->second];
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      int n = 0;
      for (const auto& [k, c] : count)
        if (keys[k].key() == out[i].key()) n += c;
      (*unordered)[i] = n;
    }
  }
  return out;
}

std::vector<ClassificationRecord> classify(const GroupCatalog& catalog, const ClassifyOptions& options) {
  ClassificationCache cache;
  return classify(catalog, options, cache);
}

std::vector<ClassificationRecord> classify(const GroupCatalog& catalog, const ClassifyOptions& options,
                                           ClassificationCache& cache) {
  if (options.bounds.max_order < 2) throw std::invalid_argument("max_order must be at least 2");
  if (options.k2 < 1 || options.k2 > 8) throw std::invalid_argument("k2 must lie in [1, 8]");

  struct Task {
    const FiniteGroup* group;
    Signature t1, t2;
  };
  std::vector<Task> tasks;
  for (const auto& g : catalog.groups()) {
    for (auto& [t1, t2] : signature_pairs(*g, options.k2, options.bounds)) tasks.push_back({g.get(), t1, t2});
  }
  std::vector<std::vector<ClassificationRecord>> results(tasks.size());
  parallel_for(tasks.size(), options.jobs, [&](std::size_t i) {
    const auto& t = tasks[i];
    results[i] = classify_pair(*t.group, t.t1, t.t2, options.k2, options.require_free, cache);
  });
  std::vector<ClassificationRecord> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  normalize_records(out);
  return out;
}

std::string VerifyResult::to_string() const {
  std::string s;
  switch (status) {
    case VerifyStatus::pass: s = "PASS"; break;
    case VerifyStatus::fail: s = "FAIL"; break;
    case VerifyStatus::unverifiable_mixed: s = "UNVERIFIABLE (mixed)"; break;
    case VerifyStatus::unverifiable_missing_group: s = "UNVERIFIABLE (group not in catalog)"; break;
  }
  s += "  K2=" + std::to_string(expected.k2) + " " + expected.basket + " " + expected.t1 + " / " + expected.t2 +
       " " + expected.group_name + " G(" + std::to_string(expected.group.order) + "," +
       std::to_string(expected.group.index) + ")";
  for (const auto& d : diffs) s += "\n    " + d;
  if (unordered_count) s += "\n    note: N with factor swap = " + std::to_string(*unordered_count);
  return s;
}

std::vector<VerifyResult> verify(const std::vector<ClassificationRecord>& fixtures, const GroupCatalog& catalog,
                                 int jobs) {
  // canonical signature order, then merge rows that agree on every key field
  std::vector<ClassificationRecord> rows = fixtures;
  for (auto& r : rows) {
    if (!r.mixed() && Signature::parse(r.t2) < Signature::parse(r.t1)) std::swap(r.t1, r.t2);
  }
  normalize_records(rows);

  std::vector<VerifyResult> out(rows.size());
  ClassificationCache cache;
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    auto& res = out[i];
    const auto& want = rows[i];
    res.expected = want;
    if (want.mixed()) {
      res.status = VerifyStatus::unverifiable_mixed;
      return;
    }
    const auto g = catalog.find(want.group);
    if (!g) {
      res.status = VerifyStatus::unverifiable_missing_group;
      return;
    }
    std::vector<std::optional<int>> unordered;
    const auto got = classify_pair(*g, Signature::parse(want.t1), Signature::parse(want.t2), want.k2, false, cache,
                                   &unordered);
    std::vector<std::size_t> same_basket;
    for (std::size_t k = 0; k < got.size(); ++k)
      if (got[k].basket == want.basket) same_basket.push_back(k);
    if (same_basket.empty()) {
      std::string found;
      for (const auto& r : got) found += (found.empty() ? "" : "; ") + r.basket;
      res.diffs.push_back("basket: expected " + want.basket + ", got " + (found.empty() ? "no surface" : found));
    } else {
      std::optional<std::size_t> match;
      std::string h1s;
      for (std::size_t k : same_basket) {
        h1s += (h1s.empty() ? "" : "; ") + got[k].h1;
        if (got[k].h1 == want.h1) match = k;
      }
      if (!match) {
        res.diffs.push_back("h1: expected " + want.h1 + ", got " + h1s);
      } else {
        const auto& r = got[*match];
        if (want.n_families && r.n_families != want.n_families) {
          res.diffs.push_back("n: expected " + std::to_string(*want.n_families) + ", got " +
                              (r.n_families ? std::to_string(*r.n_families) : "?"));
        }
        if (unordered[*match] && unordered[*match] != r.n_families) res.unordered_count = unordered[*match];
      }
    }
    res.status = res.diffs.empty() ? VerifyStatus::pass : VerifyStatus::fail;
  });
  return out;
}

}  // namespace pqs
