#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pqs/geometry.hpp"
#include "pqs/group.hpp"
#include "pqs/orbifold.hpp"

namespace pqs {

inline constexpr const char* kVersion = "0.1.0";

/// One output row: a family count for fixed (K^2, basket, T1, T2, G, H1).
struct ClassificationRecord {
  int k2 = 0;
  std::string basket = "-";
  std::string t1, t2;  // Signature text, or "mixed"
  GroupLabel group;
  std::string group_name;
  std::optional<int> n_families;  // nullopt prints as "?"
  std::string h1;
  std::set<std::string> flags;  // free, rdp-only, minimality-unverified, mixed-unsupported

  std::string to_line() const;
  /// Inverse of to_line; throws RecordError(0, ...) on malformed input.
  static ClassificationRecord parse_line(std::string_view line);

  bool mixed() const { return flags.count("mixed-unsupported") > 0; }
  /// Everything except N and flags.
  auto key() const { return std::tie(k2, basket, t1, t2, group, h1); }
  friend bool operator==(const ClassificationRecord&, const ClassificationRecord&) = default;
};

class RecordError : public std::runtime_error {
 public:
  RecordError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string record_header();
void write_records(std::ostream& out, const std::vector<ClassificationRecord>& records);
/// Skips '#' lines and blank lines.
std::vector<ClassificationRecord> read_records(std::istream& in);

/// Sort by group label, signatures, basket and H1; merge equal keys by adding N.
void normalize_records(std::vector<ClassificationRecord>& records);

struct SweepBounds {
  int max_order = 2000;
  int max_r = 6;
  int max_m = 12;
};

/// Genus-0 signatures with r <= max_r and m_i <= max_m among the element
/// orders of g, hyperbolic with integral Riemann-Hurwitz genus.
std::vector<Signature> candidate_signatures(const FiniteGroup& g, const SweepBounds& bounds);

/// Pairs t1 <= t2 of candidate signatures with k2/(2|G|) <= theta1 theta2 <= 4/|G|,
/// i.e. k2 <= K_X^2 <= 8.
std::vector<std::pair<Signature, Signature>> signature_pairs(const FiniteGroup& g, int k2,
                                                              const SweepBounds& bounds);

struct ClassifyOptions {
  int k2 = 8;
  SweepBounds bounds;
  bool require_free = false;
  int jobs = 1;
};

/// Reusable per-group data (vector sets, Hurwitz classes, automorphisms).
/// Safe to share between threads.
class ClassificationCache {
 public:
  ClassificationCache();
  ~ClassificationCache();
  ClassificationCache(const ClassificationCache&) = delete;
  ClassificationCache& operator=(const ClassificationCache&) = delete;

  struct Entry {
    VectorSet vectors;
    HurwitzClasses classes;
  };
  const Entry& vectors(const FiniteGroup& g, const Signature& sig);
  const std::optional<std::vector<Automorphism>>& automorphism_generators(const FiniteGroup& g);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Family records of one (G, T1, T2) with chi = 1 and K_S'^2 = k2. When
/// unordered is given it receives the family count with the factor swap
/// (equal signatures only; otherwise it equals the ordered count).
std::vector<ClassificationRecord> classify_pair(const FiniteGroup& g, const Signature& t1, const Signature& t2,
                                                int k2, bool require_free, ClassificationCache& cache,
                                                std::vector<std::optional<int>>* unordered = nullptr);

/// Full sweep over the catalog; output is sorted and independent of jobs.
std::vector<ClassificationRecord> classify(const GroupCatalog& catalog, const ClassifyOptions& options);
/// Same, reusing per-group data across calls; the catalog's groups must outlive the cache.
std::vector<ClassificationRecord> classify(const GroupCatalog& catalog, const ClassifyOptions& options,
                                           ClassificationCache& cache);

enum class VerifyStatus { pass, fail, unverifiable_mixed, unverifiable_missing_group };

struct VerifyResult {
  ClassificationRecord expected;  // after merging equal fixture rows
  VerifyStatus status = VerifyStatus::pass;
  std::vector<std::string> diffs;      // "field: expected X, got Y"
  std::optional<int> unordered_count;  // set when it differs from the ordered one
  std::string to_string() const;
};

std::vector<VerifyResult> verify(const std::vector<ClassificationRecord>& fixtures, const GroupCatalog& catalog,
                                 int jobs = 1);

}  // namespace pqs
