#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace batchcode {

// Systematic binary code of length N = n + r: positions [0, n) carry the
// information bits, position n + t carries the parity XOR of parities[t].
// Supports are sorted, nonempty, strictly inside [0, n).  `meta` is a single
// line of provenance key=value pairs preserved verbatim by the file format.
struct BatchCode {
  uint64_t n = 0;
  std::vector<std::vector<uint32_t>> parities;
  std::string meta;

  uint64_t r() const { return parities.size(); }
  uint64_t length() const { return n + parities.size(); }
  std::optional<std::string> meta_value(const std::string& key) const;
  std::optional<uint64_t> claimed_k() const;  // "k=..." from meta, if present
};

// One parity per coset of each member, members in collection order, cosets
// in canonical-shift order, so r = m * q^(ell+1).  The claimed availability
// floor(m / level) is recorded in meta (level 0 only happens for m <= 1,
// where every request up to m is trivially served; the claim falls back to
// m).  strict refuses an uncertified collection.
BatchCode build_explicit(const NiceCollection& c, bool strict = true);

// Line/point sampling over AG(2,q): each line is kept with probability p1;
// each point of a kept line is kept with probability p2; nonempty sampled
// subsets become parities in plane line order.  Defaults: p2 = 1/sqrt(8k),
// p1 = min(1, 36 * k^1.5 * ln(n) / sqrt(n)) with n = q^2.  Deterministic for
// a given seed: one mt19937_64 stream, line draw first, then its point
// draws in point order.
struct RandomParams {
  double p1 = 0, p2 = 0;
  bool p1_clamped = false;
};
RandomParams random_defaults(uint32_t q, uint32_t k, std::optional<double> p1_override = {},
                             std::optional<double> p2_override = {});
BatchCode build_random(const Field& f, uint32_t k, uint64_t seed,
                       std::optional<double> p1_override = {}, std::optional<double> p2_override = {},
                       bool allow_large_k = false);

std::vector<uint8_t> encode(const BatchCode& code, const std::vector<uint8_t>& info);

struct RecoveringSet {
  enum class Kind { Simple, Singleton };
  uint32_t target = 0;
  Kind kind = Kind::Simple;
  std::vector<uint32_t> positions;  // sorted; Simple: one parity position plus
                                    // its support minus the target;
                                    // Singleton: just {target}
};

// In parity-index order, one set per parity whose support contains i.
std::vector<RecoveringSet> simple_recovering_sets(const BatchCode& code, uint32_t i);

// Multiset of information indices, kept as (index, multiplicity) groups with
// strictly increasing indices.
struct MultisetRequest {
  std::vector<std::pair<uint32_t, uint32_t>> items;
  uint32_t total() const;
  static MultisetRequest from_indices(std::vector<uint32_t> indices);
  static MultisetRequest parse(const std::string& text);  // "5,5,9"
};

struct GreedyOptions {
  bool allow_singleton = false;
  bool strict_paper = false;  // simple sets must also avoid every other requested index
};

struct GreedyFailure {
  uint32_t group = 0;   // position in items
  uint32_t target = 0;
  uint32_t found = 0;
  uint32_t needed = 0;
};

struct GreedyResult {
  std::vector<RecoveringSet> assignment;
  std::optional<GreedyFailure> failure;
  bool ok() const { return !failure.has_value(); }
};

// Groups in index order; within a group the singleton (if enabled and the
// target position is still free) is taken first, then simple sets in parity
// order, keeping each set disjoint from everything chosen so far.
GreedyResult greedy_assign(const BatchCode& code, const MultisetRequest& req, GreedyOptions opts = {});

enum class VerifyMode { Simple, ExhaustiveSmall };

struct VerifyOptions {
  bool allow_singleton = true;
  uint64_t budget = 10'000'000;  // max multisets enumerated
};

struct Verdict {
  enum class Holds { True, False, Inconclusive };
  Holds holds = Holds::Inconclusive;
  std::optional<std::vector<uint32_t>> witness;  // first failing multiset, lex order
  uint64_t checked = 0;
};

// Enumerates every size-k multiset of information indices in lex order and
// backtracks over candidate recovering sets per copy.
//   Simple mode: candidates are the singleton (if allowed) and the simple
//   sets; failure is one-sided, so the verdict is True or Inconclusive.
//   ExhaustiveSmall (N <= 24): candidates are all position subsets whose
//   column XOR is the target's unit vector — allow_singleton is ignored, the
//   search is complete, and the verdict is True or False with a witness.
Verdict verify_batch(const BatchCode& code, uint32_t k, VerifyMode mode, VerifyOptions opts = {});

// Max over ordered pairs x != y and simple sets R of x of the number of
// simple sets of y meeting R.
uint32_t conflict_degree(const BatchCode& code, uint64_t work_budget = 10'000'000'000ull);

// Text format: "BATCHCODE v1 n=<n> r=<r>", then "meta <pairs>", then r
// sorted support lines.  Codes whose meta kind is neither explicit nor
// random are treated as imported: duplicate supports are dropped, keeping
// first occurrences.  Generated codes round-trip verbatim.
std::string code_to_string(const BatchCode& code);
BatchCode code_from_string(const std::string& text);
void write_code(const BatchCode& code, const std::string& path);
BatchCode read_code(const std::string& path);

// C(n + k - 1, k), saturating at UINT64_MAX.
uint64_t multiset_count(uint64_t n, uint32_t k);

}  // namespace batchcode
