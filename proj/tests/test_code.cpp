#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "code.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "gf.hpp"

using batchcode::BatchCode;
using batchcode::code_from_string;
using batchcode::random_defaults;
using batchcode::read_code;
using batchcode::Errc;
using batchcode::Error;
using batchcode::Field;
using batchcode::GreedyOptions;
using batchcode::GreedyResult;
using batchcode::MultisetRequest;
using batchcode::NiceCollection;
using batchcode::RandomParams;
using batchcode::RecoveringSet;
using batchcode::Verdict;
using batchcode::VerifyMode;
using batchcode::VerifyOptions;

namespace {

// The certified worked-over-GF(3) code: three directions (two moment blocks
// plus the zero block), n = 27, r = 27.
BatchCode worked_code() {
  Field f(3);
  NiceCollection c = construction1(f, 1, {}, true);
  check_niceness(c);
  return build_explicit(c);
}

// Reference conflict degree, recomputed from the raw parity lists: for every
// ordered pair x != y and every simple set R of x, count the simple sets of
// y that share a position with R, and take the maximum.
uint32_t ref_conflict(const BatchCode& code) {
  auto sets_of = [&](uint32_t x) {
    std::vector<std::set<uint64_t>> out;
    for (uint64_t t = 0; t < code.r(); ++t) {
      const auto& supp = code.parities[t];
      if (!std::binary_search(supp.begin(), supp.end(), x)) continue;
      std::set<uint64_t> s;
      for (uint32_t v : supp)
        if (v != x) s.insert(v);
      s.insert(code.n + t);
      out.push_back(std::move(s));
    }
    return out;
  };
  uint32_t best = 0;
  for (uint32_t x = 0; x < code.n; ++x) {
    auto rx = sets_of(x);
    if (rx.empty()) continue;
    for (uint32_t y = 0; y < code.n; ++y) {
      if (y == x) continue;
      auto ry = sets_of(y);
      for (const auto& r : rx) {
        uint32_t cnt = 0;
        for (const auto& s : ry) {
          bool meets = false;
          for (uint64_t v : s)
            if (r.count(v)) {
              meets = true;
              break;
            }
          cnt += meets;
        }
        best = std::max(best, cnt);
      }
    }
  }
  return best;
}

// Reference multiset count C(n+k-1, k) built from Pascal's rule.
uint64_t ref_multiset_count(uint64_t n, uint32_t k) {
  std::vector<uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (uint64_t i = 1; i <= n - 1 + k; ++i)
    for (uint32_t j = std::min<uint64_t>(k, i); j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

template <typename Fn>
Errc thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidParams;
}

std::vector<uint32_t> positions(const RecoveringSet& s) { return s.positions; }

}  // namespace

TEST_CASE("code: worked example has the frozen shape") {
  BatchCode code = worked_code();
  CHECK(code.n == 27);
  CHECK(code.r() == 27);
  CHECK(code.length() == 54);
  CHECK(code.claimed_k() == 3);
  CHECK(code.meta_value("kind") == std::string("explicit"));
  CHECK(code.meta_value("q") == std::string("3"));
  CHECK(code.meta_value("L") == std::string("1"));
  // the parity over the coset {(0,1,2), (1,0,0), (2,2,1)} sits at index 14
  CHECK(code.parities[14] == std::vector<uint32_t>{5, 9, 25});
  for (const auto& supp : code.parities) {
    CHECK(supp.size() == 3);  // every coset of a line has q = 3 points
    CHECK(std::is_sorted(supp.begin(), supp.end()));
  }
}

TEST_CASE("code: symbol 5 has exactly the three worked recovering sets") {
  BatchCode code = worked_code();
  std::vector<RecoveringSet> sets = simple_recovering_sets(code, 5);
  REQUIRE(sets.size() == 3);
  CHECK(positions(sets[0]) == std::vector<uint32_t>{15, 19, 32});
  CHECK(positions(sets[1]) == std::vector<uint32_t>{9, 25, 41});
  CHECK(positions(sets[2]) == std::vector<uint32_t>{14, 23, 50});
  for (const RecoveringSet& s : sets) {
    CHECK(s.target == 5);
    CHECK(s.kind == RecoveringSet::Kind::Simple);
  }
}

TEST_CASE("code: recovering sets actually recover, on random codewords") {
  BatchCode code = worked_code();
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<uint8_t> info(code.n);
    for (auto& b : info) b = rng() & 1;
    std::vector<uint8_t> word = encode(code, info);
    REQUIRE(word.size() == code.length());
    for (uint64_t i = 0; i < code.n; ++i) CHECK(word[i] == info[i]);
    // every parity is the XOR of its support
    for (uint64_t t = 0; t < code.r(); ++t) {
      uint8_t x = 0;
      for (uint32_t v : code.parities[t]) x ^= info[v];
      CHECK(word[code.n + t] == x);
    }
    // every simple set of every symbol XORs back to the symbol
    for (uint32_t i = 0; i < code.n; ++i)
      for (const RecoveringSet& s : simple_recovering_sets(code, i)) {
        uint8_t x = 0;
        for (uint32_t p : s.positions) x ^= word[p];
        CHECK(x == info[i]);
      }
  }
}

TEST_CASE("code: encoding is XOR-linear") {
  BatchCode code = worked_code();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<uint8_t> a(code.n), b(code.n), c(code.n);
    for (uint64_t i = 0; i < code.n; ++i) {
      a[i] = rng() & 1;
      b[i] = rng() & 1;
      c[i] = a[i] ^ b[i];
    }
    std::vector<uint8_t> wa = encode(code, a), wb = encode(code, b), wc = encode(code, c);
    for (uint64_t i = 0; i < code.length(); ++i) CHECK(wc[i] == (wa[i] ^ wb[i]));
  }
  CHECK(thrown_code([&] { encode(code, std::vector<uint8_t>(5)); }) == Errc::LengthMismatch);
}

TEST_CASE("code: strictness and validity checks when building") {
  Field f(3);
  NiceCollection c = construction1(f, 1, {}, true);
  CHECK(thrown_code([&] { build_explicit(NiceCollection{f, 1, c.subspaces, {}}); }) ==
        Errc::UncertifiedCollection);
  BatchCode relaxed = build_explicit(NiceCollection{f, 1, c.subspaces, {}}, false);
  CHECK(relaxed.r() == 27);
  NiceCollection bad{f, 1, {c.subspaces[0], c.subspaces[0]}, c.certified};
  CHECK(thrown_code([&] { build_explicit(bad); }) == Errc::InvalidParams);
}

TEST_CASE("code: a single-block collection claims k = m when no coset conflicts exist") {
  Field f(4);
  NiceCollection c = construction1(f, 2);  // m = 1
  CHECK(check_niceness(c) == 0);
  BatchCode code = build_explicit(c);
  CHECK(code.n == 1024);       // 4^5
  CHECK(code.r() == 64);       // 4^3 cosets
  CHECK(code.claimed_k() == 1);
  CHECK(code.meta_value("L") == std::string("0"));
}

TEST_CASE("code: multiset requests parse and normalize") {
  MultisetRequest r = MultisetRequest::parse("5,5,9");
  REQUIRE(r.items.size() == 2);
  CHECK(r.items[0] == std::pair<uint32_t, uint32_t>{5, 2});
  CHECK(r.items[1] == std::pair<uint32_t, uint32_t>{9, 1});
  CHECK(r.total() == 3);
  MultisetRequest s = MultisetRequest::from_indices({9, 5, 5});
  CHECK(s.items == r.items);
  CHECK(thrown_code([] { MultisetRequest::parse(""); }) == Errc::ParseError);
  CHECK(thrown_code([] { MultisetRequest::parse("5,,9"); }) == Errc::ParseError);
  CHECK(thrown_code([] { MultisetRequest::parse("5,x"); }) == Errc::ParseError);
  CHECK(thrown_code([] { MultisetRequest::parse("5, 9"); }) == Errc::ParseError);
}

TEST_CASE("code: greedy serves the worked triple request") {
  BatchCode code = worked_code();
  GreedyResult res = greedy_assign(code, MultisetRequest::parse("5,5,5"));
  REQUIRE(res.ok());
  REQUIRE(res.assignment.size() == 3);
  CHECK(positions(res.assignment[0]) == std::vector<uint32_t>{15, 19, 32});
  CHECK(positions(res.assignment[1]) == std::vector<uint32_t>{9, 25, 41});
  CHECK(positions(res.assignment[2]) == std::vector<uint32_t>{14, 23, 50});
  // sets are pairwise disjoint
  std::set<uint32_t> used;
  for (const RecoveringSet& s : res.assignment)
    for (uint32_t p : s.positions) CHECK(used.insert(p).second);
}

TEST_CASE("code: greedy failure is reported with its shortfall") {
  BatchCode code = worked_code();
  GreedyResult res = greedy_assign(code, MultisetRequest::parse("5,5,5,5"));
  REQUIRE_FALSE(res.ok());
  CHECK(res.assignment.size() == 3);
  CHECK(res.failure->group == 0);
  CHECK(res.failure->target == 5);
  CHECK(res.failure->found == 3);
  CHECK(res.failure->needed == 4);

  GreedyOptions opts;
  opts.allow_singleton = true;
  GreedyResult res2 = greedy_assign(code, MultisetRequest::parse("5,5,5,5"), opts);
  REQUIRE(res2.ok());
  CHECK(res2.assignment.size() == 4);
  CHECK(res2.assignment[0].kind == RecoveringSet::Kind::Singleton);
  CHECK(positions(res2.assignment[0]) == std::vector<uint32_t>{5});
}

TEST_CASE("code: strict service avoids supports that touch other requested symbols") {
  BatchCode code = worked_code();
  GreedyOptions strict;
  strict.strict_paper = true;
  GreedyResult res = greedy_assign(code, MultisetRequest::parse("5,15"), strict);
  REQUIRE(res.ok());
  // the support {5, 15, 19} touches both requested symbols, so neither may
  // use the parity over it
  for (const RecoveringSet& s : res.assignment) CHECK(s.positions != std::vector<uint32_t>{15, 19, 32});
  CHECK(positions(res.assignment[0]) == std::vector<uint32_t>{9, 25, 41});

  GreedyResult loose = greedy_assign(code, MultisetRequest::parse("5,15"));
  REQUIRE(loose.ok());
  CHECK(positions(loose.assignment[0]) == std::vector<uint32_t>{15, 19, 32});
}

TEST_CASE("code: greedy validates its request") {
  BatchCode code = worked_code();
  CHECK(thrown_code([&] { greedy_assign(code, MultisetRequest::parse("27")); }) ==
        Errc::IndexOutOfRange);
  MultisetRequest unsorted;
  unsorted.items = {{9, 1}, {5, 1}};
  CHECK(thrown_code([&] { greedy_assign(code, unsorted); }) == Errc::InvalidParams);
}

TEST_CASE("code: simple-mode verification accepts the worked code up to k = 3") {
  BatchCode code = worked_code();
  VerifyOptions no_singleton;
  no_singleton.allow_singleton = false;
  for (uint32_t k : {1u, 2u, 3u}) {
    CAPTURE(k);
    Verdict v = verify_batch(code, k, VerifyMode::Simple, no_singleton);
    CHECK(v.holds == Verdict::Holds::True);
    CHECK(v.checked == ref_multiset_count(27, k));
  }
  CHECK(ref_multiset_count(27, 3) == 3654);
}

TEST_CASE("code: verification reports witnesses in lexicographic order") {
  BatchCode empty;
  empty.n = 4;  // no parities at all
  VerifyOptions opts;
  Verdict v1 = verify_batch(empty, 1, VerifyMode::Simple, opts);
  CHECK(v1.holds == Verdict::Holds::True);  // singletons cover k = 1
  Verdict v2 = verify_batch(empty, 2, VerifyMode::Simple, opts);
  CHECK(v2.holds == Verdict::Holds::Inconclusive);
  REQUIRE(v2.witness.has_value());
  CHECK(*v2.witness == std::vector<uint32_t>{0, 0});

  VerifyOptions no_singleton;
  no_singleton.allow_singleton = false;
  Verdict v3 = verify_batch(empty, 1, VerifyMode::Simple, no_singleton);
  CHECK(v3.holds == Verdict::Holds::Inconclusive);
  REQUIRE(v3.witness.has_value());
  CHECK(*v3.witness == std::vector<uint32_t>{0});

  Verdict v4 = verify_batch(empty, 2, VerifyMode::ExhaustiveSmall, opts);
  CHECK(v4.holds == Verdict::Holds::False);  // exhaustive gives a definite no
  REQUIRE(v4.witness.has_value());
  CHECK(*v4.witness == std::vector<uint32_t>{0, 0});
  Verdict v5 = verify_batch(empty, 1, VerifyMode::ExhaustiveSmall, opts);
  CHECK(v5.holds == Verdict::Holds::True);
}

TEST_CASE("code: exhaustive mode confirms simple-mode acceptance on a tiny code") {
  Field f(2);
  NiceCollection c = construction1(f, 1);  // m = 1, n = 8, r = 4
  check_niceness(c);
  BatchCode code = build_explicit(c);
  CHECK(code.length() == 12);
  for (uint32_t k : {1u, 2u}) {
    CAPTURE(k);
    Verdict simple = verify_batch(code, k, VerifyMode::Simple);
    Verdict full = verify_batch(code, k, VerifyMode::ExhaustiveSmall);
    if (simple.holds == Verdict::Holds::True) CHECK(full.holds == Verdict::Holds::True);
    CHECK(full.holds != Verdict::Holds::Inconclusive);
  }
}

TEST_CASE("code: verification guards its budgets and inputs") {
  BatchCode code = worked_code();
  VerifyOptions tiny;
  tiny.budget = 100;
  CHECK(thrown_code([&] { verify_batch(code, 3, VerifyMode::Simple, tiny); }) ==
        Errc::BudgetExceeded);
  CHECK(thrown_code([&] { verify_batch(code, 0, VerifyMode::Simple); }) == Errc::InvalidParams);
  CHECK(thrown_code([&] { verify_batch(code, 2, VerifyMode::ExhaustiveSmall); }) ==
        Errc::BudgetExceeded);  // N = 54 > 24
}

TEST_CASE("code: conflict degree matches the reference on small codes") {
  BatchCode two;
  two.n = 3;
  two.parities = {{0, 1}, {0, 1, 2}};
  CHECK(ref_conflict(two) == 2);
  CHECK(conflict_degree(two) == 2);

  BatchCode code = worked_code();
  CHECK(conflict_degree(code) == 1);
  CHECK(ref_conflict(code) == 1);

  Field f(2);
  NiceCollection c = construction1(f, 1);
  check_niceness(c);
  BatchCode small = build_explicit(c);
  CHECK(conflict_degree(small) == ref_conflict(small));

  CHECK(thrown_code([&] { conflict_degree(code, 1); }) == Errc::BudgetExceeded);
}

TEST_CASE("code: random sampling is deterministic and keeps whole lines at p1 = p2 = 1") {
  Field f(25);
  BatchCode a = build_random(f, 2, 42);
  BatchCode b = build_random(f, 2, 42);
  CHECK(code_to_string(a) == code_to_string(b));
  CHECK(a.meta_value("seed") == std::string("42"));
  CHECK(a.meta_value("kind") == std::string("random"));

  BatchCode full = build_random(f, 2, 7, 1.0, 1.0);
  batchcode::AffinePlane plane = affine_plane(f);
  REQUIRE(full.r() == plane.lines.size());
  for (size_t t = 0; t < plane.lines.size(); ++t) CHECK(full.parities[t] == plane.lines[t]);
}

TEST_CASE("code: random parameter defaults follow the sampling formulas") {
  RandomParams p3 = random_defaults(49, 3);
  CHECK(p3.p2 == doctest::Approx(1.0 / std::sqrt(24.0)).epsilon(1e-12));
  CHECK(p3.p1 == 1.0);  // the formula value 36*3^1.5*ln(2401)/49 is far above 1
  CHECK(p3.p1_clamped);

  RandomParams big = random_defaults(1 << 12, 2);  // n = 2^24 keeps the formula below 1
  CHECK_FALSE(big.p1_clamped);
  double n = 16777216.0;
  CHECK(big.p1 == doctest::Approx(36.0 * std::pow(2.0, 1.5) * std::log(n) / std::sqrt(n))
                      .epsilon(1e-12));

  CHECK(thrown_code([] { random_defaults(25, 2, 1.5, {}); }) == Errc::InvalidParams);
  CHECK(thrown_code([] { random_defaults(25, 2, {}, 0.0); }) == Errc::InvalidParams);
}

TEST_CASE("code: the sampling-regime gate is enforced but can be relaxed") {
  Field f8(8);
  CHECK(thrown_code([&] { build_random(f8, 1, 7); }) == Errc::InvalidParams);
  BatchCode code = build_random(f8, 1, 7, {}, {}, true);
  CHECK(code.n == 64);
  CHECK(code.meta_value("clamped") == std::string("1"));  // p1 formula is ~18.7 here
  Field f25(25);
  CHECK(thrown_code([&] { build_random(f25, 3, 1); }) == Errc::InvalidParams);  // 3 >= 25/12
}

TEST_CASE("code: files round-trip exactly for generated codes") {
  BatchCode code = worked_code();
  std::string text = code_to_string(code);
  CHECK(text.rfind("BATCHCODE v1 n=27 r=27\n", 0) == 0);
  BatchCode back = code_from_string(text);
  CHECK(back.n == code.n);
  CHECK(back.parities == code.parities);
  CHECK(back.meta == code.meta);
  CHECK(code_to_string(back) == text);

  Field f(25);
  BatchCode rnd = build_random(f, 2, 3);
  CHECK(code_from_string(code_to_string(rnd)).parities == rnd.parities);

  std::string path = "roundtrip_code.tmp";
  write_code(code, path);
  BatchCode from_file = read_code(path);
  CHECK(code_to_string(from_file) == text);
  std::remove(path.c_str());
  CHECK(thrown_code([] { read_code("does_not_exist.tmp"); }) == Errc::IoError);
}

TEST_CASE("code: imported files are deduplicated, generated kinds are not") {
  std::string imported =
      "BATCHCODE v1 n=4 r=3\n"
      "meta kind=handmade\n"
      "0 1\n"
      "0 1\n"
      "2 3\n";
  BatchCode code = code_from_string(imported);
  REQUIRE(code.r() == 2);  // duplicate support dropped, first occurrence kept
  CHECK(code.parities[0] == std::vector<uint32_t>{0, 1});
  CHECK(code.parities[1] == std::vector<uint32_t>{2, 3});

  std::string no_kind =
      "BATCHCODE v1 n=4 r=2\n"
      "meta source=manual\n"
      "0 1\n"
      "0 1\n";
  CHECK(code_from_string(no_kind).r() == 1);  // absent kind means imported

  std::string as_explicit =
      "BATCHCODE v1 n=4 r=2\n"
      "meta kind=explicit q=2 ell=1 m=1\n"
      "0 1\n"
      "0 1\n";
  CHECK(code_from_string(as_explicit).r() == 2);
}

TEST_CASE("code: the code parser rejects malformed input") {
  CHECK(thrown_code([] { code_from_string(""); }) == Errc::ParseError);
  CHECK(thrown_code([] { code_from_string("BATCH v1 n=4 r=0\n"); }) == Errc::ParseError);
  CHECK(thrown_code([] { code_from_string("BATCHCODE v1 n=4 r=1\n"); }) == Errc::ParseError);
  CHECK(thrown_code([] { code_from_string("BATCHCODE v1 n=4 r=1\n0 1\n"); }) ==
        Errc::ParseError);  // the meta line is not optional
  CHECK(thrown_code([] { code_from_string("BATCHCODE v1 n=4 r=1\nmeta kind=imported\n0 9\n"); }) ==
        Errc::ParseError);
  CHECK(thrown_code([] { code_from_string("BATCHCODE v1 n=4 r=1\nmeta kind=imported\n1 0\n"); }) ==
        Errc::ParseError);
  CHECK(thrown_code([] { code_from_string("BATCHCODE v1 n=4 r=1\nmeta kind=imported\n\n"); }) ==
        Errc::ParseError);
  CHECK(thrown_code([] { code_from_string("BATCHCODE v1 n=4 r=1\nmeta kind=imported\n0 1\njunk\n"); }) ==
        Errc::ParseError);
}

TEST_CASE("code: multiset counting matches Pascal and saturates") {
  for (uint64_t n : {1ull, 2ull, 5ull, 27ull})
    for (uint32_t k : {1u, 2u, 3u, 4u}) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(batchcode::multiset_count(n, k) == ref_multiset_count(n, k));
    }
  CHECK(batchcode::multiset_count(27, 3) == 3654);
  CHECK(batchcode::multiset_count(0, 2) == 0);
  CHECK(batchcode::multiset_count(5, 0) == 1);
  CHECK(batchcode::multiset_count(UINT64_MAX / 2, 40) == UINT64_MAX);  // saturated
}
