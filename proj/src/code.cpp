#include "code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace batchcode {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

uint64_t parse_uint(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 18 || s.find_first_not_of("0123456789") != std::string::npos)
    fail(Errc::ParseError, "bad " + what + ": '" + s + "'");
  return std::stoull(s);
}

}  // namespace

std::optional<std::string> BatchCode::meta_value(const std::string& key) const {
  std::istringstream in(meta);
  std::string tok;
  while (in >> tok) {
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  }
  return std::nullopt;
}

std::optional<uint64_t> BatchCode::claimed_k() const {
  auto v = meta_value("k");
  if (!v) return std::nullopt;
  return parse_uint(*v, "meta k");
}

BatchCode build_explicit(const NiceCollection& c, bool strict) {
  if (!c.certified && strict)
    fail(Errc::UncertifiedCollection, "collection has no certified level; check niceness first");
  if (!check_pairwise(c)) fail(Errc::InvalidParams, "collection is not pairwise trivial");

  const Field& f = c.field;
  uint32_t d = c.ambient_dim();
  uint64_t n = 1;
  for (uint32_t i = 0; i < d; ++i) {
    n *= f.q();
    if (n > (1u << 24)) fail(Errc::BudgetExceeded, "q^(2*ell+1) beyond enumeration scale");
  }

  BatchCode code;
  code.n = n;
  for (const Subspace& s : c.subspaces) {
    for (const AffineSubspace& coset : cosets_of(f, s)) {
      std::vector<uint32_t> supp;
      for (const Vec& p : enumerate_coset(f, coset)) supp.push_back(static_cast<uint32_t>(vector_index(f, p)));
      code.parities.push_back(std::move(supp));
    }
  }

  std::ostringstream meta;
  meta << "kind=explicit q=" << f.q() << " ell=" << c.ell << " m=" << c.m();
  if (c.certified) {
    uint32_t level = c.certified->level;
    uint64_t k = level > 0 ? c.m() / level : c.m();
    meta << " L=" << level << " cert=" << (c.certified->method == CertMethod::BruteForce ? "bruteforce" : "claimed")
         << " k=" << k;
  }
  meta << " basis=";
  for (size_t i = 0; i < c.subspaces.size(); ++i) {
    if (i) meta << "|";
    const auto& rows = c.subspaces[i].basis();
    for (size_t j = 0; j < rows.size(); ++j) {
      if (j) meta << ";";
      for (size_t e = 0; e < rows[j].size(); ++e) meta << (e ? "," : "") << rows[j][e];
    }
  }
  code.meta = meta.str();
  return code;
}

RandomParams random_defaults(uint32_t q, uint32_t k, std::optional<double> p1_override,
                             std::optional<double> p2_override) {
  if (k < 1) fail(Errc::InvalidParams, "k must be at least 1");
  double n = static_cast<double>(q) * q;
  RandomParams rp;
  rp.p2 = p2_override ? *p2_override : 1.0 / std::sqrt(8.0 * k);
  if (p1_override) {
    rp.p1 = *p1_override;
  } else {
    double formula = 36.0 * std::pow(k, 1.5) * std::log(n) / std::sqrt(n);
    rp.p1 = std::min(1.0, formula);
    rp.p1_clamped = formula > 1.0;
  }
  if (!(rp.p1 > 0.0 && rp.p1 <= 1.0)) fail(Errc::InvalidParams, "p1 must lie in (0, 1]");
  if (!(rp.p2 > 0.0 && rp.p2 <= 1.0)) fail(Errc::InvalidParams, "p2 must lie in (0, 1]");
  return rp;
}

BatchCode build_random(const Field& f, uint32_t k, uint64_t seed, std::optional<double> p1_override,
                       std::optional<double> p2_override, bool allow_large_k) {
  uint32_t q = f.q();
  if (!(k < q / 12.0) && !allow_large_k)
    fail(Errc::InvalidParams, "k >= q/12 leaves the sampling regime; enable allow_large_k to override");
  RandomParams rp = random_defaults(q, k, p1_override, p2_override);

  AffinePlane plane = affine_plane(f);
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return (rng() >> 11) * (1.0 / 9007199254740992.0); };

  BatchCode code;
  code.n = static_cast<uint64_t>(q) * q;
  for (const auto& line : plane.lines) {
    if (unit() >= rp.p1) continue;
    std::vector<uint32_t> supp;
    for (uint32_t pt : line)
      if (unit() < rp.p2) supp.push_back(pt);
    if (!supp.empty()) code.parities.push_back(std::move(supp));
  }

  std::ostringstream meta;
  meta << "kind=random q=" << q << " k=" << k << " p1=" << format_double(rp.p1)
       << " p2=" << format_double(rp.p2) << " seed=" << seed;
  if (rp.p1_clamped) meta << " clamped=1";
  code.meta = meta.str();
  return code;
}

std::vector<uint8_t> encode(const BatchCode& code, const std::vector<uint8_t>& info) {
  if (info.size() != code.n)
    fail(Errc::LengthMismatch, "information word has " + std::to_string(info.size()) +
                                   " bits, expected " + std::to_string(code.n));
  for (uint8_t b : info)
    if (b > 1) fail(Errc::InvalidParams, "information bits must be 0 or 1");
  std::vector<uint8_t> out(info);
  out.resize(code.length());
  for (size_t t = 0; t < code.parities.size(); ++t) {
    uint8_t bit = 0;
    for (uint32_t i : code.parities[t]) bit ^= info[i];
    out[code.n + t] = bit;
  }
  return out;
}

namespace {

// parity indices containing each information index, ascending
std::vector<std::vector<uint32_t>> incidence(const BatchCode& code) {
  std::vector<std::vector<uint32_t>> inc(code.n);
  for (uint32_t t = 0; t < code.parities.size(); ++t)
    for (uint32_t i : code.parities[t]) inc[i].push_back(t);
  return inc;
}

RecoveringSet make_simple(const BatchCode& code, uint32_t i, uint32_t t) {
  RecoveringSet s;
  s.target = i;
  s.kind = RecoveringSet::Kind::Simple;
  for (uint32_t v : code.parities[t])
    if (v != i) s.positions.push_back(v);
  s.positions.push_back(static_cast<uint32_t>(code.n + t));
  return s;
}

void validate_code(const BatchCode& code) {
  if (code.n == 0) fail(Errc::InvalidParams, "code has no information positions");
}

}  // namespace

std::vector<RecoveringSet> simple_recovering_sets(const BatchCode& code, uint32_t i) {
  validate_code(code);
  if (i >= code.n) fail(Errc::IndexOutOfRange, "information index out of range");
  std::vector<RecoveringSet> out;
  for (uint32_t t = 0; t < code.parities.size(); ++t) {
    const auto& supp = code.parities[t];
    if (std::binary_search(supp.begin(), supp.end(), i)) out.push_back(make_simple(code, i, t));
  }
  return out;
}

uint32_t MultisetRequest::total() const {
  uint32_t sum = 0;
  for (const auto& [i, k] : items) sum += k;
  return sum;
}

MultisetRequest MultisetRequest::from_indices(std::vector<uint32_t> indices) {
  if (indices.empty()) fail(Errc::InvalidParams, "empty request");
  std::sort(indices.begin(), indices.end());
  MultisetRequest req;
  for (uint32_t i : indices) {
    if (!req.items.empty() && req.items.back().first == i)
      ++req.items.back().second;
    else
      req.items.push_back({i, 1});
  }
  return req;
}

MultisetRequest MultisetRequest::parse(const std::string& text) {
  std::vector<uint32_t> indices;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ','))
    indices.push_back(static_cast<uint32_t>(parse_uint(tok, "request index")));
  if (indices.empty()) fail(Errc::ParseError, "empty request");
  return from_indices(std::move(indices));
}

GreedyResult greedy_assign(const BatchCode& code, const MultisetRequest& req, GreedyOptions opts) {
  validate_code(code);
  if (req.items.empty()) fail(Errc::InvalidParams, "empty request");
  std::vector<uint32_t> requested;
  for (const auto& [i, k] : req.items) {
    if (i >= code.n) fail(Errc::IndexOutOfRange, "requested index out of range");
    if (k < 1) fail(Errc::InvalidParams, "multiplicity must be at least 1");
    if (!requested.empty() && i <= requested.back())
      fail(Errc::InvalidParams, "request groups must have strictly increasing indices");
    requested.push_back(i);
  }

  // parities touching the requested targets only
  std::vector<std::vector<uint32_t>> sets_of(requested.size());
  for (uint32_t t = 0; t < code.parities.size(); ++t)
    for (uint32_t v : code.parities[t]) {
      auto it = std::lower_bound(requested.begin(), requested.end(), v);
      if (it != requested.end() && *it == v) sets_of[it - requested.begin()].push_back(t);
    }

  std::vector<uint8_t> used(code.length(), 0);
  GreedyResult res;
  for (size_t g = 0; g < req.items.size(); ++g) {
    auto [i, ki] = req.items[g];
    uint32_t found = 0;
    if (opts.allow_singleton && !used[i]) {
      RecoveringSet s;
      s.target = i;
      s.kind = RecoveringSet::Kind::Singleton;
      s.positions = {i};
      used[i] = 1;
      res.assignment.push_back(std::move(s));
      ++found;
    }
    for (uint32_t t : sets_of[g]) {
      if (found == ki) break;
      if (opts.strict_paper) {
        bool touches_other = false;
        for (uint32_t v : code.parities[t])
          if (v != i && std::binary_search(requested.begin(), requested.end(), v)) {
            touches_other = true;
            break;
          }
        if (touches_other) continue;
      }
      RecoveringSet s = make_simple(code, i, t);
      bool free = true;
      for (uint32_t p : s.positions)
        if (used[p]) {
          free = false;
          break;
        }
      if (!free) continue;
      for (uint32_t p : s.positions) used[p] = 1;
      res.assignment.push_back(std::move(s));
      ++found;
    }
    if (found < ki) {
      res.failure = GreedyFailure{static_cast<uint32_t>(g), i, found, ki};
      return res;
    }
  }
  return res;
}

uint64_t multiset_count(uint64_t n, uint32_t k) {
  if (n == 0) return k == 0 ? 1 : 0;
  unsigned __int128 acc = 1;
  for (uint32_t i = 1; i <= k; ++i) {
    acc = acc * (n - 1 + i) / i;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<uint64_t>(acc);
}

namespace {

// lex-order enumeration of non-decreasing k-tuples over [0, n)
bool next_multiset(std::vector<uint32_t>& ms, uint64_t n) {
  size_t pos = ms.size();
  while (pos-- > 0) {
    if (ms[pos] + 1 < n) {
      uint32_t v = ms[pos] + 1;
      for (size_t j = pos; j < ms.size(); ++j) ms[j] = v;
      return true;
    }
  }
  return false;
}

// Backtracking over per-copy candidate position sets; equal consecutive
// targets share one candidate list, so forcing their candidate ids to
// increase only prunes symmetric orderings.
bool place_copies(const std::vector<uint32_t>& targets,
                  const std::vector<const std::vector<std::vector<uint32_t>>*>& cands,
                  std::vector<uint8_t>& used, size_t j, size_t min_id) {
  if (j == targets.size()) return true;
  const auto& list = *cands[j];
  for (size_t id = min_id; id < list.size(); ++id) {
    const auto& pos = list[id];
    bool free = true;
    for (uint32_t p : pos)
      if (used[p]) {
        free = false;
        break;
      }
    if (!free) continue;
    for (uint32_t p : pos) used[p] = 1;
    bool same_next = j + 1 < targets.size() && targets[j + 1] == targets[j];
    bool done = place_copies(targets, cands, used, j + 1, same_next ? id + 1 : 0);
    for (uint32_t p : pos) used[p] = 0;
    if (done) return true;
  }
  return false;
}

Verdict verify_simple(const BatchCode& code, uint32_t k, const VerifyOptions& opts) {
  auto inc = incidence(code);
  Verdict verdict;
  std::vector<uint32_t> ms(k, 0);
  std::vector<uint8_t> used(code.length(), 0);
  do {
    ++verdict.checked;
    // candidate sets per distinct target in this multiset
    std::vector<uint32_t> distinct;
    for (uint32_t i : ms)
      if (distinct.empty() || distinct.back() != i) distinct.push_back(i);
    std::vector<std::vector<std::vector<uint32_t>>> lists(distinct.size());
    for (size_t d = 0; d < distinct.size(); ++d) {
      uint32_t i = distinct[d];
      if (opts.allow_singleton) lists[d].push_back({i});
      for (uint32_t t : inc[i]) {
        std::vector<uint32_t> pos;
        for (uint32_t v : code.parities[t])
          if (v != i) pos.push_back(v);
        pos.push_back(static_cast<uint32_t>(code.n + t));
        lists[d].push_back(std::move(pos));
      }
    }
    std::vector<const std::vector<std::vector<uint32_t>>*> cands(k);
    for (size_t j = 0, d = 0; j < k; ++j) {
      if (j > 0 && ms[j] != ms[j - 1]) ++d;
      cands[j] = &lists[d];
    }
    if (!place_copies(ms, cands, used, 0, 0)) {
      verdict.holds = Verdict::Holds::Inconclusive;
      verdict.witness = ms;
      return verdict;
    }
  } while (next_multiset(ms, code.n));
  verdict.holds = Verdict::Holds::True;
  return verdict;
}

bool place_masks(const std::vector<uint32_t>& targets,
                 const std::vector<const std::vector<uint32_t>*>& cands, uint32_t used, size_t j,
                 size_t min_id) {
  if (j == targets.size()) return true;
  const auto& list = *cands[j];
  for (size_t id = min_id; id < list.size(); ++id) {
    if (list[id] & used) continue;
    bool same_next = j + 1 < targets.size() && targets[j + 1] == targets[j];
    if (place_masks(targets, cands, used | list[id], j + 1, same_next ? id + 1 : 0)) return true;
  }
  return false;
}

Verdict verify_exhaustive(const BatchCode& code, uint32_t k, const VerifyOptions& opts) {
  uint32_t N = static_cast<uint32_t>(code.length());
  if (N > 24) fail(Errc::BudgetExceeded, "exhaustive mode needs N <= 24");
  uint32_t n = static_cast<uint32_t>(code.n);

  std::vector<uint32_t> col(N);
  for (uint32_t p = 0; p < n; ++p) col[p] = 1u << p;
  for (uint32_t t = 0; t < code.parities.size(); ++t) {
    uint32_t mask = 0;
    for (uint32_t i : code.parities[t]) mask |= 1u << i;
    col[n + t] = mask;
  }

  // every position subset whose column XOR is a unit vector, bucketed by
  // target; Gray-code walk keeps the running XOR incremental
  std::vector<std::vector<uint32_t>> buckets(n);
  uint64_t stored = 0;
  uint32_t cur = 0;
  for (uint32_t s = 1; s < (1u << N); ++s) {
    cur ^= col[std::countr_zero(s)];
    if (cur && (cur & (cur - 1)) == 0) {
      if (++stored > (1u << 22)) fail(Errc::BudgetExceeded, "too many recovering sets to tabulate");
      buckets[std::countr_zero(cur)].push_back(s ^ (s >> 1));
    }
  }
  for (auto& b : buckets)
    std::sort(b.begin(), b.end(), [](uint32_t a, uint32_t c) {
      return std::popcount(a) != std::popcount(c) ? std::popcount(a) < std::popcount(c) : a < c;
    });
  (void)opts;  // candidates already cover every recovering set, singletons included

  Verdict verdict;
  std::vector<uint32_t> ms(k, 0);
  do {
    ++verdict.checked;
    std::vector<const std::vector<uint32_t>*> cands(k);
    for (size_t j = 0; j < k; ++j) cands[j] = &buckets[ms[j]];
    if (!place_masks(ms, cands, 0, 0, 0)) {
      verdict.holds = Verdict::Holds::False;
      verdict.witness = ms;
      return verdict;
    }
  } while (next_multiset(ms, code.n));
  verdict.holds = Verdict::Holds::True;
  return verdict;
}

}  // namespace

Verdict verify_batch(const BatchCode& code, uint32_t k, VerifyMode mode, VerifyOptions opts) {
  validate_code(code);
  if (k < 1) fail(Errc::InvalidParams, "k must be at least 1");
  if (multiset_count(code.n, k) > opts.budget)
    fail(Errc::BudgetExceeded, "multiset count exceeds budget");
  return mode == VerifyMode::Simple ? verify_simple(code, k, opts) : verify_exhaustive(code, k, opts);
}

uint32_t conflict_degree(const BatchCode& code, uint64_t work_budget) {
  validate_code(code);
  auto inc = incidence(code);
  uint64_t touches = 0;
  for (const auto& supp : code.parities) touches += supp.size();
  if (touches > 2'000'000'000ull || touches * touches > work_budget)
    fail(Errc::BudgetExceeded, "conflict degree scan exceeds work budget");

  uint32_t best = 0;
  for (uint32_t x = 0; x < code.n; ++x) {
    for (uint32_t t : inc[x]) {
      const auto& st = code.parities[t];
      for (uint32_t y = 0; y < code.n; ++y) {
        if (y == x || inc[y].empty()) continue;
        uint32_t cnt = 0;
        for (uint32_t u : inc[y]) {
          if (u == t) {
            ++cnt;  // shared parity position
            continue;
          }
          const auto& su = code.parities[u];
          size_t a = 0, b = 0;
          while (a < st.size() && b < su.size()) {
            if (st[a] == su[b]) {
              if (st[a] != x && st[a] != y) {
                ++cnt;
                break;
              }
              ++a;
              ++b;
            } else if (st[a] < su[b]) {
              ++a;
            } else {
              ++b;
            }
          }
        }
        best = std::max(best, cnt);
      }
    }
  }
  return best;
}

std::string code_to_string(const BatchCode& code) {
  std::ostringstream out;
  out << "BATCHCODE v1 n=" << code.n << " r=" << code.r() << "\n";
  out << "meta" << (code.meta.empty() ? "" : " ") << code.meta << "\n";
  for (const auto& supp : code.parities) {
    for (size_t i = 0; i < supp.size(); ++i) out << (i ? " " : "") << supp[i];
    out << "\n";
  }
  return out.str();
}

BatchCode code_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(Errc::ParseError, "empty code file");
  std::istringstream head(line);
  std::string magic, version, ntok, rtok;
  head >> magic >> version >> ntok >> rtok;
  if (magic != "BATCHCODE" || version != "v1" || ntok.rfind("n=", 0) != 0 || rtok.rfind("r=", 0) != 0)
    fail(Errc::ParseError, "bad header, expected 'BATCHCODE v1 n=<n> r=<r>'");
  BatchCode code;
  code.n = parse_uint(ntok.substr(2), "n");
  uint64_t r = parse_uint(rtok.substr(2), "r");
  if (code.n == 0) fail(Errc::ParseError, "n must be positive");

  if (!std::getline(in, line)) fail(Errc::ParseError, "missing meta line");
  if (line != "meta" && line.rfind("meta ", 0) != 0) fail(Errc::ParseError, "second line must start with 'meta'");
  code.meta = line.size() > 5 ? line.substr(5) : "";

  for (uint64_t t = 0; t < r; ++t) {
    if (!std::getline(in, line)) fail(Errc::ParseError, "missing support line " + std::to_string(t));
    std::istringstream ls(line);
    std::vector<uint32_t> supp;
    std::string tok;
    while (ls >> tok) supp.push_back(static_cast<uint32_t>(parse_uint(tok, "support index")));
    if (supp.empty()) fail(Errc::ParseError, "empty support at line " + std::to_string(t + 3));
    for (size_t i = 0; i < supp.size(); ++i) {
      if (supp[i] >= code.n) fail(Errc::ParseError, "support index out of range at line " + std::to_string(t + 3));
      if (i > 0 && supp[i] <= supp[i - 1])
        fail(Errc::ParseError, "support not strictly increasing at line " + std::to_string(t + 3));
    }
    code.parities.push_back(std::move(supp));
  }
  while (std::getline(in, line))
    if (!line.empty()) fail(Errc::ParseError, "trailing content after " + std::to_string(r) + " support lines");

  auto kind = code.meta_value("kind");
  if (!kind || (*kind != "explicit" && *kind != "random")) {
    // imported codes: drop duplicate supports, first occurrence wins
    std::set<std::vector<uint32_t>> seen;
    std::vector<std::vector<uint32_t>> unique;
    for (auto& supp : code.parities)
      if (seen.insert(supp).second) unique.push_back(std::move(supp));
    code.parities = std::move(unique);
  }
  return code;
}

void write_code(const BatchCode& code, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
  out << code_to_string(code);
  if (!out) fail(Errc::IoError, "write to " + path + " failed");
}

BatchCode read_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return code_from_string(buf.str());
}

}  // namespace batchcode
