#include "geometry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace batchcode {

AffinePlane affine_plane(const Field& f) {
  uint32_t q = f.q();
  AffinePlane plane;
  plane.q = q;
  plane.lines.reserve(static_cast<size_t>(q) * q + q);
  for (Elem a = 0; a < q; ++a) {
    for (Elem b = 0; b < q; ++b) {
      std::vector<uint32_t> line;
      line.reserve(q);
      for (Elem x = 0; x < q; ++x) {
        Elem y = f.add(f.mul(a, x), b);
        line.push_back(x * q + y);
      }
      std::sort(line.begin(), line.end());
      plane.lines.push_back(std::move(line));
    }
  }
  for (Elem c = 0; c < q; ++c) {
    std::vector<uint32_t> line;
    line.reserve(q);
    for (Elem y = 0; y < q; ++y) line.push_back(c * q + y);
    plane.lines.push_back(std::move(line));
  }
  return plane;
}

NiceCollection construction1(const Field& f, uint32_t ell, std::optional<uint32_t> m_requested,
                             bool include_zero_block) {
  if (ell < 1) fail(Errc::InvalidParams, "ell must be at least 1");
  uint32_t q = f.q();
  uint32_t m = m_requested ? *m_requested : (q - 1) / ell;
  if (static_cast<uint64_t>(ell) * m > q - 1)
    fail(Errc::InvalidParams, "ell*m = " + std::to_string(static_cast<uint64_t>(ell) * m) +
                                  " exceeds the q-1 = " + std::to_string(q - 1) +
                                  " distinct evaluation points");
  uint32_t d = 2 * ell + 1;
  NiceCollection c{f, ell, {}, CertifiedL{ell, CertMethod::Claimed}};
  for (uint32_t i = 0; i < m; ++i) {
    std::vector<Vec> rows;
    for (uint32_t j = 0; j < ell; ++j) {
      Elem t = f.pow(f.alpha(), static_cast<int64_t>(ell) * i + j);
      Vec v(d);
      for (uint32_t e = 0; e < d; ++e) v[e] = f.pow(t, e);
      rows.push_back(std::move(v));
    }
    Subspace s(f, d, rows);
    if (s.dim() != ell) fail(Errc::InvalidParams, "degenerate moment block at i = " + std::to_string(i));
    c.subspaces.push_back(std::move(s));
  }
  if (include_zero_block) {
    if (ell != 1)
      fail(Errc::InvalidParams, "the zero block span{(1,0,...,0)} is one-dimensional; ell must be 1");
    Vec v(d, 0);
    v[0] = 1;
    c.subspaces.push_back(Subspace(f, d, {v}));
  }
  return c;
}

NiceCollection take_prefix(const NiceCollection& c, uint32_t m) {
  if (m > c.m()) fail(Errc::InvalidParams, "prefix larger than collection");
  NiceCollection out{c.field, c.ell, {c.subspaces.begin(), c.subspaces.begin() + m}, c.certified};
  return out;
}

bool check_pairwise(const NiceCollection& c) {
  for (const Subspace& s : c.subspaces)
    if (s.dim() != c.ell) return false;
  for (size_t i = 0; i < c.subspaces.size(); ++i)
    for (size_t j = i + 1; j < c.subspaces.size(); ++j)
      if (intersect(c.field, c.subspaces[i], c.subspaces[j]).dim() != 0) return false;
  return true;
}

uint32_t check_niceness(NiceCollection& c, uint64_t point_budget) {
  if (!check_pairwise(c)) fail(Errc::InvalidParams, "collection is not pairwise trivial");
  const Field& f = c.field;
  uint32_t d = c.ambient_dim();
  uint64_t total = 1;
  for (uint32_t i = 0; i < d; ++i) total *= f.q();
  if (total > point_budget)
    fail(Errc::BudgetExceeded, "q^(2*ell+1) = " + std::to_string(total) + " exceeds point budget");

  uint32_t l_star = 0;
  for (const Subspace& vi : c.subspaces) {
    for (const AffineSubspace& coset : cosets_of(f, vi)) {
      bool origin = std::all_of(coset.shift.begin(), coset.shift.end(), [](Elem e) { return e == 0; });
      if (origin) continue;  // that coset is V_i itself
      std::vector<Vec> pts = enumerate_coset(f, coset);
      uint32_t hits = 0;
      for (const Subspace& vj : c.subspaces) {
        for (const Vec& p : pts) {
          if (vj.contains(f, p)) {
            ++hits;
            break;
          }
        }
      }
      l_star = std::max(l_star, hits);
    }
  }
  c.certified = CertifiedL{l_star, CertMethod::BruteForce};
  return l_star;
}

namespace {

// Enumerate every ell-dim subspace of F_q^d as a canonical Subspace, by
// spanning all ell-tuples of nonzero vectors and deduplicating.
std::vector<Subspace> all_subspaces(const Field& f, uint32_t ell, uint32_t d, uint64_t guard) {
  uint64_t total = 1;
  for (uint32_t i = 0; i < d; ++i) total *= f.q();
  std::vector<Vec> nonzero;
  for (uint64_t idx = 1; idx < total; ++idx) nonzero.push_back(index_vector(f, d, idx));

  std::vector<Subspace> out;
  std::vector<size_t> pick(ell);
  uint64_t combos = 0;
  // iterate ell-combinations of nonzero vector indices
  for (uint32_t i = 0; i < ell; ++i) pick[i] = i;
  if (nonzero.size() < ell) return out;
  while (true) {
    if (++combos > guard) fail(Errc::BudgetExceeded, "candidate subspace enumeration over budget");
    std::vector<Vec> rows;
    for (size_t i : pick) rows.push_back(nonzero[i]);
    Subspace s(f, d, rows);
    if (s.dim() == ell && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    // next combination
    size_t i = ell;
    while (i-- > 0) {
      if (pick[i] + (ell - i) < nonzero.size()) {
        ++pick[i];
        for (size_t j = i + 1; j < ell; ++j) pick[j] = pick[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

struct NiceSearch {
  NiceSearch(const Field& field, uint32_t lvl, uint64_t budget)
      : f(field), level(lvl), node_budget(budget) {}

  const Field& f;
  uint32_t level;
  uint64_t node_budget;
  uint64_t nodes = 0;
  std::vector<Subspace> cand;
  // meets[a][c][b]: does off-origin coset c of candidate a intersect
  // candidate b?  trivial[a][b]: is the pairwise intersection {0}?
  std::vector<std::vector<std::vector<uint8_t>>> meets;
  std::vector<std::vector<uint8_t>> trivial;
  std::vector<std::vector<uint32_t>> counts;  // counts[a][c] over chosen members
  std::vector<uint32_t> chosen;
  std::vector<uint32_t> best;

  void prepare() {
    size_t k = cand.size();
    trivial.assign(k, std::vector<uint8_t>(k, 0));
    for (size_t a = 0; a < k; ++a)
      for (size_t b = 0; b < k; ++b)
        trivial[a][b] = a != b && intersect(f, cand[a], cand[b]).dim() == 0;
    meets.resize(k);
    counts.resize(k);
    for (size_t a = 0; a < k; ++a) {
      std::vector<std::vector<Vec>> off;
      for (const AffineSubspace& coset : cosets_of(f, cand[a])) {
        bool origin = std::all_of(coset.shift.begin(), coset.shift.end(), [](Elem e) { return e == 0; });
        if (!origin) off.push_back(enumerate_coset(f, coset));
      }
      meets[a].assign(off.size(), std::vector<uint8_t>(k, 0));
      counts[a].assign(off.size(), 0);
      for (size_t c = 0; c < off.size(); ++c)
        for (size_t b = 0; b < k; ++b)
          for (const Vec& p : off[c])
            if (cand[b].contains(f, p)) {
              meets[a][c][b] = 1;
              break;
            }
    }
  }

  bool can_add(uint32_t b) const {
    for (uint32_t a : chosen) {
      if (!trivial[a][b]) return false;
      for (size_t c = 0; c < counts[a].size(); ++c)
        if (counts[a][c] + meets[a][c][b] > level) return false;
    }
    for (size_t c = 0; c < meets[b].size(); ++c) {
      uint32_t cnt = 0;
      for (uint32_t a : chosen) cnt += meets[b][c][a];
      if (cnt > level) return false;
    }
    return true;
  }

  void add(uint32_t b) {
    for (uint32_t a : chosen)
      for (size_t c = 0; c < counts[a].size(); ++c) counts[a][c] += meets[a][c][b];
    for (size_t c = 0; c < counts[b].size(); ++c)
      for (uint32_t a : chosen) counts[b][c] += meets[b][c][a];
    chosen.push_back(b);
  }

  void remove() {
    uint32_t b = chosen.back();
    chosen.pop_back();
    for (uint32_t a : chosen)
      for (size_t c = 0; c < counts[a].size(); ++c) counts[a][c] -= meets[a][c][b];
    counts[b].assign(counts[b].size(), 0);
  }

  void dfs(uint32_t next) {
    if (++nodes > node_budget) fail(Errc::BudgetExceeded, "search node budget exhausted");
    if (chosen.size() > best.size()) best = chosen;
    for (uint32_t b = next; b < cand.size(); ++b) {
      if (chosen.size() + (cand.size() - b) <= best.size()) return;  // bound
      if (!can_add(b)) continue;
      add(b);
      dfs(b + 1);
      remove();
    }
  }
};

}  // namespace

MaxNiceResult max_nice_collection(const Field& f, uint32_t ell, uint32_t level, uint64_t node_budget) {
  if (ell < 1) fail(Errc::InvalidParams, "ell must be at least 1");
  uint32_t d = 2 * ell + 1;
  NiceSearch search(f, level, node_budget);
  search.cand = all_subspaces(f, ell, d, node_budget);
  search.prepare();
  search.dfs(0);
  NiceCollection witness{f, ell, {}, CertifiedL{level, CertMethod::BruteForce}};
  for (uint32_t b : search.best) witness.subspaces.push_back(search.cand[b]);
  return MaxNiceResult{static_cast<uint32_t>(search.best.size()), std::move(witness)};
}

std::string collection_to_string(const NiceCollection& c) {
  std::ostringstream out;
  out << "NICE v1 q=" << c.field.q() << " ell=" << c.ell << " m=" << c.m() << " L=";
  if (c.certified && c.certified->method == CertMethod::BruteForce)
    out << c.certified->level;
  else
    out << "unchecked";
  out << "\n";
  for (const Subspace& s : c.subspaces) {
    for (const Vec& row : s.basis()) {
      for (uint32_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
      out << "\n";
    }
  }
  return out.str();
}

namespace {

uint64_t parse_uint(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 18 || s.find_first_not_of("0123456789") != std::string::npos)
    fail(Errc::ParseError, "bad " + what + ": '" + s + "'");
  return std::stoull(s);
}

std::string expect_kv(std::istringstream& in, const std::string& key) {
  std::string tok;
  if (!(in >> tok) || tok.rfind(key + "=", 0) != 0)
    fail(Errc::ParseError, "expected '" + key + "=...' in header");
  return tok.substr(key.size() + 1);
}

}  // namespace

NiceCollection collection_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(Errc::ParseError, "empty collection file");
  std::istringstream head(line);
  std::string magic, version;
  head >> magic >> version;
  if (magic != "NICE" || version != "v1") fail(Errc::ParseError, "bad header, expected 'NICE v1'");
  uint32_t q = static_cast<uint32_t>(parse_uint(expect_kv(head, "q"), "q"));
  uint32_t ell = static_cast<uint32_t>(parse_uint(expect_kv(head, "ell"), "ell"));
  uint32_t m = static_cast<uint32_t>(parse_uint(expect_kv(head, "m"), "m"));
  std::string lstr = expect_kv(head, "L");

  Field f(q);
  if (ell < 1) fail(Errc::ParseError, "ell must be at least 1");
  uint32_t d = 2 * ell + 1;
  NiceCollection c{f, ell, {}, {}};
  if (lstr != "unchecked")
    c.certified = CertifiedL{static_cast<uint32_t>(parse_uint(lstr, "L")), CertMethod::BruteForce};

  for (uint32_t i = 0; i < m; ++i) {
    std::vector<Vec> rows;
    for (uint32_t j = 0; j < ell; ++j) {
      if (!std::getline(in, line)) fail(Errc::ParseError, "missing basis row for subspace " + std::to_string(i));
      std::istringstream ls(line);
      Vec v;
      std::string tok;
      while (ls >> tok) v.push_back(static_cast<Elem>(parse_uint(tok, "coordinate")));
      if (v.size() != d) fail(Errc::ParseError, "basis row has " + std::to_string(v.size()) +
                                                    " coordinates, expected " + std::to_string(d));
      for (Elem e : v)
        if (e >= q) fail(Errc::ParseError, "coordinate " + std::to_string(e) + " outside [0, q)");
      rows.push_back(std::move(v));
    }
    Subspace s(f, d, rows);
    if (s.dim() != ell)
      fail(Errc::ParseError, "subspace " + std::to_string(i) + " has dependent basis rows");
    c.subspaces.push_back(std::move(s));
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      fail(Errc::ParseError, "unexpected content after the last basis row");
  return c;
}

void write_collection(const NiceCollection& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
  out << collection_to_string(c);
  if (!out) fail(Errc::IoError, "write to " + path + " failed");
}

NiceCollection read_collection(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return collection_from_string(buf.str());
}

}  // namespace batchcode
