// Command-line front end.  Talks to the library exclusively through the C
// API; everything here is argument handling and printing.
//
// Exit codes: 0 success / property holds, 2 usage or precondition error,
// 3 verification or assignment failure, 4 budget exceeded.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "batchcode.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailed = 3;
constexpr int kExitBudget = 4;

int exit_code_for(bc_status st) { return st == BC_ERR_BUDGET_EXCEEDED ? kExitBudget : kExitUsage; }

int report_error(bc_status st) {
  std::fprintf(stderr, "error: %s (%s)\n", bc_last_error(), bc_status_name(st));
  return exit_code_for(st);
}

int usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return kExitUsage;
}

template <typename T, void (*Destroy)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Destroy(p);
  }
  T** out() { return &p; }
  operator T*() const { return p; }
};

using FieldH = Handle<bc_field, bc_field_destroy>;
using CollH = Handle<bc_collection, bc_collection_destroy>;
using CodeH = Handle<bc_code, bc_code_destroy>;
using AssignH = Handle<bc_assignment, bc_assignment_destroy>;
using VerdictH = Handle<bc_verdict, bc_verdict_destroy>;

struct CString {
  char* p = nullptr;
  CString() = default;
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  ~CString() { bc_string_free(p); }
  char** out() { return &p; }
};

uint64_t ipow_u64(uint64_t base, uint32_t e) {
  uint64_t v = 1;
  while (e--) v *= base;
  return v;
}

std::string join_u32(const uint32_t* xs, uint64_t count, const char* sep) {
  std::string s;
  for (uint64_t i = 0; i < count; ++i) {
    if (i) s += sep;
    s += std::to_string(xs[i]);
  }
  return s;
}

// "key=value" lookup in a space-separated metadata line.
std::optional<std::string> meta_value(const std::string& meta, const std::string& key) {
  size_t pos = 0;
  while (pos < meta.size()) {
    size_t end = meta.find(' ', pos);
    if (end == std::string::npos) end = meta.size();
    std::string tok = meta.substr(pos, end - pos);
    if (tok.size() > key.size() && tok.compare(0, key.size(), key) == 0 && tok[key.size()] == '=')
      return tok.substr(key.size() + 1);
    pos = end + 1;
  }
  return std::nullopt;
}

int write_text_file(const std::string& path, const char* text) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) return usage_error("cannot open " + path + " for writing");
  std::fputs(text, fp);
  std::fclose(fp);
  return 0;
}

/* ---- construct explicit ----------------------------------------------- */

struct ExplicitCfg {
  uint32_t q = 0, ell = 0, k = 0;
  bool zero_block = false;
  uint64_t budget = 1'000'000;
  std::string out;
};

int run_construct_explicit(const ExplicitCfg& cfg) {
  uint64_t k_cap = cfg.q / (static_cast<uint64_t>(cfg.ell) * cfg.ell);
  if (cfg.k > k_cap)
    return usage_error("k = " + std::to_string(cfg.k) + " exceeds floor(q/ell^2) = " +
                       std::to_string(k_cap));

  FieldH f;
  if (bc_status st = bc_field_create(cfg.q, f.out()); st != BC_OK) return report_error(st);
  CollH full;
  if (bc_status st = bc_construction1(f, cfg.ell, -1, cfg.zero_block ? 1 : 0, full.out());
      st != BC_OK)
    return report_error(st);

  uint32_t l_star = 0;
  bc_status st = bc_collection_check_niceness(full, cfg.budget, &l_star);
  if (st == BC_ERR_BUDGET_EXCEEDED) {
    std::fprintf(stderr, "warning: niceness check over budget; keeping the claimed level\n");
  } else if (st != BC_OK) {
    return report_error(st);
  }

  uint32_t m = cfg.ell * cfg.k;
  uint32_t m_full = bc_collection_m(full);
  if (m > m_full)
    return usage_error("need m = ell*k = " + std::to_string(m) + " subspaces but only " +
                       std::to_string(m_full) + " are available at q = " + std::to_string(cfg.q));

  CollH coll;
  if (bc_status st2 = bc_collection_take_prefix(full, m, coll.out()); st2 != BC_OK)
    return report_error(st2);
  CodeH code;
  if (bc_status st2 = bc_build_explicit(coll, 1, code.out()); st2 != BC_OK)
    return report_error(st2);

  uint32_t level = 0;
  int brute = 0;
  bc_collection_level(coll, &level, &brute);
  uint64_t n = bc_code_n(code), r = bc_code_r(code);

  std::printf("collection: q=%u ell=%u m=%u%s\n", cfg.q, cfg.ell, m,
              cfg.zero_block ? " (zero block included)" : "");
  std::printf("certified L = %u (%s)\n", level, brute ? "brute force" : "claimed");
  std::printf("n = %" PRIu64 " = q^(2*ell+1) = %u^%u\n", n, cfg.q, 2 * cfg.ell + 1);
  std::printf("r = %" PRIu64 " = m*q^(ell+1) = %u*%" PRIu64 "\n", r, m,
              ipow_u64(cfg.q, cfg.ell + 1));
  std::printf("N = %" PRIu64 " = n + r\n", n + r);
  if (level > 0)
    std::printf("claimed k = %" PRId64 " = floor(m/L) = floor(%u/%u)\n", bc_code_claimed_k(code),
                m, level);
  else
    std::printf("claimed k = %" PRId64 " = m (no coset meets two members)\n",
                bc_code_claimed_k(code));

  if (!cfg.out.empty()) {
    if (bc_status st2 = bc_code_write(code, cfg.out.c_str()); st2 != BC_OK)
      return report_error(st2);
    std::printf("wrote %s\n", cfg.out.c_str());
  }
  return 0;
}

/* ---- construct random --------------------------------------------------- */

struct RandomCfg {
  uint32_t q = 0, k = 0;
  uint64_t seed = 0;
  double p1 = -1, p2 = -1;
  bool allow_large_k = false;
  std::string out;
};

int run_construct_random(const RandomCfg& cfg) {
  CodeH code;
  if (bc_status st = bc_build_random(cfg.q, cfg.k, cfg.seed, cfg.p1, cfg.p2,
                                     cfg.allow_large_k ? 1 : 0, code.out());
      st != BC_OK)
    return report_error(st);

  std::string meta = bc_code_meta(code);
  uint64_t n = bc_code_n(code), r = bc_code_r(code);
  double p1 = std::strtod(meta_value(meta, "p1").value_or("0").c_str(), nullptr);
  if (meta_value(meta, "clamped").has_value())
    std::fprintf(stderr, "warning: p1 formula evaluated above 1 and was clamped to 1\n");

  std::printf("meta: %s\n", meta.c_str());
  std::printf("n = %" PRIu64 "  r = %" PRIu64 "  N = %" PRIu64 "\n", n, r, n + r);
  std::printf("expected parities p1*(q^2+q) = %.6g\n",
              p1 * (static_cast<double>(cfg.q) * cfg.q + cfg.q));
  double dn = static_cast<double>(n);
  std::printf("redundancy target 108*k^1.5*sqrt(n)*ln(n) = %.6g\n",
              108.0 * std::pow(static_cast<double>(cfg.k), 1.5) * std::sqrt(dn) * std::log(dn));

  if (!cfg.out.empty()) {
    if (bc_status st = bc_code_write(code, cfg.out.c_str()); st != BC_OK) return report_error(st);
    std::printf("wrote %s\n", cfg.out.c_str());
  }
  return 0;
}

/* ---- verify -------------------------------------------------------------- */

struct VerifyCfg {
  std::string code_path;
  uint32_t k = 0;
  std::string mode = "simple";
  bool no_singleton = false;
  uint64_t budget = 10'000'000;
};

int run_verify(const VerifyCfg& cfg) {
  int mode;
  if (cfg.mode == "simple") {
    mode = BC_VERIFY_SIMPLE;
  } else if (cfg.mode == "exhaustive-small") {
    mode = BC_VERIFY_EXHAUSTIVE_SMALL;
  } else {
    return usage_error("mode must be 'simple' or 'exhaustive-small'");
  }

  CodeH code;
  if (bc_status st = bc_code_read(cfg.code_path.c_str(), code.out()); st != BC_OK)
    return report_error(st);
  std::printf("code: n=%" PRIu64 " r=%" PRIu64 " N=%" PRIu64 "\n", bc_code_n(code),
              bc_code_r(code), bc_code_length(code));
  std::printf("mode: %s  k=%u  singleton: %s\n", cfg.mode.c_str(), cfg.k,
              cfg.no_singleton ? "off" : "on");

  VerdictH v;
  if (bc_status st = bc_verify(code, cfg.k, mode, cfg.no_singleton ? 0 : 1, cfg.budget, v.out());
      st != BC_OK)
    return report_error(st);

  int holds = bc_verdict_holds(v);
  const uint32_t* wit = nullptr;
  uint64_t wit_n = 0;
  if (holds == 1) {
    std::printf("verdict: holds\n");
    std::printf("%" PRIu64 " multisets verified\n", bc_verdict_checked(v));
    return 0;
  }
  std::printf("verdict: %s\n", holds == 0 ? "false" : "inconclusive");
  std::printf("checked: %" PRIu64 " multisets\n", bc_verdict_checked(v));
  if (bc_verdict_witness(v, &wit, &wit_n))
    std::printf("witness: %s\n", join_u32(wit, wit_n, ",").c_str());
  return kExitFailed;
}

/* ---- serve ---------------------------------------------------------------- */

struct ServeCfg {
  std::string code_path, request;
  bool singleton = false, strict = false;
};

bool parse_request(const std::string& text, std::vector<uint32_t>& out) {
  size_t pos = 0;
  if (text.empty()) return false;
  while (pos <= text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    if (end == pos) return false;
    uint64_t v = 0;
    for (size_t i = pos; i < end; ++i) {
      if (text[i] < '0' || text[i] > '9') return false;
      v = v * 10 + static_cast<uint64_t>(text[i] - '0');
      if (v > UINT32_MAX) return false;
    }
    out.push_back(static_cast<uint32_t>(v));
    pos = end + 1;
  }
  return true;
}

int run_serve(const ServeCfg& cfg) {
  std::vector<uint32_t> indices;
  if (!parse_request(cfg.request, indices))
    return usage_error("request must be a nonempty comma-separated list of indices, e.g. 5,5,9");

  CodeH code;
  if (bc_status st = bc_code_read(cfg.code_path.c_str(), code.out()); st != BC_OK)
    return report_error(st);
  AssignH a;
  if (bc_status st = bc_greedy_assign(code, indices.data(), indices.size(),
                                      cfg.singleton ? 1 : 0, cfg.strict ? 1 : 0, a.out());
      st != BC_OK)
    return report_error(st);

  std::printf("request: %s (k = %zu)\n", cfg.request.c_str(), indices.size());
  uint64_t count = bc_assignment_size(a);
  for (uint64_t i = 0; i < count; ++i) {
    uint32_t target = 0;
    int kind = 0;
    const uint32_t* pos = nullptr;
    uint64_t sz = 0;
    if (bc_status st = bc_assignment_set(a, i, &target, &kind, &pos, &sz); st != BC_OK)
      return report_error(st);
    std::printf("target=%u kind=%s positions=%s\n", target,
                kind == BC_SET_SINGLETON ? "singleton" : "simple",
                join_u32(pos, sz, ",").c_str());
  }
  if (!bc_assignment_ok(a)) {
    uint32_t group = 0, target = 0, found = 0, needed = 0;
    bc_assignment_failure(a, &group, &target, &found, &needed);
    std::printf("failure: group %u target %u: found %u of %u disjoint sets\n", group, target,
                found, needed);
    return kExitFailed;
  }
  return 0;
}

/* ---- nice ----------------------------------------------------------------- */

struct NiceCheckCfg {
  uint32_t q = 0, ell = 0;
  int64_t m = -1;
  bool zero_block = false;
  uint64_t budget = 1'000'000;
  std::string in, out;
};

int run_nice_check(const NiceCheckCfg& cfg) {
  CollH coll;
  if (!cfg.in.empty()) {
    if (bc_status st = bc_collection_read(cfg.in.c_str(), coll.out()); st != BC_OK)
      return report_error(st);
  } else {
    if (cfg.q == 0 || cfg.ell == 0) return usage_error("provide --in FILE or both --q and --ell");
    FieldH f;
    if (bc_status st = bc_field_create(cfg.q, f.out()); st != BC_OK) return report_error(st);
    if (bc_status st = bc_construction1(f, cfg.ell, cfg.m, cfg.zero_block ? 1 : 0, coll.out());
        st != BC_OK)
      return report_error(st);
  }

  std::printf("collection: q=%u ell=%u m=%u\n", bc_collection_q(coll), bc_collection_ell(coll),
              bc_collection_m(coll));
  uint32_t l_star = 0;
  if (bc_status st = bc_collection_check_niceness(coll, cfg.budget, &l_star); st != BC_OK)
    return report_error(st);
  std::printf("L* = %u\n", l_star);

  if (!cfg.out.empty()) {
    if (bc_status st = bc_collection_write(coll, cfg.out.c_str()); st != BC_OK)
      return report_error(st);
    std::printf("wrote %s\n", cfg.out.c_str());
  }
  return 0;
}

struct NiceSearchCfg {
  uint32_t q = 0, ell = 0, level = 0;
  uint64_t node_budget = 1u << 20;
  std::string out;
};

int run_nice_search(const NiceSearchCfg& cfg) {
  FieldH f;
  if (bc_status st = bc_field_create(cfg.q, f.out()); st != BC_OK) return report_error(st);
  uint32_t m_max = 0;
  CollH witness;
  if (bc_status st =
          bc_max_nice_collection(f, cfg.ell, cfg.level, cfg.node_budget, &m_max, witness.out());
      st != BC_OK)
    return report_error(st);

  if (cfg.ell == 1)
    std::printf("m_max = %u <= (L+1)*q = %u\n", m_max, (cfg.level + 1) * cfg.q);
  else
    std::printf("m_max = %u\n", m_max);
  CString text;
  if (bc_status st = bc_collection_to_string(witness, text.out()); st != BC_OK)
    return report_error(st);
  std::fputs(text.p, stdout);

  if (!cfg.out.empty()) {
    if (bc_status st = bc_collection_write(witness, cfg.out.c_str()); st != BC_OK)
      return report_error(st);
    std::printf("wrote %s\n", cfg.out.c_str());
  }
  return 0;
}

/* ---- bounds ---------------------------------------------------------------- */

struct BoundsCfg {
  uint64_t n = 0, k = 0;
  std::string out;
};

int run_bounds_report(const BoundsCfg& cfg) {
  CString csv;
  if (bc_status st = bc_bound_report_csv(cfg.n, cfg.k, csv.out()); st != BC_OK)
    return report_error(st);
  if (!cfg.out.empty()) return write_text_file(cfg.out, csv.p);
  std::fputs(csv.p, stdout);
  return 0;
}

int run_bounds_figure(const std::string& out) {
  CString csv;
  if (bc_status st = bc_figure1_csv(csv.out()); st != BC_OK) return report_error(st);
  if (!out.empty()) return write_text_file(out, csv.p);
  std::fputs(csv.p, stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construction, service and verification of primitive batch codes"};
  app.require_subcommand(1);
  int rc = 0;

  auto* construct = app.add_subcommand("construct", "build a code and write it to a file");
  construct->require_subcommand(1);

  ExplicitCfg ec;
  auto* cexp = construct->add_subcommand(
      "explicit", "subspace-collection code over F_q^(2*ell+1) with availability k");
  cexp->add_option("--q", ec.q, "field size (prime power)")->required();
  cexp->add_option("--ell", ec.ell, "subspace dimension")->required()->check(CLI::PositiveNumber);
  cexp->add_option("--k", ec.k, "availability to provision (m = ell*k subspaces)")
      ->required()
      ->check(CLI::PositiveNumber);
  cexp->add_flag("--include-zero-block,--zero-block", ec.zero_block,
                 "append span{(1,0,...,0)} (ell = 1 only)");
  cexp->add_option("--budget", ec.budget, "point budget for the niceness check");
  cexp->add_option("-o,--out", ec.out, "output code file");
  cexp->callback([&] { rc = run_construct_explicit(ec); });

  RandomCfg rc_cfg;
  auto* crnd = construct->add_subcommand("random", "sampled code from the lines of AG(2,q)");
  crnd->add_option("--q", rc_cfg.q, "field size (prime power); n = q^2")->required();
  crnd->add_option("--k", rc_cfg.k, "availability target")->required()->check(CLI::PositiveNumber);
  crnd->add_option("--seed", rc_cfg.seed, "RNG seed (recorded in metadata)");
  crnd->add_option("--p1", rc_cfg.p1,
                   "line-keeping probability; default min(1, 36*k^1.5*ln(n)/sqrt(n))");
  crnd->add_option("--p2", rc_cfg.p2, "point-keeping probability; default 1/sqrt(8k)");
  crnd->add_flag("--allow-large-k", rc_cfg.allow_large_k, "drop the k < q/12 precondition");
  crnd->add_option("-o,--out", rc_cfg.out, "output code file");
  crnd->callback([&] { rc = run_construct_random(rc_cfg); });

  VerifyCfg vc;
  auto* verify = app.add_subcommand("verify", "check the batch property of a stored code");
  verify->add_option("--code", vc.code_path, "code file")->required();
  verify->add_option("--k", vc.k, "batch size")->required()->check(CLI::PositiveNumber);
  verify->add_option("--mode", vc.mode, "simple | exhaustive-small (default simple)");
  verify->add_flag("--no-singleton", vc.no_singleton,
                   "forbid reading a requested symbol from its own position");
  verify->add_option("--budget", vc.budget, "max multisets to enumerate");
  verify->callback([&] { rc = run_verify(vc); });

  ServeCfg sc;
  auto* serve = app.add_subcommand("serve", "assign disjoint recovering sets for one request");
  serve->add_option("--code", sc.code_path, "code file")->required();
  serve->add_option("--request", sc.request, "comma-separated info indices, e.g. 5,5,9")
      ->required();
  serve->add_flag("--singleton", sc.singleton, "allow reading a symbol from its own position");
  serve->add_flag("--strict", sc.strict,
                  "restrict to simple sets avoiding every other requested index");
  serve->callback([&] { rc = run_serve(sc); });

  auto* nice = app.add_subcommand("nice", "subspace-collection utilities");
  nice->require_subcommand(1);

  NiceCheckCfg ncc;
  auto* ncheck = nice->add_subcommand("check", "exact level of a collection by brute force");
  ncheck->add_option("--q", ncc.q, "field size (with --ell: build the moment collection)");
  ncheck->add_option("--ell", ncc.ell, "subspace dimension");
  ncheck->add_option("--m", ncc.m, "number of subspaces (default floor((q-1)/ell))");
  ncheck->add_flag("--include-zero-block,--zero-block", ncc.zero_block,
                   "append span{(1,0,...,0)} (ell = 1 only)");
  ncheck->add_option("--in", ncc.in, "read the collection from a file instead");
  ncheck->add_option("--budget", ncc.budget, "point budget");
  ncheck->add_option("-o,--out", ncc.out, "write the certified collection");
  ncheck->callback([&] { rc = run_nice_check(ncc); });

  NiceSearchCfg nsc;
  auto* nsearch = nice->add_subcommand("search", "largest collection for a given level");
  nsearch->add_option("--q", nsc.q, "field size")->required();
  nsearch->add_option("--ell", nsc.ell, "subspace dimension")->required()->check(CLI::PositiveNumber);
  nsearch->add_option("--level,-L", nsc.level, "max members an off coset may meet")->required();
  nsearch->add_option("--node-budget", nsc.node_budget, "search tree node budget");
  nsearch->add_option("-o,--out", nsc.out, "write the witness collection");
  nsearch->callback([&] { rc = run_nice_search(nsc); });

  auto* bounds = app.add_subcommand("bounds", "redundancy bound tables");
  bounds->require_subcommand(1);

  BoundsCfg bc;
  auto* breport = bounds->add_subcommand("report", "bound values at a given (n, k), as CSV");
  breport->add_option("--n", bc.n, "number of information symbols")->required();
  breport->add_option("--k", bc.k, "batch size")->required()->check(CLI::PositiveNumber);
  breport->add_option("-o,--out", bc.out, "output file (default stdout)");
  breport->callback([&] { rc = run_bounds_report(bc); });

  std::string fig_out;
  auto* bfigure = bounds->add_subcommand("figure", "rate/redundancy tradeoff series, as CSV");
  bfigure->add_option("-o,--out", fig_out, "output file (default stdout)");
  bfigure->callback([&] { rc = run_bounds_figure(fig_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  return rc;
}
