// C binding: every entry point validates its pointers, forwards to the C++
// core, and converts exceptions into status codes plus a thread-local
// message.  Handles are single-member structs so the core types never cross
// the ABI boundary.

#include "batchcode.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "code.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "gf.hpp"

using namespace batchcode;

struct bc_field {
  Field impl;
};
struct bc_collection {
  NiceCollection impl;
};
struct bc_code {
  BatchCode impl;
};
struct bc_assignment {
  GreedyResult impl;
};
struct bc_verdict {
  Verdict impl;
};

namespace {

thread_local std::string g_last_error;

bc_status set_error(bc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

bc_status from_errc(Errc c) {
  switch (c) {
    case Errc::NotPrimePower: return BC_ERR_NOT_PRIME_POWER;
    case Errc::DivisionByZero: return BC_ERR_DIVISION_BY_ZERO;
    case Errc::DimensionMismatch: return BC_ERR_DIMENSION_MISMATCH;
    case Errc::IndexOutOfRange: return BC_ERR_INDEX_OUT_OF_RANGE;
    case Errc::LengthMismatch: return BC_ERR_LENGTH_MISMATCH;
    case Errc::InvalidParams: return BC_ERR_INVALID_PARAMS;
    case Errc::BudgetExceeded: return BC_ERR_BUDGET_EXCEEDED;
    case Errc::UncertifiedCollection: return BC_ERR_UNCERTIFIED_COLLECTION;
    case Errc::ParseError: return BC_ERR_PARSE;
    case Errc::IoError: return BC_ERR_IO;
  }
  return BC_ERR_UNKNOWN;
}

template <typename Fn>
bc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return BC_OK;
  } catch (const Error& e) {
    return set_error(from_errc(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(BC_ERR_UNKNOWN, "out of memory");
  } catch (const std::exception& e) {
    return set_error(BC_ERR_UNKNOWN, e.what());
  }
}

bc_status null_arg(const char* name) {
  return set_error(BC_ERR_NULL_ARGUMENT, std::string(name) + " must not be null");
}

void copy_out(const std::string& s, char** out) {
  char* buf = new char[s.size() + 1];
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
}

}  // namespace

extern "C" {

const char* bc_status_name(bc_status status) {
  switch (status) {
    case BC_OK: return "ok";
    case BC_ERR_NOT_PRIME_POWER: return "not_prime_power";
    case BC_ERR_DIVISION_BY_ZERO: return "division_by_zero";
    case BC_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case BC_ERR_INDEX_OUT_OF_RANGE: return "index_out_of_range";
    case BC_ERR_LENGTH_MISMATCH: return "length_mismatch";
    case BC_ERR_INVALID_PARAMS: return "invalid_params";
    case BC_ERR_BUDGET_EXCEEDED: return "budget_exceeded";
    case BC_ERR_UNCERTIFIED_COLLECTION: return "uncertified_collection";
    case BC_ERR_PARSE: return "parse_error";
    case BC_ERR_IO: return "io_error";
    case BC_ERR_NULL_ARGUMENT: return "null_argument";
    case BC_ERR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

const char* bc_last_error(void) { return g_last_error.c_str(); }

/* ---- finite fields -------------------------------------------------- */

bc_status bc_field_create(uint32_t q, bc_field** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new bc_field{Field(q)}; });
}

void bc_field_destroy(bc_field* f) { delete f; }

uint32_t bc_field_q(const bc_field* f) { return f ? f->impl.q() : 0; }
uint32_t bc_field_p(const bc_field* f) { return f ? f->impl.p() : 0; }
uint32_t bc_field_deg(const bc_field* f) { return f ? f->impl.deg() : 0; }
uint32_t bc_field_alpha(const bc_field* f) { return f ? f->impl.alpha() : 0; }

bc_status bc_field_add(const bc_field* f, uint32_t a, uint32_t b, uint32_t* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = f->impl.add(a, b); });
}

bc_status bc_field_mul(const bc_field* f, uint32_t a, uint32_t b, uint32_t* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = f->impl.mul(a, b); });
}

bc_status bc_field_neg(const bc_field* f, uint32_t a, uint32_t* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = f->impl.neg(a); });
}

bc_status bc_field_inv(const bc_field* f, uint32_t a, uint32_t* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = f->impl.inv(a); });
}

bc_status bc_field_pow(const bc_field* f, uint32_t a, int64_t e, uint32_t* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = f->impl.pow(a, e); });
}

bc_status bc_field_element_order(const bc_field* f, uint32_t a, uint32_t* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] { *out = f->impl.element_order(a); });
}

/* ---- subspace collections ------------------------------------------- */

bc_status bc_construction1(const bc_field* f, uint32_t ell, int64_t m_requested,
                           int include_zero_block, bc_collection** out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::optional<uint32_t> m;
    if (m_requested >= 0) {
      if (m_requested > UINT32_MAX) fail(Errc::InvalidParams, "m_requested out of range");
      m = static_cast<uint32_t>(m_requested);
    }
    *out = new bc_collection{construction1(f->impl, ell, m, include_zero_block != 0)};
  });
}

void bc_collection_destroy(bc_collection* c) { delete c; }

uint32_t bc_collection_q(const bc_collection* c) { return c ? c->impl.field.q() : 0; }
uint32_t bc_collection_ell(const bc_collection* c) { return c ? c->impl.ell : 0; }
uint32_t bc_collection_m(const bc_collection* c) { return c ? c->impl.m() : 0; }

int bc_collection_level(const bc_collection* c, uint32_t* level, int* brute_force) {
  if (!c || !c->impl.certified.has_value()) return 0;
  if (level) *level = c->impl.certified->level;
  if (brute_force) *brute_force = c->impl.certified->method == CertMethod::BruteForce ? 1 : 0;
  return 1;
}

bc_status bc_collection_check_pairwise(const bc_collection* c, int* ok) {
  if (!c) return null_arg("c");
  if (!ok) return null_arg("ok");
  return guarded([&] { *ok = check_pairwise(c->impl) ? 1 : 0; });
}

bc_status bc_collection_check_niceness(bc_collection* c, uint64_t point_budget, uint32_t* l_star) {
  if (!c) return null_arg("c");
  if (!l_star) return null_arg("l_star");
  return guarded([&] { *l_star = check_niceness(c->impl, point_budget); });
}

bc_status bc_collection_take_prefix(const bc_collection* c, uint32_t m, bc_collection** out) {
  if (!c) return null_arg("c");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new bc_collection{take_prefix(c->impl, m)}; });
}

bc_status bc_max_nice_collection(const bc_field* f, uint32_t ell, uint32_t level,
                                 uint64_t node_budget, uint32_t* m_max, bc_collection** witness) {
  if (!f) return null_arg("f");
  if (!m_max) return null_arg("m_max");
  return guarded([&] {
    MaxNiceResult res = max_nice_collection(f->impl, ell, level, node_budget);
    *m_max = res.m_max;
    if (witness) *witness = new bc_collection{std::move(res.witness)};
  });
}

bc_status bc_collection_to_string(const bc_collection* c, char** out) {
  if (!c) return null_arg("c");
  if (!out) return null_arg("out");
  return guarded([&] { copy_out(collection_to_string(c->impl), out); });
}

bc_status bc_collection_from_string(const char* text, bc_collection** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new bc_collection{collection_from_string(text)}; });
}

bc_status bc_collection_write(const bc_collection* c, const char* path) {
  if (!c) return null_arg("c");
  if (!path) return null_arg("path");
  return guarded([&] { write_collection(c->impl, path); });
}

bc_status bc_collection_read(const char* path, bc_collection** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new bc_collection{read_collection(path)}; });
}

/* ---- batch codes ----------------------------------------------------- */

bc_status bc_build_explicit(const bc_collection* c, int strict, bc_code** out) {
  if (!c) return null_arg("c");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new bc_code{build_explicit(c->impl, strict != 0)}; });
}

bc_status bc_build_random(uint32_t q, uint32_t k, uint64_t seed, double p1, double p2,
                          int allow_large_k, bc_code** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    std::optional<double> o1, o2;
    if (p1 > 0) o1 = p1;
    if (p2 > 0) o2 = p2;
    Field f(q);
    *out = new bc_code{build_random(f, k, seed, o1, o2, allow_large_k != 0)};
  });
}

void bc_code_destroy(bc_code* code) { delete code; }

uint64_t bc_code_n(const bc_code* code) { return code ? code->impl.n : 0; }
uint64_t bc_code_r(const bc_code* code) { return code ? code->impl.r() : 0; }
uint64_t bc_code_length(const bc_code* code) { return code ? code->impl.length() : 0; }

int64_t bc_code_claimed_k(const bc_code* code) {
  if (!code) return -1;
  auto k = code->impl.claimed_k();
  return k.has_value() ? static_cast<int64_t>(*k) : -1;
}

const char* bc_code_meta(const bc_code* code) { return code ? code->impl.meta.c_str() : ""; }

bc_status bc_code_parity(const bc_code* code, uint64_t t, const uint32_t** support, uint64_t* size) {
  if (!code) return null_arg("code");
  if (!support) return null_arg("support");
  if (!size) return null_arg("size");
  return guarded([&] {
    if (t >= code->impl.r()) fail(Errc::IndexOutOfRange, "parity index out of range");
    *support = code->impl.parities[t].data();
    *size = code->impl.parities[t].size();
  });
}

bc_status bc_encode(const bc_code* code, const uint8_t* info, uint64_t n, uint8_t* out,
                    uint64_t length) {
  if (!code) return null_arg("code");
  if (!info && n > 0) return null_arg("info");
  if (!out) return null_arg("out");
  return guarded([&] {
    if (n != code->impl.n || length != code->impl.length())
      fail(Errc::LengthMismatch, "buffer sizes do not match the code");
    std::vector<uint8_t> word = encode(code->impl, std::vector<uint8_t>(info, info + n));
    std::memcpy(out, word.data(), word.size());
  });
}

bc_status bc_code_to_string(const bc_code* code, char** out) {
  if (!code) return null_arg("code");
  if (!out) return null_arg("out");
  return guarded([&] { copy_out(code_to_string(code->impl), out); });
}

bc_status bc_code_from_string(const char* text, bc_code** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new bc_code{code_from_string(text)}; });
}

bc_status bc_code_write(const bc_code* code, const char* path) {
  if (!code) return null_arg("code");
  if (!path) return null_arg("path");
  return guarded([&] { write_code(code->impl, path); });
}

bc_status bc_code_read(const char* path, bc_code** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new bc_code{read_code(path)}; });
}

/* ---- recovering sets ------------------------------------------------- */

bc_status bc_simple_sets(const bc_code* code, uint32_t i, bc_assignment** out) {
  if (!code) return null_arg("code");
  if (!out) return null_arg("out");
  return guarded([&] {
    GreedyResult res;
    res.assignment = simple_recovering_sets(code->impl, i);
    *out = new bc_assignment{std::move(res)};
  });
}

bc_status bc_greedy_assign(const bc_code* code, const uint32_t* indices, uint64_t count,
                           int allow_singleton, int strict_paper, bc_assignment** out) {
  if (!code) return null_arg("code");
  if (!indices && count > 0) return null_arg("indices");
  if (!out) return null_arg("out");
  return guarded([&] {
    MultisetRequest req = MultisetRequest::from_indices(
        std::vector<uint32_t>(indices, indices + count));
    GreedyOptions opts;
    opts.allow_singleton = allow_singleton != 0;
    opts.strict_paper = strict_paper != 0;
    *out = new bc_assignment{greedy_assign(code->impl, req, opts)};
  });
}

void bc_assignment_destroy(bc_assignment* a) { delete a; }

int bc_assignment_ok(const bc_assignment* a) { return a && a->impl.ok() ? 1 : 0; }

uint64_t bc_assignment_size(const bc_assignment* a) { return a ? a->impl.assignment.size() : 0; }

bc_status bc_assignment_set(const bc_assignment* a, uint64_t idx, uint32_t* target, int* kind,
                            const uint32_t** positions, uint64_t* size) {
  if (!a) return null_arg("a");
  return guarded([&] {
    if (idx >= a->impl.assignment.size()) fail(Errc::IndexOutOfRange, "set index out of range");
    const RecoveringSet& s = a->impl.assignment[idx];
    if (target) *target = s.target;
    if (kind) *kind = s.kind == RecoveringSet::Kind::Singleton ? BC_SET_SINGLETON : BC_SET_SIMPLE;
    if (positions) *positions = s.positions.data();
    if (size) *size = s.positions.size();
  });
}

bc_status bc_assignment_failure(const bc_assignment* a, uint32_t* group, uint32_t* target,
                                uint32_t* found, uint32_t* needed) {
  if (!a) return null_arg("a");
  return guarded([&] {
    if (!a->impl.failure.has_value()) fail(Errc::InvalidParams, "assignment succeeded");
    const GreedyFailure& f = *a->impl.failure;
    if (group) *group = f.group;
    if (target) *target = f.target;
    if (found) *found = f.found;
    if (needed) *needed = f.needed;
  });
}

/* ---- verification ---------------------------------------------------- */

bc_status bc_verify(const bc_code* code, uint32_t k, int mode, int allow_singleton,
                    uint64_t budget, bc_verdict** out) {
  if (!code) return null_arg("code");
  if (!out) return null_arg("out");
  return guarded([&] {
    VerifyMode m;
    if (mode == BC_VERIFY_SIMPLE) {
      m = VerifyMode::Simple;
    } else if (mode == BC_VERIFY_EXHAUSTIVE_SMALL) {
      m = VerifyMode::ExhaustiveSmall;
    } else {
      fail(Errc::InvalidParams, "unknown verification mode");
    }
    VerifyOptions opts;
    opts.allow_singleton = allow_singleton != 0;
    if (budget > 0) opts.budget = budget;
    *out = new bc_verdict{verify_batch(code->impl, k, m, opts)};
  });
}

void bc_verdict_destroy(bc_verdict* v) { delete v; }

int bc_verdict_holds(const bc_verdict* v) {
  if (!v) return -1;
  switch (v->impl.holds) {
    case Verdict::Holds::True: return 1;
    case Verdict::Holds::False: return 0;
    case Verdict::Holds::Inconclusive: return -1;
  }
  return -1;
}

uint64_t bc_verdict_checked(const bc_verdict* v) { return v ? v->impl.checked : 0; }

int bc_verdict_witness(const bc_verdict* v, const uint32_t** indices, uint64_t* size) {
  if (!v || !v->impl.witness.has_value()) return 0;
  if (indices) *indices = v->impl.witness->data();
  if (size) *size = v->impl.witness->size();
  return 1;
}

bc_status bc_conflict_degree(const bc_code* code, uint64_t work_budget, uint32_t* out) {
  if (!code) return null_arg("code");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = work_budget > 0 ? conflict_degree(code->impl, work_budget)
                           : conflict_degree(code->impl);
  });
}

/* ---- bounds ----------------------------------------------------------- */

bc_status bc_bound_report_csv(uint64_t n, uint64_t k, char** out) {
  if (!out) return null_arg("out");
  return guarded([&] { copy_out(bound_report_csv(bound_report(n, k)), out); });
}

bc_status bc_figure1_csv(char** out) {
  if (!out) return null_arg("out");
  return guarded([&] { copy_out(figure1_csv(), out); });
}

void bc_string_free(char* s) { delete[] s; }

}  // extern "C"
