#ifndef BATCHCODE_H_
#define BATCHCODE_H_

/* C interface to the batchcode library.
 *
 * Every object is an opaque handle created by a bc_*_create / bc_* builder
 * and released by the matching bc_*_destroy.  Functions return BC_OK on
 * success or a status code; bc_last_error() returns a thread-local message
 * for the most recent failure on the calling thread.  Pointer views returned
 * through out-parameters stay valid until the owning handle is destroyed.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bc_status {
  BC_OK = 0,
  BC_ERR_NOT_PRIME_POWER = 1,
  BC_ERR_DIVISION_BY_ZERO = 2,
  BC_ERR_DIMENSION_MISMATCH = 3,
  BC_ERR_INDEX_OUT_OF_RANGE = 4,
  BC_ERR_LENGTH_MISMATCH = 5,
  BC_ERR_INVALID_PARAMS = 6,
  BC_ERR_BUDGET_EXCEEDED = 7,
  BC_ERR_UNCERTIFIED_COLLECTION = 8,
  BC_ERR_PARSE = 9,
  BC_ERR_IO = 10,
  BC_ERR_NULL_ARGUMENT = 11,
  BC_ERR_UNKNOWN = 12
} bc_status;

const char* bc_status_name(bc_status status);
const char* bc_last_error(void);

/* ---- finite fields -------------------------------------------------- */

typedef struct bc_field bc_field;

bc_status bc_field_create(uint32_t q, bc_field** out);
void bc_field_destroy(bc_field* f);

uint32_t bc_field_q(const bc_field* f);
uint32_t bc_field_p(const bc_field* f);
uint32_t bc_field_deg(const bc_field* f);
uint32_t bc_field_alpha(const bc_field* f);

bc_status bc_field_add(const bc_field* f, uint32_t a, uint32_t b, uint32_t* out);
bc_status bc_field_mul(const bc_field* f, uint32_t a, uint32_t b, uint32_t* out);
bc_status bc_field_neg(const bc_field* f, uint32_t a, uint32_t* out);
bc_status bc_field_inv(const bc_field* f, uint32_t a, uint32_t* out);
bc_status bc_field_pow(const bc_field* f, uint32_t a, int64_t e, uint32_t* out);
bc_status bc_field_element_order(const bc_field* f, uint32_t a, uint32_t* out);

/* ---- subspace collections ------------------------------------------- */

typedef struct bc_collection bc_collection;

/* m_requested < 0 selects the default block count floor((q-1)/ell). */
bc_status bc_construction1(const bc_field* f, uint32_t ell, int64_t m_requested,
                           int include_zero_block, bc_collection** out);
void bc_collection_destroy(bc_collection* c);

uint32_t bc_collection_q(const bc_collection* c);
uint32_t bc_collection_ell(const bc_collection* c);
uint32_t bc_collection_m(const bc_collection* c);
/* Returns 1 and fills the outputs when a level is attached; brute_force is 1
 * for an exhaustive certificate, 0 for a construction claim. */
int bc_collection_level(const bc_collection* c, uint32_t* level, int* brute_force);

bc_status bc_collection_check_pairwise(const bc_collection* c, int* ok);
bc_status bc_collection_check_niceness(bc_collection* c, uint64_t point_budget, uint32_t* l_star);
bc_status bc_collection_take_prefix(const bc_collection* c, uint32_t m, bc_collection** out);
bc_status bc_max_nice_collection(const bc_field* f, uint32_t ell, uint32_t level,
                                 uint64_t node_budget, uint32_t* m_max, bc_collection** witness);

bc_status bc_collection_to_string(const bc_collection* c, char** out);
bc_status bc_collection_from_string(const char* text, bc_collection** out);
bc_status bc_collection_write(const bc_collection* c, const char* path);
bc_status bc_collection_read(const char* path, bc_collection** out);

/* ---- batch codes ----------------------------------------------------- */

typedef struct bc_code bc_code;

bc_status bc_build_explicit(const bc_collection* c, int strict, bc_code** out);
/* p1 <= 0 or p2 <= 0 selects the corresponding default. */
bc_status bc_build_random(uint32_t q, uint32_t k, uint64_t seed, double p1, double p2,
                          int allow_large_k, bc_code** out);
void bc_code_destroy(bc_code* code);

uint64_t bc_code_n(const bc_code* code);
uint64_t bc_code_r(const bc_code* code);
uint64_t bc_code_length(const bc_code* code);
/* -1 when the metadata carries no availability claim. */
int64_t bc_code_claimed_k(const bc_code* code);
const char* bc_code_meta(const bc_code* code);
bc_status bc_code_parity(const bc_code* code, uint64_t t, const uint32_t** support, uint64_t* size);

bc_status bc_encode(const bc_code* code, const uint8_t* info, uint64_t n, uint8_t* out, uint64_t length);

bc_status bc_code_to_string(const bc_code* code, char** out);
bc_status bc_code_from_string(const char* text, bc_code** out);
bc_status bc_code_write(const bc_code* code, const char* path);
bc_status bc_code_read(const char* path, bc_code** out);

/* ---- recovering sets ------------------------------------------------- */

typedef struct bc_assignment bc_assignment;

#define BC_SET_SIMPLE 0
#define BC_SET_SINGLETON 1

/* All simple recovering sets of information index i, in parity order. */
bc_status bc_simple_sets(const bc_code* code, uint32_t i, bc_assignment** out);
/* Serves the multiset given as a raw index list (repeats allowed, any
 * order).  Assignment failure is reported in the result object, not as a
 * status. */
bc_status bc_greedy_assign(const bc_code* code, const uint32_t* indices, uint64_t count,
                           int allow_singleton, int strict_paper, bc_assignment** out);
void bc_assignment_destroy(bc_assignment* a);

int bc_assignment_ok(const bc_assignment* a);
uint64_t bc_assignment_size(const bc_assignment* a);
bc_status bc_assignment_set(const bc_assignment* a, uint64_t idx, uint32_t* target, int* kind,
                            const uint32_t** positions, uint64_t* size);
/* Only meaningful when bc_assignment_ok() == 0. */
bc_status bc_assignment_failure(const bc_assignment* a, uint32_t* group, uint32_t* target,
                                uint32_t* found, uint32_t* needed);

/* ---- verification ---------------------------------------------------- */

typedef struct bc_verdict bc_verdict;

#define BC_VERIFY_SIMPLE 0
#define BC_VERIFY_EXHAUSTIVE_SMALL 1

bc_status bc_verify(const bc_code* code, uint32_t k, int mode, int allow_singleton,
                    uint64_t budget, bc_verdict** out);
void bc_verdict_destroy(bc_verdict* v);

/* 1 holds, 0 fails, -1 inconclusive */
int bc_verdict_holds(const bc_verdict* v);
uint64_t bc_verdict_checked(const bc_verdict* v);
/* Returns 1 and exposes the failing multiset when one was found. */
int bc_verdict_witness(const bc_verdict* v, const uint32_t** indices, uint64_t* size);

bc_status bc_conflict_degree(const bc_code* code, uint64_t work_budget, uint32_t* out);

/* ---- bounds ----------------------------------------------------------- */

bc_status bc_bound_report_csv(uint64_t n, uint64_t k, char** out);
bc_status bc_figure1_csv(char** out);

void bc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BATCHCODE_H_ */
