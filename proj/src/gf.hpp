#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace batchcode {

using Elem = uint32_t;

bool is_prime_power(uint32_t q, uint32_t* p_out = nullptr, uint32_t* deg_out = nullptr);

// GF(q) for a prime power q = p^deg.  An element is its integer code in
// [0, q): the base-p digits of the code are the polynomial coefficients,
// constant term first.  For deg > 1 the modulus is the lexicographically
// smallest monic irreducible of degree deg over GF(p) (coefficient list
// compared low-to-high), so the representation is canonical for each q.
class Field {
 public:
  explicit Field(uint32_t q);

  uint32_t q() const { return q_; }
  uint32_t p() const { return p_; }
  uint32_t deg() const { return deg_; }
  // Smallest element code whose multiplicative order is q-1.
  Elem alpha() const { return alpha_; }
  // Monic modulus polynomial, low-to-high, deg+1 coefficients.
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;                 // DivisionByZero on a = 0
  Elem pow(Elem a, int64_t e) const;      // 0^0 = 1; DivisionByZero on 0^e, e < 0
  uint32_t element_order(Elem a) const;   // least e >= 1 with a^e = 1

 private:
  void check(Elem a) const;
  Elem mul_poly(Elem a, Elem b) const;    // table-free product, used during setup

  uint32_t q_ = 0, p_ = 0, deg_ = 0;
  std::vector<uint32_t> modulus_;
  Elem alpha_ = 0;
  std::vector<uint32_t> qm1_primes_;      // distinct prime factors of q-1
  std::vector<Elem> exp_;                 // exp_[i] = alpha^i, i in [0, q-1)
  std::vector<uint32_t> log_;             // log_[a] for a != 0
};

}  // namespace batchcode
