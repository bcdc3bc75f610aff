#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace batchcode {

// Redundancy bounds for an [N, n, k] batch code, mixing exact values with
// order-of-growth entries (exact = false means the value carries an unknown
// constant).
struct ExplicitBound {
  uint32_t ell = 0;
  uint64_t q = 0;         // smallest prime power with q^(2*ell+1) >= n
  uint64_t rounded_n = 0;  // q^(2*ell+1)
  uint64_t value = 0;      // ell * k * q^(ell+1)
  bool valid = false;      // k <= floor(q / ell^2)
};

struct BoundReport {
  uint64_t n = 0;
  uint64_t k = 0;
  uint64_t lower_k_minus_1 = 0;       // exact
  double lower_order = 0;             // max(sqrt(n), k), order only
  std::vector<ExplicitBound> explicit_bounds;  // ell = 1..4
  double random_order = 0;            // k^1.5 * sqrt(n) * ln(n), order only
};

BoundReport bound_report(uint64_t n, uint64_t k);

// Rate/redundancy tradeoff diagram: for n = 2^t and k = 2^(eps*t), delta is
// the redundancy exponent log2(r)/t as t -> infinity.  Series:
//   lower_bound      max(sqrt(n), k) floor
//   prior_work       previously published upper-bound envelope
//   theorem1_random  random line/point sampling
//   theorem3_l1..4   subspace construction, delta = eps + (ell+1)/(2*ell+1)
//                    on eps in [0, 1/(2*ell+1)]
struct FigurePoint {
  std::string series;
  double epsilon = 0;
  double delta = 0;
};

std::vector<FigurePoint> figure1_data();

// CSV renderings: "name,value,exact,valid" rows for a report,
// "series,epsilon,delta" rows for the figure.
std::string bound_report_csv(const BoundReport& rep);
std::string figure1_csv();

}  // namespace batchcode
