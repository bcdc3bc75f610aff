#include "bounds.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "gf.hpp"

namespace batchcode {

namespace {

// q^e with overflow saturation
uint64_t ipow(uint64_t q, uint32_t e) {
  unsigned __int128 acc = 1;
  for (uint32_t i = 0; i < e; ++i) {
    acc *= q;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<uint64_t>(acc);
}

uint64_t smallest_prime_power_root(uint64_t n, uint32_t e) {
  for (uint64_t q = 2;; ++q) {
    if (!is_prime_power(static_cast<uint32_t>(q))) continue;
    if (ipow(q, e) >= n) return q;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

BoundReport bound_report(uint64_t n, uint64_t k) {
  if (n < 1 || k < 1) fail(Errc::InvalidParams, "n and k must be at least 1");
  BoundReport rep;
  rep.n = n;
  rep.k = k;
  rep.lower_k_minus_1 = k - 1;
  rep.lower_order = std::max(std::sqrt(static_cast<double>(n)), static_cast<double>(k));
  for (uint32_t ell = 1; ell <= 4; ++ell) {
    ExplicitBound b;
    b.ell = ell;
    b.q = smallest_prime_power_root(n, 2 * ell + 1);
    b.rounded_n = ipow(b.q, 2 * ell + 1);
    b.value = ell * k * ipow(b.q, ell + 1);
    b.valid = k <= b.q / (ell * ell);
    rep.explicit_bounds.push_back(b);
  }
  rep.random_order = std::pow(static_cast<double>(k), 1.5) * std::sqrt(static_cast<double>(n)) *
                     std::log(static_cast<double>(n));
  return rep;
}

std::vector<FigurePoint> figure1_data() {
  std::vector<FigurePoint> pts;
  auto add = [&pts](const char* series, double e, double d) { pts.push_back({series, e, d}); };

  add("lower_bound", 0, 0.5);
  add("lower_bound", 0.5, 0.5);
  add("lower_bound", 1, 1);

  add("prior_work", 0, 0.5);
  add("prior_work", 0.15, 0.8);
  add("prior_work", 0.2, 0.8);
  add("prior_work", 0.21875, 0.875);
  add("prior_work", 0.25, 0.875);
  add("prior_work", 0.25, 0.91666666);
  add("prior_work", 0.5, 0.999);
  add("prior_work", 1, 0.99999999);

  add("theorem1_random", 0, 0.5);
  add("theorem1_random", 1.0 / 3, 1);

  for (uint32_t ell = 1; ell <= 4; ++ell) {
    std::string series = "theorem3_l" + std::to_string(ell);
    double w = 2.0 * ell + 1;
    add(series.c_str(), 0, (ell + 1) / w);
    add(series.c_str(), 1 / w, (ell + 2) / w);
  }
  return pts;
}

std::string bound_report_csv(const BoundReport& rep) {
  std::ostringstream out;
  out << "name,value,exact,valid\n";
  out << "lower_k_minus_1," << rep.lower_k_minus_1 << ",1,1\n";
  out << "lower_order," << fmt(rep.lower_order) << ",0,1\n";
  for (const ExplicitBound& b : rep.explicit_bounds)
    out << "explicit_l" << b.ell << "_q" << b.q << "_n" << b.rounded_n << "," << b.value << ",1,"
        << (b.valid ? 1 : 0) << "\n";
  out << "random_order," << fmt(rep.random_order) << ",0,1\n";
  return out.str();
}

std::string figure1_csv() {
  std::ostringstream out;
  out << "series,epsilon,delta\n";
  for (const FigurePoint& p : figure1_data())
    out << p.series << "," << fmt(p.epsilon) << "," << fmt(p.delta) << "\n";
  return out.str();
}

}  // namespace batchcode
