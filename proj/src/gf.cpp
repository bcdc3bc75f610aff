#include "gf.hpp"

#include <numeric>

namespace batchcode {

namespace {

std::vector<uint32_t> to_digits(uint32_t code, uint32_t p, uint32_t deg) {
  std::vector<uint32_t> d(deg);
  for (uint32_t i = 0; i < deg; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

uint32_t from_digits(const std::vector<uint32_t>& d, uint32_t p) {
  uint32_t code = 0;
  for (size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

// Remainder of a mod b over GF(p); coefficients low-to-high, b monic-izable.
std::vector<uint32_t> poly_mod(std::vector<uint32_t> a, const std::vector<uint32_t>& b, uint32_t p) {
  size_t db = b.size();
  while (db > 0 && b[db - 1] == 0) --db;
  while (a.size() >= db && !a.empty()) {
    if (a.back() == 0) {
      a.pop_back();
      continue;
    }
    // b need not be monic here: scale by lead(a) * lead(b)^-1 mod p (Fermat).
    uint32_t lead_b = b[db - 1];
    uint32_t inv_b = 1;
    for (uint32_t k = 0; k < p - 2; ++k) inv_b = inv_b * lead_b % p;
    uint32_t c = a.back() * inv_b % p;
    size_t shift = a.size() - db;
    for (size_t i = 0; i < db; ++i) {
      uint32_t sub = c * b[i] % p;
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    a.pop_back();
  }
  return a;
}

bool poly_is_zero(const std::vector<uint32_t>& a) {
  for (uint32_t c : a)
    if (c) return false;
  return true;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool poly_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
  uint32_t deg = static_cast<uint32_t>(f.size()) - 1;
  if (deg == 1) return true;
  for (uint32_t e = 1; 2 * e <= deg; ++e) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < e; ++i) count *= p;
    for (uint64_t t = 0; t < count; ++t) {
      std::vector<uint32_t> g(e + 1, 0);
      uint64_t tt = t;
      for (uint32_t i = 0; i < e; ++i) {
        g[i] = static_cast<uint32_t>(tt % p);
        tt /= p;
      }
      g[e] = 1;
      if (poly_is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

std::vector<uint32_t> distinct_prime_factors(uint32_t n) {
  std::vector<uint32_t> out;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime_power(uint32_t q, uint32_t* p_out, uint32_t* deg_out) {
  if (q < 2) return false;
  uint32_t p = q;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  uint32_t deg = 0;
  uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++deg;
  }
  if (rest != 1) return false;
  if (p_out) *p_out = p;
  if (deg_out) *deg_out = deg;
  return true;
}

Field::Field(uint32_t q) : q_(q) {
  if (!is_prime_power(q, &p_, &deg_))
    fail(Errc::NotPrimePower, "q = " + std::to_string(q) + " is not a prime power");

  // Lexicographically smallest monic irreducible: scan coefficient lists
  // [c0..c_{deg-1}] in ascending lexicographic order, c0 most significant.
  uint64_t count = 1;
  for (uint32_t i = 0; i < deg_; ++i) count *= p_;
  for (uint64_t t = 0; t < count; ++t) {
    std::vector<uint32_t> f(deg_ + 1, 0);
    uint64_t tt = t;
    for (uint32_t i = deg_; i-- > 0;) {
      f[i] = static_cast<uint32_t>(tt % p_);
      tt /= p_;
    }
    f[deg_] = 1;
    if (poly_irreducible(f, p_)) {
      modulus_ = f;
      break;
    }
  }

  qm1_primes_ = distinct_prime_factors(q_ - 1);

  // alpha = smallest code generating the multiplicative group.  a has order
  // q-1 iff a^((q-1)/r) != 1 for every prime r | q-1.
  for (Elem a = 1; a < q_; ++a) {
    bool primitive = true;
    for (uint32_t r : qm1_primes_) {
      uint32_t e = (q_ - 1) / r;
      Elem acc = 1;
      Elem base = a;
      while (e) {
        if (e & 1) acc = mul_poly(acc, base);
        base = mul_poly(base, base);
        e >>= 1;
      }
      if (acc == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      alpha_ = a;
      break;
    }
  }

  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  Elem cur = 1;
  for (uint32_t i = 0; i + 1 < q_; ++i) {
    exp_[i] = cur;
    log_[cur] = i;
    cur = mul_poly(cur, alpha_);
  }
}

void Field::check(Elem a) const {
  if (a >= q_) fail(Errc::IndexOutOfRange, "element code " + std::to_string(a) + " outside [0, q)");
}

Elem Field::mul_poly(Elem a, Elem b) const {
  if (deg_ == 1) return static_cast<Elem>(static_cast<uint64_t>(a) * b % p_);
  std::vector<uint32_t> da = to_digits(a, p_, deg_);
  std::vector<uint32_t> db = to_digits(b, p_, deg_);
  std::vector<uint32_t> prod(2 * deg_ - 1, 0);
  for (uint32_t i = 0; i < deg_; ++i)
    for (uint32_t j = 0; j < deg_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  std::vector<uint32_t> rem = poly_mod(std::move(prod), modulus_, p_);
  rem.resize(deg_, 0);
  return from_digits(rem, p_);
}

Elem Field::add(Elem a, Elem b) const {
  check(a);
  check(b);
  if (p_ == 2) return a ^ b;
  if (deg_ == 1) return (a + b) % p_;
  Elem out = 0, mult = 1;
  for (uint32_t i = 0; i < deg_; ++i) {
    out += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return out;
}

Elem Field::neg(Elem a) const {
  check(a);
  if (p_ == 2) return a;
  if (deg_ == 1) return a == 0 ? 0 : p_ - a;
  Elem out = 0, mult = 1;
  for (uint32_t i = 0; i < deg_; ++i) {
    uint32_t d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * mult;
    a /= p_;
    mult *= p_;
  }
  return out;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  check(a);
  check(b);
  if (a == 0 || b == 0) return 0;
  uint32_t s = log_[a] + log_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return exp_[s];
}

Elem Field::inv(Elem a) const {
  check(a);
  if (a == 0) fail(Errc::DivisionByZero, "inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, int64_t e) const {
  check(a);
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) fail(Errc::DivisionByZero, "negative power of zero");
    return 0;
  }
  int64_t m = q_ - 1;
  int64_t red = ((e % m) + m) % m;
  return exp_[static_cast<uint32_t>(log_[a]) * static_cast<uint64_t>(red) % (q_ - 1)];
}

uint32_t Field::element_order(Elem a) const {
  check(a);
  if (a == 0) fail(Errc::DivisionByZero, "order of zero is undefined");
  uint32_t e = q_ - 1;
  for (uint32_t r : qm1_primes_) {
    while (e % r == 0 && pow(a, e / r) == 1) e /= r;
  }
  return e;
}

}  // namespace batchcode
