#pragma once

#include <cstdint>
#include <vector>

#include "gf.hpp"

namespace batchcode {

using Vec = std::vector<Elem>;

// Bijection between vectors of F_q^dim and [0, q^dim); the leftmost
// coordinate is the most significant digit, so index order is lexicographic
// coordinate order.
uint64_t vector_index(const Field& f, const Vec& v);
Vec index_vector(const Field& f, uint32_t dim, uint64_t index);

// Rank via Gaussian elimination; rows may be dependent or zero.
uint32_t rank(const Field& f, std::vector<Vec> rows);

// Linear subspace held as its reduced row echelon basis (pivots 1, pivot
// columns cleared), which is a unique representative: two spans are equal
// iff their bases compare equal.
class Subspace {
 public:
  Subspace(const Field& f, uint32_t ambient_dim, const std::vector<Vec>& spanning);
  static Subspace zero(uint32_t ambient_dim);

  uint32_t ambient_dim() const { return ambient_dim_; }
  uint32_t dim() const { return static_cast<uint32_t>(basis_.size()); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<uint32_t>& pivots() const { return pivots_; }

  bool contains(const Field& f, const Vec& v) const;
  // Subtracts the unique basis combination that clears every pivot
  // coordinate of v.  The residual is the lexicographically smallest member
  // of the coset v + *this, and is zero iff v lies in the subspace.
  Vec reduce(const Field& f, Vec v) const;

  bool operator==(const Subspace& o) const { return ambient_dim_ == o.ambient_dim_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  Subspace() = default;
  uint32_t ambient_dim_ = 0;
  std::vector<Vec> basis_;
  std::vector<uint32_t> pivots_;
};

Subspace intersect(const Field& f, const Subspace& a, const Subspace& b);

// Coset shift + direction; the stored shift is always the canonical
// (lexicographically smallest) coset member.
struct AffineSubspace {
  Subspace direction;
  Vec shift;
};

AffineSubspace coset_through(const Field& f, const Subspace& s, const Vec& point);
// All q^dim(s) coset members, sorted by vector index.
std::vector<Vec> enumerate_coset(const Field& f, const AffineSubspace& a);
// All q^(ambient-dim) cosets of s, sorted by canonical shift index.
std::vector<AffineSubspace> cosets_of(const Field& f, const Subspace& s);

}  // namespace batchcode
