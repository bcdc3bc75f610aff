#include "linalg.hpp"

#include <algorithm>

namespace batchcode {

namespace {

void check_dim(const Field& f, const Vec& v, uint32_t dim) {
  if (v.size() != dim)
    fail(Errc::DimensionMismatch,
         "vector has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(dim));
  for (Elem c : v)
    if (c >= f.q()) fail(Errc::IndexOutOfRange, "coordinate " + std::to_string(c) + " outside [0, q)");
}

// In-place reduced row echelon form; returns pivot columns.  Zero rows are
// dropped.
std::vector<uint32_t> rref(const Field& f, std::vector<Vec>& rows) {
  std::vector<uint32_t> pivots;
  if (rows.empty()) return pivots;
  uint32_t dim = static_cast<uint32_t>(rows[0].size());
  size_t r = 0;
  for (uint32_t col = 0; col < dim && r < rows.size(); ++col) {
    size_t sel = r;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Elem scale = f.inv(rows[r][col]);
    for (uint32_t j = col; j < dim; ++j) rows[r][j] = f.mul(rows[r][j], scale);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Elem c = rows[i][col];
      for (uint32_t j = col; j < dim; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[r][j]));
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

uint64_t vector_index(const Field& f, const Vec& v) {
  check_dim(f, v, static_cast<uint32_t>(v.size()));
  uint64_t idx = 0;
  for (Elem c : v) idx = idx * f.q() + c;
  return idx;
}

Vec index_vector(const Field& f, uint32_t dim, uint64_t index) {
  uint64_t total = 1;
  for (uint32_t i = 0; i < dim; ++i) total *= f.q();
  if (index >= total) fail(Errc::IndexOutOfRange, "vector index " + std::to_string(index) + " out of range");
  Vec v(dim);
  for (uint32_t i = dim; i-- > 0;) {
    v[i] = static_cast<Elem>(index % f.q());
    index /= f.q();
  }
  return v;
}

uint32_t rank(const Field& f, std::vector<Vec> rows) {
  for (size_t i = 0; i < rows.size(); ++i) check_dim(f, rows[i], static_cast<uint32_t>(rows[0].size()));
  rref(f, rows);
  return static_cast<uint32_t>(rows.size());
}

Subspace::Subspace(const Field& f, uint32_t ambient_dim, const std::vector<Vec>& spanning) {
  ambient_dim_ = ambient_dim;
  basis_ = spanning;
  for (const Vec& v : basis_) check_dim(f, v, ambient_dim);
  pivots_ = rref(f, basis_);
}

Subspace Subspace::zero(uint32_t ambient_dim) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  return s;
}

Vec Subspace::reduce(const Field& f, Vec v) const {
  check_dim(f, v, ambient_dim_);
  for (size_t i = 0; i < basis_.size(); ++i) {
    Elem c = v[pivots_[i]];
    if (c == 0) continue;
    for (uint32_t j = pivots_[i]; j < ambient_dim_; ++j) v[j] = f.sub(v[j], f.mul(c, basis_[i][j]));
  }
  return v;
}

bool Subspace::contains(const Field& f, const Vec& v) const {
  Vec r = reduce(f, v);
  for (Elem c : r)
    if (c) return false;
  return true;
}

Subspace intersect(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    fail(Errc::DimensionMismatch, "intersect: ambient dimensions differ");
  uint32_t d = a.ambient_dim();
  // Zassenhaus: row reduce [A|A; B|0]; rows whose left half vanished carry
  // an intersection basis in the right half.
  std::vector<Vec> block;
  for (const Vec& v : a.basis()) {
    Vec row(2 * d);
    std::copy(v.begin(), v.end(), row.begin());
    std::copy(v.begin(), v.end(), row.begin() + d);
    block.push_back(std::move(row));
  }
  for (const Vec& v : b.basis()) {
    Vec row(2 * d, 0);
    std::copy(v.begin(), v.end(), row.begin());
    block.push_back(std::move(row));
  }
  if (block.empty()) return Subspace::zero(d);
  rref(f, block);
  std::vector<Vec> meet;
  for (const Vec& row : block) {
    bool left_zero = true;
    for (uint32_t j = 0; j < d; ++j)
      if (row[j]) {
        left_zero = false;
        break;
      }
    if (!left_zero) continue;
    Vec right(row.begin() + d, row.end());
    bool right_zero = true;
    for (Elem c : right)
      if (c) {
        right_zero = false;
        break;
      }
    if (!right_zero) meet.push_back(std::move(right));
  }
  return Subspace(f, d, meet);
}

AffineSubspace coset_through(const Field& f, const Subspace& s, const Vec& point) {
  return AffineSubspace{s, s.reduce(f, point)};
}

std::vector<Vec> enumerate_coset(const Field& f, const AffineSubspace& a) {
  uint32_t d = a.direction.ambient_dim();
  check_dim(f, a.shift, d);
  uint32_t k = a.direction.dim();
  uint64_t count = 1;
  for (uint32_t i = 0; i < k; ++i) count *= f.q();
  std::vector<Vec> points;
  points.reserve(count);
  std::vector<Elem> coeff(k, 0);
  for (uint64_t t = 0; t < count; ++t) {
    Vec pt = a.shift;
    for (uint32_t i = 0; i < k; ++i) {
      if (coeff[i] == 0) continue;
      for (uint32_t j = 0; j < d; ++j) pt[j] = f.add(pt[j], f.mul(coeff[i], a.direction.basis()[i][j]));
    }
    points.push_back(std::move(pt));
    for (uint32_t i = k; i-- > 0;) {
      if (++coeff[i] < f.q()) break;
      coeff[i] = 0;
    }
  }
  std::sort(points.begin(), points.end(),
            [&](const Vec& x, const Vec& y) { return vector_index(f, x) < vector_index(f, y); });
  return points;
}

std::vector<AffineSubspace> cosets_of(const Field& f, const Subspace& s) {
  uint32_t d = s.ambient_dim();
  uint64_t total = 1;
  for (uint32_t i = 0; i < d; ++i) total *= f.q();
  std::vector<AffineSubspace> out;
  for (uint64_t idx = 0; idx < total; ++idx) {
    Vec v = index_vector(f, d, idx);
    Vec rep = s.reduce(f, v);
    if (rep == v) out.push_back(AffineSubspace{s, std::move(rep)});
  }
  return out;  // index-ascending scan => sorted by canonical shift index
}

}  // namespace batchcode
