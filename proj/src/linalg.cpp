#include "mdsrepair/linalg.hpp"

#include <algorithm>
#include <string>

namespace mdsrepair {

Matrix multiply(const BaseField& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::BadShape, "multiply: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const Symbol x = a(i, t);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(t, j)));
    }
  return out;
}

Vec apply(const BaseField& f, const Matrix& a, std::span<const Symbol> v) {
  if (a.cols() != v.size()) fail(ErrorKind::BadShape, "apply: vector length differs from column count");
  Vec out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(f, a.row(i), v);
  return out;
}

Matrix negate(const BaseField& f, const Matrix& a) {
  std::vector<Symbol> data = a.entries();
  for (Symbol& x : data) x = f.neg(x);
  return Matrix(a.rows(), a.cols(), std::move(data));
}

Symbol dot(const BaseField& f, std::span<const Symbol> a, std::span<const Symbol> b) {
  Symbol acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

RrefResult rref(const BaseField& f, const Matrix& a) {
  RrefResult res{a, 0, {}};
  Matrix& m = res.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r) std::swap_ranges(m.row(pivot).begin(), m.row(pivot).end(), m.row(r).begin());
    const Symbol scale = f.inv(m(r, c));
    for (Symbol& x : m.row(r)) x = f.mul(x, scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Symbol factor = m(i, c);
      auto src = m.row(r);
      auto dst = m.row(i);
      for (std::size_t j = c; j < m.cols(); ++j) dst[j] = f.sub(dst[j], f.mul(factor, src[j]));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank_in_place(const BaseField& f, std::span<Symbol> data, std::size_t rows,
                          std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && data[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(data[pivot * cols + j], data[r * cols + j]);
    const Symbol scale = f.inv(data[r * cols + c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Symbol x = data[i * cols + c];
      if (x == 0) continue;
      const Symbol factor = f.mul(x, scale);
      for (std::size_t j = c; j < cols; ++j)
        data[i * cols + j] = f.sub(data[i * cols + j], f.mul(factor, data[r * cols + j]));
    }
    ++r;
  }
  return r;
}

std::size_t rank(const BaseField& f, const Matrix& a) {
  std::vector<Symbol> data = a.entries();
  return rank_in_place(f, data, a.rows(), a.cols());
}

std::optional<Matrix> inverse(const BaseField& f, const Matrix& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::BadShape, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const RrefResult res = rref(f, hstack(a, Matrix::identity(n)));
  if (n > 0 && (res.rank < n || res.pivots[n - 1] != n - 1)) return std::nullopt;
  return column_slice(res.reduced, n, n);
}

std::size_t nonzero_columns(const Matrix& a) {
  std::size_t count = 0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (a(r, c) != 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

Vec canonical_point(const BaseField& f, std::span<const Symbol> v) {
  Vec out(v.begin(), v.end());
  const auto lead = std::find_if(out.begin(), out.end(), [](Symbol x) { return x != 0; });
  if (lead == out.end() || *lead == 1) return out;
  const Symbol scale = f.inv(*lead);
  for (Symbol& x : out) x = f.mul(x, scale);
  return out;
}

// --- Subspace --------------------------------------------------------------

Subspace::Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

Subspace Subspace::span(const BaseField& f, const Matrix& generators) {
  RrefResult res = rref(f, generators);
  Subspace s(generators.cols());
  s.basis_ = Matrix(res.rank, generators.cols(),
                    std::vector<Symbol>(res.reduced.entries().begin(),
                                        res.reduced.entries().begin() +
                                            static_cast<std::ptrdiff_t>(res.rank * generators.cols())));
  s.pivots_ = std::move(res.pivots);
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s(ambient);
  s.basis_ = Matrix::identity(ambient);
  s.pivots_.resize(ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
  return s;
}

Subspace kernel(const BaseField& f, const Matrix& a) {
  const RrefResult res = rref(f, a);
  const std::size_t d = a.cols();
  std::vector<bool> is_pivot(d, false);
  for (std::size_t c : res.pivots) is_pivot[c] = true;
  Matrix gens(d - res.rank, d);
  std::size_t row = 0;
  for (std::size_t free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    gens(row, free) = 1;
    for (std::size_t i = 0; i < res.rank; ++i) gens(row, res.pivots[i]) = f.neg(res.reduced(i, free));
    ++row;
  }
  return Subspace::span(f, gens);
}

Subspace annihilator(const BaseField& f, const Subspace& s) { return kernel(f, s.basis()); }

Subspace sum(const BaseField& f, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::AmbientMismatch, "sum of subspaces");
  return Subspace::span(f, vstack(a.basis(), b.basis()));
}

Subspace intersection(const BaseField& f, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::AmbientMismatch, "intersection of subspaces");
  return annihilator(f, sum(f, annihilator(f, a), annihilator(f, b)));
}

std::size_t intersect_dim(const BaseField& f, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::AmbientMismatch, "intersect_dim");
  return a.dim() + b.dim() - rank(f, vstack(a.basis(), b.basis()));
}

bool contains(const BaseField& f, const Subspace& s, std::span<const Symbol> v) {
  if (v.size() != s.ambient_dim()) fail(ErrorKind::AmbientMismatch, "contains: vector length");
  Vec w(v.begin(), v.end());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Symbol coef = w[s.pivots()[i]];
    if (coef == 0) continue;
    const auto row = s.basis().row(i);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.sub(w[j], f.mul(coef, row[j]));
  }
  return std::all_of(w.begin(), w.end(), [](Symbol x) { return x == 0; });
}

// --- counting and enumeration ----------------------------------------------

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e) {
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    acc *= base;
    if (acc > ~std::uint64_t{0}) fail(ErrorKind::Overflow, "power exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::uint64_t gaussian_binomial(std::uint64_t a, std::uint64_t s, std::uint64_t q) {
  if (q < 2) fail(ErrorKind::BadParameters, "gaussian_binomial needs q >= 2");
  if (a < s) return 0;
  // Partial products prod_{i<j} (q^{a−i} − 1)/(q^{i+1} − 1) are themselves
  // Gaussian binomials, so each step divides exactly.
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < s; ++i) {
    result *= checked_pow(q, a - i) - 1;
    result /= checked_pow(q, i + 1) - 1;
    if (result > ~std::uint64_t{0}) fail(ErrorKind::Overflow, "gaussian binomial exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

RrefEnumerator::RrefEnumerator(std::size_t k, std::size_t d, std::uint32_t q) : k_(k), d_(d), q_(q) {
  if (k > d) fail(ErrorKind::BadShape, "enumerate_rref needs k <= d");
  if (q < 2) fail(ErrorKind::BadParameters, "enumerate_rref needs q >= 2");
  std::vector<std::size_t> pivots(k);
  for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
  while (true) {
    PivotBlock block;
    block.pivots = pivots;
    std::vector<bool> is_pivot(d, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = pivots[r] + 1; c < d; ++c)
        if (!is_pivot[c]) block.free.emplace_back(r, c);
    block.first = total_;
    block.count = checked_pow(q, block.free.size());
    if (total_ > ~std::uint64_t{0} - block.count) fail(ErrorKind::Overflow, "enumeration size");
    total_ += block.count;
    blocks_.push_back(std::move(block));

    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pivots[i - 1] == d - k + (i - 1)) --i;
    if (i == 0) break;
    ++pivots[i - 1];
    for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

std::size_t RrefEnumerator::block_of(std::uint64_t index) const {
  const auto it = std::upper_bound(blocks_.begin(), blocks_.end(), index,
                                   [](std::uint64_t x, const PivotBlock& b) { return x < b.first; });
  return static_cast<std::size_t>(it - blocks_.begin()) - 1;
}

Matrix RrefEnumerator::skeleton(const PivotBlock& block) const {
  Matrix m(k_, d_);
  for (std::size_t r = 0; r < k_; ++r) m(r, block.pivots[r]) = 1;
  return m;
}

Matrix RrefEnumerator::at(std::uint64_t index) const {
  if (index >= total_) fail(ErrorKind::BadShape, "enumeration index out of range");
  const PivotBlock& block = blocks_[block_of(index)];
  Matrix m = skeleton(block);
  std::uint64_t offset = index - block.first;
  for (const auto& [r, c] : block.free) {
    m(r, c) = static_cast<Symbol>(offset % q_);
    offset /= q_;
  }
  return m;
}

}  // namespace mdsrepair
