#pragma once

// Exact linear algebra over F_q. Vectors are rows; a subspace is the row
// space of its canonical reduced row-echelon basis.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mdsrepair/error.hpp"
#include "mdsrepair/gf.hpp"
#include "mdsrepair/matrix.hpp"

namespace mdsrepair {

Matrix multiply(const BaseField& f, const Matrix& a, const Matrix& b);
/// a·vᵀ as a vector of length rows(a).
Vec apply(const BaseField& f, const Matrix& a, std::span<const Symbol> v);
Matrix negate(const BaseField& f, const Matrix& a);
Symbol dot(const BaseField& f, std::span<const Symbol> a, std::span<const Symbol> b);

struct RrefResult {
  Matrix reduced;  // same shape as the input, zero rows last
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const BaseField& f, const Matrix& a);
std::size_t rank(const BaseField& f, const Matrix& a);

/// Rank of a row-major rows×cols buffer, destroying its contents. The
/// allocation-free path used by the brute-force scans.
std::size_t rank_in_place(const BaseField& f, std::span<Symbol> data, std::size_t rows,
                          std::size_t cols);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const BaseField& f, const Matrix& a);

/// Number of nonzero columns.
std::size_t nonzero_columns(const Matrix& a);

/// Scales v so that its first nonzero entry is 1. The zero vector is returned unchanged.
Vec canonical_point(const BaseField& f, std::span<const Symbol> v);

class Subspace {
 public:
  /// The zero subspace of F_q^ambient.
  explicit Subspace(std::size_t ambient = 0);

  /// Row space of `generators` (which may be rank deficient).
  static Subspace span(const BaseField& f, const Matrix& generators);
  static Subspace full(std::size_t ambient);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  /// Canonical RREF basis, dim × ambient, no zero rows.
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : a·vᵀ = 0}, a subspace of F_q^{cols(a)}.
Subspace kernel(const BaseField& f, const Matrix& a);
/// The subspace of covectors vanishing on s.
Subspace annihilator(const BaseField& f, const Subspace& s);
Subspace sum(const BaseField& f, const Subspace& a, const Subspace& b);
Subspace intersection(const BaseField& f, const Subspace& a, const Subspace& b);
/// dim(a) + dim(b) − dim(a + b). Throws AmbientMismatch.
std::size_t intersect_dim(const BaseField& f, const Subspace& a, const Subspace& b);
/// Throws AmbientMismatch.
bool contains(const BaseField& f, const Subspace& s, std::span<const Symbol> v);

/// Gaussian binomial coefficient; 0 when a < s. Throws Overflow past 2^64.
std::uint64_t gaussian_binomial(std::uint64_t a, std::uint64_t s, std::uint64_t q);

/// Enumerates every k×d matrix in reduced row-echelon form of rank k over
/// F_q exactly once. Order: pivot-column sets lexicographically, then the
/// free entries as a little-endian base-q counter (free entries listed row by
/// row, columns ascending). Any index range can be scanned independently.
class RrefEnumerator {
 public:
  RrefEnumerator(std::size_t k, std::size_t d, std::uint32_t q);

  std::size_t rows() const noexcept { return k_; }
  std::size_t cols() const noexcept { return d_; }
  /// gaussian_binomial(d, k, q).
  std::uint64_t size() const noexcept { return total_; }

  Matrix at(std::uint64_t index) const;

  /// Calls fn(index, matrix) for every index in [begin, end).
  template <class Fn>
  void for_each(std::uint64_t begin, std::uint64_t end, Fn&& fn) const;

 private:
  struct PivotBlock {
    std::vector<std::size_t> pivots;
    std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
    std::uint64_t first = 0;
    std::uint64_t count = 0;
  };

  std::size_t block_of(std::uint64_t index) const;
  Matrix skeleton(const PivotBlock& block) const;

  std::size_t k_;
  std::size_t d_;
  std::uint32_t q_;
  std::uint64_t total_ = 0;
  std::vector<PivotBlock> blocks_;
};

template <class Fn>
void RrefEnumerator::for_each(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
  end = std::min(end, total_);
  if (begin >= end) return;
  std::uint64_t index = begin;
  for (std::size_t b = block_of(begin); b < blocks_.size() && index < end; ++b) {
    const PivotBlock& block = blocks_[b];
    Matrix m = skeleton(block);
    // Position the counter at (index − block.first).
    std::uint64_t offset = index - block.first;
    std::vector<Symbol> digits(block.free.size(), 0);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      digits[i] = static_cast<Symbol>(offset % q_);
      offset /= q_;
      m(block.free[i].first, block.free[i].second) = digits[i];
    }
    const std::uint64_t stop = std::min(end, block.first + block.count);
    while (true) {
      fn(index, static_cast<const Matrix&>(m));
      if (++index >= stop) break;
      for (std::size_t i = 0; i < digits.size(); ++i) {
        const auto [r, c] = block.free[i];
        if (++digits[i] < q_) {
          m(r, c) = digits[i];
          break;
        }
        digits[i] = 0;
        m(r, c) = 0;
      }
    }
  }
}

}  // namespace mdsrepair
