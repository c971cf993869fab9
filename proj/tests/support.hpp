#pragma once

// Test-side generators and brute-force oracles. The oracles work on explicit
// vector sets and never call the library's rank, rref or enumeration code.

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "mdsrepair/codes.hpp"
#include "mdsrepair/gf.hpp"
#include "mdsrepair/linalg.hpp"

namespace testing_support {

using namespace mdsrepair;

inline TowerPtr tower(std::uint32_t p, std::uint32_t m, std::uint32_t ell) {
  return std::make_shared<const FieldTower>(FieldTower::build(p, m, ell));
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  Symbol symbol(std::uint32_t q) { return static_cast<Symbol>(uniform(0, q - 1)); }
  Vec vec(std::uint32_t q, std::size_t len) {
    Vec v(len);
    for (auto& x : v) x = symbol(q);
    return v;
  }
  Matrix matrix(std::uint32_t q, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = symbol(q);
    return m;
  }
  /// Uniform over full-row-rank matrices by rejection.
  Matrix full_rank(const BaseField& f, std::size_t rows, std::size_t cols) {
    while (true) {
      Matrix m = matrix(f.order(), rows, cols);
      if (rank(f, m) == rows) return m;
    }
  }
  Subspace subspace(const BaseField& f, std::size_t ambient, std::size_t dim) {
    return Subspace::span(f, full_rank(f, dim, ambient));
  }

 private:
  std::mt19937_64 rng_;
};

/// Every vector of F_q^len, in little-endian counter order.
inline std::vector<Vec> all_vectors(std::uint32_t q, std::size_t len) {
  std::vector<Vec> out;
  Vec v(len, 0);
  while (true) {
    out.push_back(v);
    std::size_t k = 0;
    while (k < len && ++v[k] == q) v[k++] = 0;
    if (k == len) break;
  }
  return out;
}

/// All F_q-combinations of the generators.
inline std::set<Vec> closure(const BaseField& f, const std::vector<Vec>& gens, std::size_t len) {
  std::set<Vec> out;
  for (const Vec& coeffs : all_vectors(f.order(), gens.size())) {
    Vec v(len, 0);
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (std::size_t c = 0; c < len; ++c) v[c] = f.add(v[c], f.mul(coeffs[g], gens[g][c]));
    out.insert(std::move(v));
  }
  return out;
}

inline std::vector<Vec> rows_of(const Matrix& m) {
  std::vector<Vec> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

inline std::vector<Vec> columns_of(const Matrix& m) {
  std::vector<Vec> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

inline std::set<Vec> row_space(const BaseField& f, const Matrix& m) { return closure(f, rows_of(m), m.cols()); }

inline std::set<Vec> column_space(const BaseField& f, const Matrix& m) {
  return closure(f, columns_of(m), m.rows());
}

/// log_q of a set size that must be a power of q.
inline std::size_t log_q(std::uint64_t size, std::uint32_t q) {
  std::size_t d = 0;
  while (size > 1) {
    size /= q;
    ++d;
  }
  return d;
}

inline std::size_t oracle_rank(const BaseField& f, const Matrix& m) {
  return log_q(row_space(f, m).size(), f.order());
}

inline std::size_t common(const std::set<Vec>& a, const std::set<Vec>& b) {
  std::size_t n = 0;
  for (const Vec& v : a) n += b.count(v);
  return n;
}

/// Every dim-k subspace of F_q^d as an explicit vector set.
inline std::vector<std::set<Vec>> all_subspaces(const BaseField& f, std::size_t d, std::size_t k) {
  std::set<std::set<Vec>> found;
  const auto vecs = all_vectors(f.order(), d);
  std::uint64_t want = 1;
  for (std::size_t i = 0; i < k; ++i) want *= f.order();
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<Vec> gens;
    for (std::size_t i : idx) gens.push_back(vecs[i]);
    auto s = closure(f, gens, d);
    if (s.size() == want) found.insert(std::move(s));
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == vecs.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  return {found.begin(), found.end()};
}

/// Random skeleton with n nodes of dim ℓ in F_q^{rℓ}; may or may not be MDS.
inline CodeSkeleton random_skeleton(Gen& g, const TowerPtr& t, std::size_t r, std::size_t n) {
  std::vector<Subspace> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(g.subspace(t->base(), r * t->ell(), t->ell()));
  return CodeSkeleton(t, r, std::move(nodes));
}

inline Realization realization_of(const CodeSkeleton& s) {
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < s.n(); ++i) blocks.push_back(s.node_basis(i));
  return Realization::from_blocks(s.tower_ptr(), s.r(), std::move(blocks));
}

/// A random feasible repair matrix for node i.
inline Matrix feasible_matrix(Gen& g, const CodeSkeleton& s, std::size_t i) {
  const BaseField& f = s.field();
  while (true) {
    Matrix m = g.matrix(f.order(), s.ell(), s.ambient_dim());
    if (rank(f, multiply(f, m, s.node_basis(i))) == s.ell()) return m;
  }
}

}  // namespace testing_support
