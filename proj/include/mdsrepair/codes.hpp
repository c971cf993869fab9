#pragma once

// MDS array codes described by their parity-check blocks H_1, …, H_n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdsrepair/gf.hpp"
#include "mdsrepair/linalg.hpp"

namespace mdsrepair {

/// Node subspaces H_1, …, H_n ≤ F_q^{rℓ}, each of dimension ℓ. Node indices
/// are 0-based in the API and 1-based in every file and report.
class CodeSkeleton {
 public:
  /// Throws WrongAmbient, WrongNodeDim, TooFewNodes. Does not check MDS.
  CodeSkeleton(TowerPtr tower, std::size_t r, std::vector<Subspace> nodes);

  const FieldTower& tower() const noexcept { return *tower_; }
  const TowerPtr& tower_ptr() const noexcept { return tower_; }
  const BaseField& field() const noexcept { return tower_->base(); }
  std::size_t ell() const noexcept { return tower_->ell(); }
  std::size_t r() const noexcept { return r_; }
  std::size_t n() const noexcept { return nodes_.size(); }
  std::size_t ambient_dim() const noexcept { return r_ * ell(); }

  const Subspace& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<Subspace>& nodes() const noexcept { return nodes_; }
  /// Basis of node i as columns, an rℓ×ℓ matrix.
  Matrix node_basis(std::size_t i) const { return transpose(nodes_.at(i).basis()); }

 private:
  TowerPtr tower_;
  std::size_t r_;
  std::vector<Subspace> nodes_;
};

using NodeSet = std::vector<std::size_t>;

/// nullopt when every r nodes span F_q^{rℓ}; otherwise the lexicographically
/// first failing r-subset (0-based).
std::optional<NodeSet> check_mds(const CodeSkeleton& s, unsigned jobs = 1);

/// Cross-check of check_mds through the block criterion: every r-subset
/// block matrix H_J is invertible.
bool blocks_invertible(const BaseField& f, const std::vector<Matrix>& blocks, std::size_t r);

/// A projective point, stored as its canonical representative.
using Point = Vec;
using ColumnSet = std::vector<Point>;

/// A parity-check matrix H = [H_1 … H_n] with the induced projective column sets.
class Realization {
 public:
  const CodeSkeleton& skeleton() const noexcept { return skeleton_; }
  const BaseField& field() const noexcept { return skeleton_.field(); }
  std::size_t n() const noexcept { return skeleton_.n(); }
  std::size_t r() const noexcept { return skeleton_.r(); }
  std::size_t ell() const noexcept { return skeleton_.ell(); }

  /// H_i, rℓ×ℓ.
  const Matrix& block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }
  /// X_i in column order.
  const ColumnSet& column_set(std::size_t i) const { return column_sets_.at(i); }
  const std::vector<ColumnSet>& column_sets() const noexcept { return column_sets_; }

  /// The full rℓ×nℓ parity-check matrix.
  Matrix parity_check() const;

  /// Builds a realization from explicit blocks (columns may be any nonzero
  /// multiples of their points). Throws WrongAmbient, BadShape, DuplicatePoint,
  /// NotSpanning, TooFewNodes.
  static Realization from_blocks(TowerPtr tower, std::size_t r, std::vector<Matrix> blocks);

 private:
  friend Realization realize(const CodeSkeleton& s, std::vector<ColumnSet> column_sets);
  Realization(CodeSkeleton skeleton, std::vector<Matrix> blocks, std::vector<ColumnSet> column_sets);

  CodeSkeleton skeleton_;
  std::vector<Matrix> blocks_;
  std::vector<ColumnSet> column_sets_;
};

/// Column t of H_i is the canonical representative of the t-th point of X_i.
/// Throws PointOutsideNode, DuplicatePoint, NotSpanning, BadShape.
Realization realize(const CodeSkeleton& s, std::vector<ColumnSet> column_sets);

/// (C_1, …, C_n), each C_i ∈ F_q^ℓ.
using Codeword = std::vector<Vec>;

/// Σ H_i C_i.
Vec syndrome(const Realization& re, const Codeword& cw);

/// Seeded uniform sampler over the code ker(H). The generator is
/// std::mt19937_64 with rejection sampling of each kernel coefficient, see
/// kCodewordRng.
class CodewordSampler {
 public:
  /// Throws NotMds.
  explicit CodewordSampler(const Realization& re);

  Codeword sample(std::uint64_t seed) const;
  Codeword from_coefficients(std::span<const Symbol> coefficients) const;
  /// kℓ = (n − r)ℓ.
  std::size_t dimension() const noexcept { return basis_.rows(); }

 private:
  TowerPtr tower_;
  std::size_t n_;
  Matrix basis_;  // rows span ker(H)
};

inline constexpr const char* kCodewordRng = "mt19937_64/rejection-mod-q/kernel-rref-v1";

Codeword sample_codeword(const Realization& re, std::uint64_t seed);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct BoundsReport {
  std::uint64_t q = 0;
  std::uint64_t ell = 0;
  std::uint64_t r = 0;
  std::uint64_t n = 0;
  /// ℓ(n−1) − (r−1)t_ℓ(q).
  std::int64_t im_bound = 0;
  /// ℓ(n−1) − (q^{(r−1)ℓ} − 1)/(q − 1); may be negative.
  std::int64_t pc_bound = 0;
  /// q^ℓ + r − 1.
  std::int64_t length_max = 0;
  /// 1 + (r−1)t_ℓ(q).
  std::int64_t equality_min_length = 0;
  /// (q^ℓ + 2 − 2(r−1)t_ℓ(q)) / (q^ℓ + r − 1), clamped below at 0.
  Rational coverage_fraction;
  bool r_le_q = false;
};

/// Throws BadParameters (q not a prime power, ℓ < 1, r < 2, n < r) or Overflow.
BoundsReport bounds_report(std::uint64_t q, std::uint64_t ell, std::uint64_t r, std::uint64_t n);

/// (q^a − 1)/(q − 1).
std::int64_t projective_points(std::uint64_t q, std::uint64_t a);

}  // namespace mdsrepair
