#pragma once

// Codes from field reduction of the normal rational curve
// {[1 : c : … : c^{r−1}]} ∪ {[0 : … : 0 : 1]} over F_{q^ℓ}, with the
// Frobenius-twisted repair subspaces W_b = {y : y_{r−1} = b·y_0^q}.

#include <optional>
#include <string>
#include <vector>

#include "mdsrepair/codes.hpp"
#include "mdsrepair/repair.hpp"

namespace mdsrepair {

struct NrcParams {
  TowerPtr tower;
  std::size_t r = 0;
  std::size_t n = 0;
};

/// Accepts ℓ ≥ 2, r ≥ 2, r ≤ q, (r−1) | (q−1), (q−1)/(r−1) ≥ 2 and
/// 2(r−1)t_ℓ(q) ≤ n ≤ q^ℓ + 1. Throws EllTooSmall, BadParameters, RExceedsQ,
/// Nondivisible, QuotientTooSmall, LengthOutOfRange(min, max).
NrcParams validate_params(TowerPtr tower, std::size_t r, std::size_t n);

/// A curve parameter: a top-level code, or nullopt for the point at infinity.
using CurveParam = std::optional<Symbol>;

std::string param_label(const CurveParam& c);

/// Field reduction of x·(1, c, …, c^{r−1}) (or of (0, …, 0, x) at infinity):
/// the span of reduce(z^t·(1, c, …, c^{r−1})) for t < ℓ, r blocks of ℓ coordinates.
Subspace nrc_subspace(const FieldTower& t, std::size_t r, const CurveParam& c);

/// The canonical spanning vectors used above, in order t = 0..ℓ−1.
std::vector<Vec> nrc_spanning_vectors(const FieldTower& t, std::size_t r, const CurveParam& c);

/// {x ≠ 0 : N(x) = 1}, ascending.
std::vector<Symbol> norm_one_subgroup(const FieldTower& t);

struct Block {
  /// (smallest member)^{r−1}.
  Symbol representative = 0;
  /// Ascending.
  std::vector<Symbol> members;
};

struct BlockPartition {
  /// Ordered by smallest member.
  std::vector<Block> blocks;
  std::vector<Symbol> sigma;
};

/// C_b = {c ≠ 0 : c^{r−1} ∈ bΣ}. Throws Nondivisible unless (r−1) | (q−1).
BlockPartition block_partition(const FieldTower& t, std::size_t r);

struct RepairSubspace {
  Subspace kernel;
  /// [−(mul_b ∘ frob) | 0 | … | 0 | I_ℓ], the F_q-expansion of y ↦ y_{r−1} − b·y_0^q.
  Matrix matrix;
};

/// Throws ZeroB.
RepairSubspace repair_subspace(const FieldTower& t, std::size_t r, Symbol b);

struct NrcBundle {
  NrcParams params;
  std::vector<CurveParam> omega;
  Realization realization;
  RepairScheme scheme;
  Block c1;
  Block c2;

  const CodeSkeleton& skeleton() const noexcept { return realization.skeleton(); }
  std::vector<std::string> labels() const;
};

/// Builds the attaining code, realization and repair scheme, verifying every
/// property the construction guarantees (InternalInconsistency otherwise).
NrcBundle build(const NrcParams& params);

}  // namespace mdsrepair
