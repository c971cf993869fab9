#pragma once

// Linear single-node repair: metrics of a repair matrix M, exhaustive
// optimisation over all repair subspaces, and the incidence diagnostics on
// the quotient by ker(M).

#include <cstdint>
#include <optional>
#include <vector>

#include "mdsrepair/codes.hpp"

namespace mdsrepair {

/// One ℓ×rℓ repair matrix per node.
struct RepairScheme {
  std::vector<Matrix> per_node;
};

/// Throws NotARepairMatrix unless M is ℓ×rℓ with M·H_i invertible.
void require_repair_matrix(const Matrix& m, const CodeSkeleton& s, std::size_t i);

/// Σ_{j≠i} rank(M·H_j). Also evaluates ℓ(n−1) − Σ_{j≠i} dim(ker M ∩ H_j) and
/// throws InternalInconsistency if the two disagree.
std::int64_t bandwidth(const Matrix& m, const Realization& re, std::size_t i);

/// Σ_{j≠i} nz(M·H_j).
std::int64_t io_count(const Matrix& m, const Realization& re, std::size_t i);

struct IncidenceProfile {
  std::size_t failed = 0;
  std::vector<std::size_t> helpers;
  /// t_j = dim(ker M ∩ H_j), aligned with `helpers`.
  std::vector<std::size_t> t;
  std::int64_t sum_t = 0;
  /// Σ (q^{t_j} − 1)/(q − 1).
  std::int64_t sum_points = 0;
  /// (r − 1)·t_ℓ(q).
  std::int64_t cap = 0;
  bool holds = true;
};

/// Requires M of full row rank ℓ (BadRank otherwise). A violated inequality
/// on an MDS skeleton raises InternalInconsistency.
IncidenceProfile incidence_profile(const Matrix& m, const CodeSkeleton& s, std::size_t i);

struct HierarchyRow {
  std::size_t s = 0;
  std::uint64_t lhs = 0;  // Σ_j [t_j choose s]_q
  std::uint64_t rhs = 0;  // (r − 1)[ℓ choose s]_q
  bool holds = true;
};

std::vector<HierarchyRow> hierarchy_check(const IncidenceProfile& profile, std::size_t ell,
                                          std::size_t r, std::uint64_t q);

struct DualCover {
  /// Canonical nonzero covectors φ ∈ F_q^ℓ, one per dual projective point.
  std::vector<Point> points;
  /// #{j ≠ i : φ·M·H_j = 0}, aligned with `points`.
  std::vector<std::size_t> multiplicity;
  std::size_t max_multiplicity = 0;
  std::int64_t total = 0;
  /// Every multiplicity equals r − 1.
  bool regular = false;
};

/// Requires M of full row rank ℓ. A multiplicity above r − 1 on an MDS
/// skeleton raises InternalInconsistency.
DualCover dual_cover(const Matrix& m, const CodeSkeleton& s, std::size_t i);

/// All canonical nonzero vectors of F_q^len, ascending by encoding.
std::vector<Point> projective_points_of(const BaseField& f, std::size_t len);

struct EnumRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct BruteForceOptions {
  /// Scan only this slice of the RREF enumeration. The budget caps its length.
  std::optional<EnumRange> range;
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
};

struct BruteForceResult {
  std::size_t node = 0;
  /// Best objective; nullopt when the scanned range holds no repair matrix.
  std::optional<std::int64_t> value;
  std::optional<Matrix> witness;
  std::uint64_t witness_index = 0;
  std::uint64_t scanned = 0;
  std::uint64_t feasible = 0;
  std::uint64_t total = 0;
};

/// α_i: max over repair matrices of Σ_{j≠i} (ℓ − rank(M·H_j)). Throws
/// BudgetExceeded, NotMds.
BruteForceResult alpha_bruteforce(const CodeSkeleton& s, std::size_t i,
                                  const BruteForceOptions& opts = {});

/// λ_i: max over repair matrices of Σ_{j≠i} #{t : M·h_{j,t} = 0}.
BruteForceResult lambda_bruteforce(const Realization& re, std::size_t i,
                                   const BruteForceOptions& opts = {});

struct NodeRow {
  std::size_t node = 0;
  std::int64_t beta = 0;
  std::int64_t gamma = 0;
  /// Scheme-achieved ℓ(n−1) − β and ℓ(n−1) − γ.
  std::int64_t alpha = 0;
  std::int64_t lambda = 0;
  std::int64_t gap_beta = 0;
  std::int64_t gap_gamma = 0;
};

struct NodeMetrics {
  std::vector<NodeRow> rows;
  Rational beta_avg;
  std::int64_t beta_max = 0;
  Rational gamma_avg;
  std::int64_t gamma_max = 0;
  /// ℓ(n−1) − (r−1)t_ℓ(q).
  std::int64_t im_bound = 0;
  /// Every node meets the bound for both bandwidth and I/O.
  bool equality = false;
};

NodeMetrics evaluate_scheme(const Realization& re, const RepairScheme& scheme);

/// ℓ(n−1) − (r−1)t_ℓ(q) for any skeleton shape.
std::int64_t incidence_multiplicity_bound(std::uint64_t q, std::uint64_t ell, std::uint64_t r,
                                          std::uint64_t n);

}  // namespace mdsrepair
