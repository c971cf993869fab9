#pragma once

// Executes repairs symbol by symbol and reconciles what was moved with the
// analytic bandwidth and I/O counts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdsrepair/codes.hpp"
#include "mdsrepair/repair.hpp"

namespace mdsrepair {

/// a = coeffs · rows, where `rows` are the greedily chosen independent rows
/// of a (top to bottom) and `kept` their indices.
struct RowFactor {
  Matrix coeffs;
  Matrix rows;
  std::vector<std::size_t> kept;
};

RowFactor row_factor(const BaseField& f, const Matrix& a);

/// Everything a repair of node i needs that does not depend on the codeword.
struct RepairPlan {
  struct Helper {
    std::size_t node = 0;
    RowFactor factor;  // of M·H_j
    /// Coordinates of C_j the helper reads: nonzero columns of factor.rows.
    std::vector<std::size_t> accessed;
  };
  std::size_t failed = 0;
  std::vector<Helper> helpers;
  /// −(M·H_i)^{−1}.
  Matrix decoder;
};

/// Throws NotARepairMatrix.
RepairPlan plan_repair(const Realization& re, const Matrix& m, std::size_t i);

struct HelperTranscript {
  std::size_t node = 0;
  Vec sent;
  std::vector<std::size_t> accessed;
};

struct RepairTranscript {
  std::size_t failed = 0;
  std::vector<HelperTranscript> helpers;
  Vec reconstructed;
  std::size_t downloaded = 0;
  std::size_t accessed = 0;
};

/// Executes a plan against a codeword; helpers only see the coordinates they access.
RepairTranscript execute_repair(const BaseField& f, const RepairPlan& plan, const Codeword& cw);

/// Throws NotARepairMatrix, NotACodeword.
RepairTranscript run_repair(const Realization& re, const RepairScheme& scheme, const Codeword& cw,
                            std::size_t i);

struct CampaignNodeRow {
  std::size_t node = 0;
  std::size_t downloaded = 0;
  std::size_t accessed = 0;
  std::int64_t beta = 0;   // analytic bandwidth
  std::int64_t gamma = 0;  // analytic I/O
  std::uint64_t repairs = 0;
};

struct CampaignReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string rng = kCodewordRng;
  std::vector<CampaignNodeRow> nodes;
  /// Empty on success.
  std::vector<std::string> failures;
  std::uint64_t total_downloaded = 0;
  std::uint64_t total_accessed = 0;
};

/// Seed of trial k in a campaign seeded with `seed` (splitmix64 of seed + k).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Repairs every selected node (all when `node` is empty) on `trials` random
/// codewords.
CampaignReport campaign(const Realization& re, const RepairScheme& scheme, std::uint64_t trials,
                        std::uint64_t seed, std::optional<std::size_t> node = std::nullopt,
                        unsigned jobs = 1);

}  // namespace mdsrepair
