#include "mdsrepair/repair.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace mdsrepair {
namespace {

std::string node_name(std::size_t i) { return "node " + std::to_string(i + 1); }

void check_node_index(const CodeSkeleton& s, std::size_t i) {
  if (i >= s.n()) fail(ErrorKind::BadParameters, node_name(i) + " does not exist");
}

void require_full_rank(const Matrix& m, const CodeSkeleton& s) {
  if (m.rows() != s.ell() || m.cols() != s.ambient_dim() || rank(s.field(), m) != s.ell()) {
    fail(ErrorKind::BadRank, "repair matrix must be ell x r*ell of full row rank");
  }
}

// Both routes to the helper download count must agree:
// Σ rank(M·H_j) + Σ dim(ker M ∩ H_j) = ℓ(n − 1).
std::int64_t checked_rank_sum(const Matrix& m, const CodeSkeleton& s, std::size_t i) {
  const BaseField& f = s.field();
  const Subspace w = kernel(f, m);
  std::int64_t ranks = 0;
  std::int64_t meets = 0;
  for (std::size_t j = 0; j < s.n(); ++j) {
    if (j == i) continue;
    ranks += static_cast<std::int64_t>(rank(f, multiply(f, m, s.node_basis(j))));
    meets += static_cast<std::int64_t>(intersect_dim(f, w, s.node(j)));
  }
  const auto expected = static_cast<std::int64_t>(s.ell() * (s.n() - 1));
  if (ranks + meets != expected) {
    fail(ErrorKind::InternalInconsistency,
         "rank/intersection identity failed at " + node_name(i) + ": " + std::to_string(ranks) + " + " +
             std::to_string(meets) + " != " + std::to_string(expected));
  }
  return ranks;
}

}  // namespace

std::int64_t incidence_multiplicity_bound(std::uint64_t q, std::uint64_t ell, std::uint64_t r,
                                          std::uint64_t n) {
  return static_cast<std::int64_t>(ell * (n - 1)) -
         static_cast<std::int64_t>(r - 1) * projective_points(q, ell);
}

void require_repair_matrix(const Matrix& m, const CodeSkeleton& s, std::size_t i) {
  check_node_index(s, i);
  const std::int64_t index = static_cast<std::int64_t>(i) + 1;
  if (m.rows() != s.ell() || m.cols() != s.ambient_dim()) {
    fail(ErrorKind::NotARepairMatrix, node_name(i) + ": repair matrix must be ell x r*ell", {index});
  }
  if (rank(s.field(), multiply(s.field(), m, s.node_basis(i))) != s.ell()) {
    fail(ErrorKind::NotARepairMatrix, node_name(i) + ": M*H_i is singular", {index});
  }
}

std::int64_t bandwidth(const Matrix& m, const Realization& re, std::size_t i) {
  require_repair_matrix(m, re.skeleton(), i);
  const BaseField& f = re.field();
  std::int64_t total = 0;
  for (std::size_t j = 0; j < re.n(); ++j)
    if (j != i) total += static_cast<std::int64_t>(rank(f, multiply(f, m, re.block(j))));
  if (total != checked_rank_sum(m, re.skeleton(), i)) {
    fail(ErrorKind::InternalInconsistency, "block ranks differ from node-subspace ranks");
  }
  return total;
}

std::int64_t io_count(const Matrix& m, const Realization& re, std::size_t i) {
  require_repair_matrix(m, re.skeleton(), i);
  const BaseField& f = re.field();
  std::int64_t total = 0;
  for (std::size_t j = 0; j < re.n(); ++j)
    if (j != i) total += static_cast<std::int64_t>(nonzero_columns(multiply(f, m, re.block(j))));
  return total;
}

IncidenceProfile incidence_profile(const Matrix& m, const CodeSkeleton& s, std::size_t i) {
  check_node_index(s, i);
  require_full_rank(m, s);
  const BaseField& f = s.field();
  const std::uint64_t q = f.order();
  const Subspace w = kernel(f, m);

  IncidenceProfile p;
  p.failed = i;
  for (std::size_t j = 0; j < s.n(); ++j) {
    if (j == i) continue;
    const std::size_t t = intersect_dim(f, w, s.node(j));
    p.helpers.push_back(j);
    p.t.push_back(t);
    p.sum_t += static_cast<std::int64_t>(t);
    p.sum_points += projective_points(q, t);
  }
  p.cap = static_cast<std::int64_t>(s.r() - 1) * projective_points(q, s.ell());
  p.holds = p.sum_points <= p.cap;
  if (!p.holds && !check_mds(s)) {
    fail(ErrorKind::InternalInconsistency,
         "dual counting inequality violated on an MDS skeleton at " + node_name(i));
  }
  return p;
}

std::vector<HierarchyRow> hierarchy_check(const IncidenceProfile& profile, std::size_t ell,
                                          std::size_t r, std::uint64_t q) {
  std::vector<HierarchyRow> rows;
  for (std::size_t s = 1; s <= ell; ++s) {
    HierarchyRow row;
    row.s = s;
    for (std::size_t t : profile.t) row.lhs += gaussian_binomial(t, s, q);
    row.rhs = (r - 1) * gaussian_binomial(ell, s, q);
    row.holds = row.lhs <= row.rhs;
    rows.push_back(row);
  }
  return rows;
}

std::vector<Point> projective_points_of(const BaseField& f, std::size_t len) {
  const std::uint64_t q = f.order();
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < len; ++k) count *= q;
  std::vector<Point> out;
  for (std::uint64_t code = 1; code < count; ++code) {
    Point v(len);
    std::uint64_t x = code;
    for (std::size_t k = 0; k < len; ++k) {
      v[k] = static_cast<Symbol>(x % q);
      x /= q;
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](Symbol s) { return s != 0; });
    if (*lead == 1) out.push_back(std::move(v));
  }
  return out;
}

DualCover dual_cover(const Matrix& m, const CodeSkeleton& s, std::size_t i) {
  check_node_index(s, i);
  require_full_rank(m, s);
  const BaseField& f = s.field();
  std::vector<Matrix> compressed;
  for (std::size_t j = 0; j < s.n(); ++j)
    if (j != i) compressed.push_back(multiply(f, m, s.node_basis(j)));

  DualCover cover;
  cover.points = projective_points_of(f, s.ell());
  cover.regular = true;
  for (const Point& phi : cover.points) {
    std::size_t mult = 0;
    for (const Matrix& mh : compressed) {
      bool annihilates = true;
      for (std::size_t c = 0; c < mh.cols() && annihilates; ++c) {
        Symbol acc = 0;
        for (std::size_t k = 0; k < mh.rows(); ++k) acc = f.add(acc, f.mul(phi[k], mh(k, c)));
        annihilates = acc == 0;
      }
      mult += annihilates ? 1 : 0;
    }
    cover.multiplicity.push_back(mult);
    cover.total += static_cast<std::int64_t>(mult);
    cover.max_multiplicity = std::max(cover.max_multiplicity, mult);
    cover.regular = cover.regular && mult == s.r() - 1;
  }
  if (cover.max_multiplicity + 1 > s.r() && !check_mds(s)) {
    fail(ErrorKind::InternalInconsistency, "a dual point is covered r times on an MDS skeleton");
  }
  return cover;
}

// --- exhaustive search -----------------------------------------------------

namespace {

enum class Objective { alpha, lambda };

struct LocalBest {
  std::optional<std::int64_t> value;
  std::uint64_t index = 0;
  Matrix witness;
  std::uint64_t scanned = 0;
  std::uint64_t feasible = 0;
};

// Scans [begin, end) of the RREF enumeration. `blocks[j]` is an rℓ×ℓ matrix
// whose columns are the helper columns for the chosen objective.
LocalBest scan(const RrefEnumerator& en, std::uint64_t begin, std::uint64_t end, const BaseField& f,
               const std::vector<Matrix>& blocks, std::size_t failed, std::size_t ell, Objective obj) {
  LocalBest best;
  const std::size_t d = en.cols();
  std::vector<Symbol> prod(ell * ell);
  auto multiply_into = [&](const Matrix& m, const Matrix& b) {
    for (std::size_t r = 0; r < ell; ++r) {
      const auto mrow = m.row(r);
      for (std::size_t c = 0; c < ell; ++c) {
        Symbol acc = 0;
        for (std::size_t k = 0; k < d; ++k)
          if (mrow[k] != 0) acc = f.add(acc, f.mul(mrow[k], b(k, c)));
        prod[r * ell + c] = acc;
      }
    }
  };
  en.for_each(begin, end, [&](std::uint64_t index, const Matrix& m) {
    ++best.scanned;
    multiply_into(m, blocks[failed]);
    if (rank_in_place(f, prod, ell, ell) != ell) return;
    ++best.feasible;
    std::int64_t value = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (j == failed) continue;
      multiply_into(m, blocks[j]);
      if (obj == Objective::alpha) {
        value += static_cast<std::int64_t>(ell - rank_in_place(f, prod, ell, ell));
      } else {
        for (std::size_t c = 0; c < ell; ++c) {
          bool zero = true;
          for (std::size_t r = 0; r < ell && zero; ++r) zero = prod[r * ell + c] == 0;
          value += zero ? 1 : 0;
        }
      }
    }
    if (!best.value || value > *best.value) {
      best.value = value;
      best.index = index;
      best.witness = m;
    }
  });
  return best;
}

BruteForceResult run_bruteforce(const CodeSkeleton& s, const std::vector<Matrix>& blocks,
                                std::size_t i, const BruteForceOptions& opts, Objective obj) {
  check_node_index(s, i);
  const BaseField& f = s.field();
  const RrefEnumerator en(s.ell(), s.ambient_dim(), f.order());
  BruteForceResult res;
  res.node = i;
  res.total = en.size();

  EnumRange range{0, en.size()};
  if (opts.range) {
    range = {std::min(opts.range->begin, en.size()), std::min(opts.range->end, en.size())};
    range.end = std::max(range.begin, range.end);
  }
  if (const std::uint64_t count = range.end - range.begin; count > opts.budget) {
    fail(ErrorKind::BudgetExceeded,
         std::to_string(count) + " candidates exceed the budget of " + std::to_string(opts.budget),
         {static_cast<std::int64_t>(count)});
  }
  if (check_mds(s)) fail(ErrorKind::NotMds, "brute force requires an MDS skeleton");

  const unsigned jobs = std::max(1u, opts.jobs);
  const std::uint64_t span = range.end - range.begin;
  std::vector<LocalBest> parts(jobs);
  if (jobs == 1) {
    parts[0] = scan(en, range.begin, range.end, f, blocks, i, s.ell(), obj);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      const std::uint64_t lo = range.begin + span * w / jobs;
      const std::uint64_t hi = range.begin + span * (w + 1) / jobs;
      workers.emplace_back([&, w, lo, hi] { parts[w] = scan(en, lo, hi, f, blocks, i, s.ell(), obj); });
    }
    for (auto& t : workers) t.join();
  }
  // Parts are in range order, so a strict comparison keeps the first maximiser.
  for (LocalBest& part : parts) {
    res.scanned += part.scanned;
    res.feasible += part.feasible;
    if (part.value && (!res.value || *part.value > *res.value)) {
      res.value = part.value;
      res.witness_index = part.index;
      res.witness = std::move(part.witness);
    }
  }

  const std::int64_t cap = static_cast<std::int64_t>(s.r() - 1) * projective_points(f.order(), s.ell());
  if (res.value && *res.value > cap) {
    fail(ErrorKind::InternalInconsistency, "brute-force optimum exceeds (r-1)t_ell(q) on an MDS skeleton");
  }
  if (res.witness) {
    const std::int64_t ranks = checked_rank_sum(*res.witness, s, i);
    if (obj == Objective::alpha &&
        static_cast<std::int64_t>(s.ell() * (s.n() - 1)) - ranks != *res.value) {
      fail(ErrorKind::InternalInconsistency, "witness does not reproduce the optimum");
    }
  }
  return res;
}

}  // namespace

BruteForceResult alpha_bruteforce(const CodeSkeleton& s, std::size_t i, const BruteForceOptions& opts) {
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < s.n(); ++j) blocks.push_back(s.node_basis(j));
  return run_bruteforce(s, blocks, i, opts, Objective::alpha);
}

BruteForceResult lambda_bruteforce(const Realization& re, std::size_t i, const BruteForceOptions& opts) {
  return run_bruteforce(re.skeleton(), re.blocks(), i, opts, Objective::lambda);
}

NodeMetrics evaluate_scheme(const Realization& re, const RepairScheme& scheme) {
  if (scheme.per_node.size() != re.n()) fail(ErrorKind::BadShape, "scheme needs one matrix per node");
  const std::int64_t full = static_cast<std::int64_t>(re.ell() * (re.n() - 1));
  NodeMetrics out;
  out.im_bound = incidence_multiplicity_bound(re.field().order(), re.ell(), re.r(), re.n());
  std::int64_t beta_sum = 0;
  std::int64_t gamma_sum = 0;
  out.equality = true;
  for (std::size_t i = 0; i < re.n(); ++i) {
    NodeRow row;
    row.node = i;
    row.beta = bandwidth(scheme.per_node[i], re, i);
    row.gamma = io_count(scheme.per_node[i], re, i);
    if (row.gamma < row.beta) fail(ErrorKind::InternalInconsistency, "repair I/O below bandwidth");
    row.alpha = full - row.beta;
    row.lambda = full - row.gamma;
    row.gap_beta = row.beta - out.im_bound;
    row.gap_gamma = row.gamma - out.im_bound;
    out.equality = out.equality && row.gap_beta == 0 && row.gap_gamma == 0;
    beta_sum += row.beta;
    gamma_sum += row.gamma;
    out.beta_max = std::max(out.beta_max, row.beta);
    out.gamma_max = std::max(out.gamma_max, row.gamma);
    out.rows.push_back(row);
  }
  const auto n = static_cast<std::int64_t>(re.n());
  out.beta_avg = Rational::make(beta_sum, n);
  out.gamma_avg = Rational::make(gamma_sum, n);
  return out;
}

}  // namespace mdsrepair
