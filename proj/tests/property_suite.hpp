#pragma once

// Randomized checks of the incidence inequalities for feasible repair
// matrices on small MDS codes. Shared by the unit tests and the acceptance
// runner. Every expected value comes from the oracles in support.hpp.

#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "mdsrepair/nrc.hpp"
#include "mdsrepair/repair.hpp"
#include "support.hpp"

namespace testing_support {

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

// q-Pascal recursion, independent of the library's closed form.
inline std::uint64_t gauss(std::size_t n, std::size_t k, std::uint64_t q) {
  if (k > n) return 0;
  if (k == 0 || k == n) return 1;
  return gauss(n - 1, k - 1, q) + ipow(q, k) * gauss(n - 1, k, q);
}

struct MdsCase {
  CodeSkeleton skeleton;
  Realization realization;
};

// A small MDS code: either a random skeleton that happens to be MDS, or a
// random subset of the nodes of a constructed code.
inline std::optional<MdsCase> draw_mds_case(Gen& g) {
  static const std::vector<TowerPtr> towers = {tower(2, 1, 1), tower(3, 1, 1), tower(5, 1, 1), tower(2, 2, 1),
                                               tower(2, 1, 2), tower(3, 1, 2), tower(2, 2, 2), tower(5, 1, 2)};
  if (g.uniform(0, 2) == 0) {
    const TowerPtr t = g.uniform(0, 1) ? tower(3, 1, 2) : tower(5, 1, 2);
    const std::size_t r = t->q() == 3 ? 2 : g.uniform(2, 3);
    const std::size_t nmax = t->q() == 3 ? 10 : 26;
    const NrcBundle b = build(validate_params(t, r, nmax));
    const std::size_t n = g.uniform(r + 1, 10);
    std::vector<std::size_t> pick(nmax);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<Subspace> nodes;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(pick[k], pick[k + g.uniform(0, nmax - 1 - k)]);
      nodes.push_back(b.skeleton().node(pick[k]));
    }
    CodeSkeleton s(t, r, std::move(nodes));
    Realization re = realization_of(s);
    return MdsCase{std::move(s), std::move(re)};
  }
  const TowerPtr t = towers[g.uniform(0, towers.size() - 1)];
  const std::size_t r = g.uniform(2, 3);
  const std::size_t n = g.uniform(r + 1, std::min<std::size_t>(10, r + 4));
  CodeSkeleton s = random_skeleton(g, t, r, n);
  if (check_mds(s)) return std::nullopt;
  Realization re = realization_of(s);
  return MdsCase{std::move(s), std::move(re)};
}

struct MatrixCheck {
  std::string violation;  // empty when every property holds
  std::int64_t sum_points = 0;
  std::vector<std::size_t> t;
  bool regular = false;
};

// Checks one repair matrix for node i against the oracles.
inline MatrixCheck check_repair_matrix(const CodeSkeleton& s, const Realization& re, std::size_t i,
                                       const Matrix& m) {
  const BaseField& f = s.field();
  const std::uint64_t q = f.order();
  const std::size_t ell = s.ell(), r = s.r(), n = s.n();
  const std::uint64_t t_ell = (ipow(q, ell) - 1) / (q - 1);
  MatrixCheck out;
  std::ostringstream why;
  auto bad = [&](const std::string& what) {
    if (out.violation.empty()) out.violation = what;
  };

  std::int64_t oracle_bw = 0;
  std::vector<Matrix> mh;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    mh.push_back(multiply(f, m, s.node_basis(j)));
    const std::size_t rk = oracle_rank(f, mh.back());
    oracle_bw += static_cast<std::int64_t>(rk);
    out.t.push_back(ell - rk);
    out.sum_points += static_cast<std::int64_t>((ipow(q, ell - rk) - 1) / (q - 1));
  }

  const IncidenceProfile prof = incidence_profile(m, s, i);
  if (prof.t != out.t) bad("incidence profile t_j differs from the rank oracle");
  if (prof.sum_points != out.sum_points) bad("incidence profile point count differs");
  if (!prof.holds || out.sum_points > static_cast<std::int64_t>((r - 1) * t_ell)) bad("point count exceeds cap");

  std::int64_t sum_t = 0;
  for (std::size_t x : out.t) sum_t += static_cast<std::int64_t>(x);
  if (oracle_bw + sum_t != static_cast<std::int64_t>(ell * (n - 1))) bad("rank identity fails");
  if (bandwidth(m, re, i) != oracle_bw) bad("bandwidth differs from the rank oracle");
  if (io_count(m, re, i) < oracle_bw) bad("I/O below bandwidth");

  for (const HierarchyRow& row : hierarchy_check(prof, ell, r, q)) {
    std::uint64_t lhs = 0;
    for (std::size_t x : out.t) lhs += gauss(x, row.s, q);
    if (row.lhs != lhs || row.rhs != (r - 1) * gauss(ell, row.s, q)) bad("hierarchy terms differ");
    if (lhs > (r - 1) * gauss(ell, row.s, q)) bad("hierarchy fails at s=" + std::to_string(row.s));
  }

  const DualCover dc = dual_cover(m, s, i);
  if (dc.points.size() != t_ell) bad("wrong number of dual points");
  std::int64_t total = 0;
  std::size_t max_mult = 0;
  for (std::size_t k = 0; k < dc.points.size(); ++k) {
    std::size_t mult = 0;
    for (const Matrix& b : mh)
      if (multiply(f, Matrix(1, ell, dc.points[k]), b).is_zero()) ++mult;
    if (dc.multiplicity[k] != mult) bad("dual multiplicity differs from direct evaluation");
    if (mult > r - 1) bad("dual point covered r times");
    total += static_cast<std::int64_t>(mult);
    max_mult = std::max(max_mult, mult);
  }
  if (total != out.sum_points || dc.total != out.sum_points) bad("dual cover total differs from point count");
  if (dc.max_multiplicity != max_mult) bad("dual cover max differs");
  out.regular = dc.regular;
  if (dc.regular != (max_mult == r - 1 && total == static_cast<std::int64_t>((r - 1) * t_ell)))
    bad("regularity flag inconsistent");
  return out;
}

struct SuiteResult {
  std::size_t matrices = 0;
  std::size_t codes = 0;
  std::string first_violation;
};

// Draws codes and random feasible matrices (left-multiplied by a random
// invertible matrix) until `count` matrices have been checked.
inline SuiteResult run_property_suite(std::uint64_t seed, std::size_t count) {
  Gen g(seed);
  SuiteResult res;
  while (res.matrices < count) {
    const auto c = draw_mds_case(g);
    if (!c) continue;
    ++res.codes;
    const CodeSkeleton& s = c->skeleton;
    for (int rep = 0; rep < 25 && res.matrices < count; ++rep, ++res.matrices) {
      const std::size_t i = g.uniform(0, s.n() - 1);
      const Matrix m = multiply(s.field(), g.full_rank(s.field(), s.ell(), s.ell()), feasible_matrix(g, s, i));
      const MatrixCheck chk = check_repair_matrix(s, c->realization, i, m);
      if (!chk.violation.empty() && res.first_violation.empty()) {
        res.first_violation = "q=" + std::to_string(s.field().order()) + " ell=" + std::to_string(s.ell()) +
                              " r=" + std::to_string(s.r()) + " n=" + std::to_string(s.n()) + " node " +
                              std::to_string(i) + ": " + chk.violation;
      }
    }
  }
  return res;
}

// Every length the construction accepts for (p, ℓ=2, r).
inline std::vector<std::size_t> constructible_lengths(const TowerPtr& t, std::size_t r) {
  std::vector<std::size_t> out;
  for (std::size_t n = r + 1; n <= t->q() * t->q() + 1; ++n) {
    try {
      validate_params(t, r, n);
      out.push_back(n);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::LengthOutOfRange) throw;
    }
  }
  return out;
}

// Checks the equality structure of every node of a constructed bundle:
// t_j ∈ {0,1}, point count at the cap and an (r−1)-regular dual cover.
inline std::string check_bundle_structure(const NrcBundle& b) {
  const CodeSkeleton& s = b.skeleton();
  const std::uint64_t q = s.field().order();
  const std::int64_t cap = static_cast<std::int64_t>((s.r() - 1) * ((ipow(q, s.ell()) - 1) / (q - 1)));
  for (std::size_t i = 0; i < s.n(); ++i) {
    const MatrixCheck chk = check_repair_matrix(s, b.realization, i, b.scheme.per_node[i]);
    const std::string where = "n=" + std::to_string(s.n()) + " node " + std::to_string(i) + ": ";
    if (!chk.violation.empty()) return where + chk.violation;
    for (std::size_t x : chk.t)
      if (x > 1) return where + "t_j = " + std::to_string(x);
    if (chk.sum_points != cap) return where + "hit count " + std::to_string(chk.sum_points);
    if (!chk.regular) return where + "dual cover not regular";
  }
  return {};
}

}  // namespace testing_support
