#include "mdsrepair/nrc.hpp"

#include <algorithm>

namespace mdsrepair {

NrcParams validate_params(TowerPtr tower, std::size_t r, std::size_t n) {
  if (!tower) fail(ErrorKind::BadParameters, "missing field tower");
  const std::uint64_t q = tower->q();
  if (tower->ell() < 2) fail(ErrorKind::EllTooSmall, "the construction needs ell >= 2");
  if (r < 2) fail(ErrorKind::BadParameters, "the construction needs r >= 2");
  if (r > q) fail(ErrorKind::RExceedsQ, "r = " + std::to_string(r) + " exceeds q = " + std::to_string(q));
  if ((q - 1) % (r - 1) != 0) {
    fail(ErrorKind::Nondivisible, "r - 1 = " + std::to_string(r - 1) + " does not divide q - 1 = " +
                                      std::to_string(q - 1));
  }
  if ((q - 1) / (r - 1) < 2) fail(ErrorKind::QuotientTooSmall, "(q - 1)/(r - 1) must be at least 2");
  const std::uint64_t min_n = 2 * (r - 1) * tower->points_count();
  const std::uint64_t max_n = std::uint64_t{tower->top_order()} + 1;
  if (n < min_n || n > max_n) {
    fail(ErrorKind::LengthOutOfRange,
         "n = " + std::to_string(n) + " outside [" + std::to_string(min_n) + ", " + std::to_string(max_n) + "]",
         {static_cast<std::int64_t>(min_n), static_cast<std::int64_t>(max_n)});
  }
  return NrcParams{std::move(tower), r, n};
}

std::string param_label(const CurveParam& c) { return c ? std::to_string(*c) : "inf"; }

std::vector<Vec> nrc_spanning_vectors(const FieldTower& t, std::size_t r, const CurveParam& c) {
  const std::size_t ell = t.ell();
  std::vector<Vec> out;
  Symbol x = 1;  // z^k
  for (std::size_t k = 0; k < ell; ++k, x *= t.q()) {
    Vec v(r * ell, 0);
    if (!c) {
      const Vec coords = t.reduce(x);
      std::copy(coords.begin(), coords.end(), v.begin() + static_cast<std::ptrdiff_t>((r - 1) * ell));
    } else {
      Symbol y = x;
      for (std::size_t block = 0; block < r; ++block) {
        const Vec coords = t.reduce(y);
        std::copy(coords.begin(), coords.end(), v.begin() + static_cast<std::ptrdiff_t>(block * ell));
        y = t.top_mul(y, *c);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

Subspace nrc_subspace(const FieldTower& t, std::size_t r, const CurveParam& c) {
  const std::vector<Vec> gens = nrc_spanning_vectors(t, r, c);
  return Subspace::span(t.base(), Matrix::from_rows(gens, r * t.ell()));
}

std::vector<Symbol> norm_one_subgroup(const FieldTower& t) {
  std::vector<Symbol> sigma;
  for (Symbol x = 1; x < t.top_order(); ++x)
    if (t.norm(x) == 1) sigma.push_back(x);
  return sigma;
}

BlockPartition block_partition(const FieldTower& t, std::size_t r) {
  const std::uint64_t q = t.q();
  if (r < 2 || (q - 1) % (r - 1) != 0) {
    fail(ErrorKind::Nondivisible, "block partition needs (r - 1) | (q - 1)");
  }
  BlockPartition part;
  part.sigma = norm_one_subgroup(t);
  std::vector<bool> in_sigma(t.top_order(), false);
  for (Symbol x : part.sigma) in_sigma[x] = true;

  std::vector<bool> assigned(t.top_order(), false);
  for (Symbol c = 1; c < t.top_order(); ++c) {
    if (assigned[c]) continue;
    Block block;
    block.representative = t.top_pow(c, r - 1);
    const Symbol b_inv = t.top_inv(block.representative);
    for (Symbol x = 1; x < t.top_order(); ++x) {
      if (in_sigma[t.top_mul(t.top_pow(x, r - 1), b_inv)]) {
        block.members.push_back(x);
        assigned[x] = true;
      }
    }
    part.blocks.push_back(std::move(block));
  }
  return part;
}

RepairSubspace repair_subspace(const FieldTower& t, std::size_t r, Symbol b) {
  if (b == 0) fail(ErrorKind::ZeroB, "W_b needs b != 0");
  if (b >= t.top_order()) fail(ErrorKind::BadParameters, "b outside F_{q^ell}");
  if (r < 2) fail(ErrorKind::BadParameters, "W_b needs r >= 2");
  const BaseField& f = t.base();
  const std::size_t ell = t.ell();
  const Matrix twist = multiply(f, linear_map_matrix(t, MultiplyBy{Elt::top(b)}),
                                linear_map_matrix(t, FrobeniusMap{}));
  const Matrix neg = negate(f, twist);
  Matrix m(ell, r * ell);
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t j = 0; j < ell; ++j) m(i, j) = neg(i, j);
    m(i, (r - 1) * ell + i) = 1;
  }
  return RepairSubspace{kernel(f, m), std::move(m)};
}

std::vector<std::string> NrcBundle::labels() const {
  std::vector<std::string> out;
  for (const CurveParam& c : omega) out.push_back(param_label(c));
  return out;
}

namespace {

void verify(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::InternalInconsistency, what);
}

}  // namespace

NrcBundle build(const NrcParams& params) {
  const NrcParams p = validate_params(params.tower, params.r, params.n);
  const FieldTower& t = *p.tower;
  const BaseField& f = t.base();
  const std::size_t r = p.r;
  const std::size_t ell = t.ell();
  const std::uint64_t tl = t.points_count();

  BlockPartition part = block_partition(t, r);
  verify(part.blocks.size() >= 2, "fewer than two blocks");
  Block c1 = part.blocks[0];
  Block c2 = part.blocks[1];

  std::vector<int> tag(t.top_order(), 0);  // 1 for C_1, 2 for C_2
  std::vector<CurveParam> omega;
  for (Symbol c : c1.members) {
    omega.emplace_back(c);
    tag[c] = 1;
  }
  for (Symbol c : c2.members) {
    omega.emplace_back(c);
    tag[c] = 2;
  }
  for (Symbol c = 0; c < t.top_order(); ++c)
    if (tag[c] == 0) omega.emplace_back(c);
  omega.emplace_back(std::nullopt);
  omega.resize(p.n);

  std::vector<Subspace> nodes;
  for (const CurveParam& c : omega) nodes.push_back(nrc_subspace(t, r, c));
  CodeSkeleton skeleton(p.tower, r, std::move(nodes));

  const RepairSubspace w1 = repair_subspace(t, r, c1.representative);
  const RepairSubspace w2 = repair_subspace(t, r, c2.representative);

  RepairScheme scheme;
  std::vector<ColumnSet> column_sets;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const CurveParam& c = omega[i];
    const int block = c ? tag[*c] : 0;
    scheme.per_node.push_back(block == 1 ? w2.matrix : w1.matrix);

    ColumnSet xs;
    Matrix chosen(0, r * ell);
    auto try_add = [&](const Vec& v) {
      Point pt = canonical_point(f, v);
      if (std::find(xs.begin(), xs.end(), pt) != xs.end()) return;
      const Matrix grown = vstack(chosen, Matrix(1, pt.size(), pt));
      if (rank(f, grown) != grown.rows()) return;
      chosen = grown;
      xs.push_back(std::move(pt));
    };
    if (block != 0) {
      // The helper point that the other block's repair subspace captures.
      const Subspace meet = intersection(f, block == 1 ? w1.kernel : w2.kernel, skeleton.node(i));
      verify(meet.dim() == 1, "repair subspace meets node " + std::to_string(i + 1) + " in dimension " +
                                  std::to_string(meet.dim()));
      try_add(Vec(meet.basis().row(0).begin(), meet.basis().row(0).end()));
    }
    for (const Vec& v : nrc_spanning_vectors(t, r, c)) {
      if (xs.size() == ell) break;
      try_add(v);
    }
    verify(xs.size() == ell, "could not complete the column set of node " + std::to_string(i + 1));
    column_sets.push_back(std::move(xs));
  }
  Realization re = realize(skeleton, std::move(column_sets));

  verify(!check_mds(re.skeleton()), "curve subspaces are not in general position");
  const std::int64_t target = static_cast<std::int64_t>((r - 1) * tl);
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const IncidenceProfile prof = incidence_profile(scheme.per_node[i], re.skeleton(), i);
    verify(prof.sum_t == target, "node " + std::to_string(i + 1) + " hits " + std::to_string(prof.sum_t) +
                                     " helpers, expected " + std::to_string(target));
    verify(std::all_of(prof.t.begin(), prof.t.end(), [](std::size_t x) { return x <= 1; }),
           "an intersection of dimension above 1");
  }
  verify(evaluate_scheme(re, scheme).equality, "scheme does not attain the bound");

  return NrcBundle{p, std::move(omega), std::move(re), std::move(scheme), std::move(c1), std::move(c2)};
}

}  // namespace mdsrepair
