#include "mdsrepair/codes.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace mdsrepair {

CodeSkeleton::CodeSkeleton(TowerPtr tower, std::size_t r, std::vector<Subspace> nodes)
    : tower_(std::move(tower)), r_(r), nodes_(std::move(nodes)) {
  if (!tower_) fail(ErrorKind::BadParameters, "skeleton without a field tower");
  if (r_ < 1) fail(ErrorKind::BadParameters, "redundancy must be at least 1");
  if (nodes_.size() < r_) {
    fail(ErrorKind::TooFewNodes, "n = " + std::to_string(nodes_.size()) + " < r = " + std::to_string(r_));
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].ambient_dim() != ambient_dim()) {
      fail(ErrorKind::WrongAmbient, "node " + std::to_string(i + 1) + " lives in dimension " +
                                        std::to_string(nodes_[i].ambient_dim()));
    }
    if (nodes_[i].dim() != ell()) {
      fail(ErrorKind::WrongNodeDim, "node " + std::to_string(i + 1) + " has dimension " +
                                        std::to_string(nodes_[i].dim()));
    }
  }
}

namespace {

// Advances a sorted r-subset of [0, n) to its lexicographic successor.
bool next_subset(NodeSet& s, std::size_t n) {
  const std::size_t r = s.size();
  std::size_t i = r;
  while (i > 0 && s[i - 1] == n - r + (i - 1)) --i;
  if (i == 0) return false;
  ++s[i - 1];
  for (std::size_t j = i; j < r; ++j) s[j] = s[j - 1] + 1;
  return true;
}

NodeSet first_subset(std::size_t r) {
  NodeSet s(r);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

bool spans(const CodeSkeleton& sk, const NodeSet& subset, std::vector<Symbol>& buf) {
  const std::size_t d = sk.ambient_dim();
  const std::size_t ell = sk.ell();
  buf.resize(d * d);
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const auto& e = sk.node(subset[k]).basis().entries();
    std::copy(e.begin(), e.end(), buf.begin() + static_cast<std::ptrdiff_t>(k * ell * d));
  }
  return rank_in_place(sk.field(), buf, d, d) == d;
}

}  // namespace

std::optional<NodeSet> check_mds(const CodeSkeleton& s, unsigned jobs) {
  jobs = std::max(1u, jobs);
  std::vector<NodeSet> subsets;
  if (jobs == 1) {
    std::vector<Symbol> buf;
    NodeSet subset = first_subset(s.r());
    do {
      if (!spans(s, subset, buf)) return subset;
    } while (next_subset(subset, s.n()));
    return std::nullopt;
  }
  NodeSet subset = first_subset(s.r());
  do subsets.push_back(subset);
  while (next_subset(subset, s.n()));

  std::atomic<std::size_t> first_bad{subsets.size()};
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      std::vector<Symbol> buf;
      for (std::size_t k = w; k < subsets.size() && k < first_bad.load(); k += jobs) {
        if (!spans(s, subsets[k], buf)) {
          std::size_t cur = first_bad.load();
          while (k < cur && !first_bad.compare_exchange_weak(cur, k)) {
          }
          return;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_bad.load() == subsets.size()) return std::nullopt;
  return subsets[first_bad.load()];
}

bool blocks_invertible(const BaseField& f, const std::vector<Matrix>& blocks, std::size_t r) {
  if (blocks.size() < r) return false;
  NodeSet subset = first_subset(r);
  do {
    Matrix hj(blocks[subset[0]]);
    for (std::size_t k = 1; k < r; ++k) hj = hstack(hj, blocks[subset[k]]);
    if (!inverse(f, hj)) return false;
  } while (next_subset(subset, blocks.size()));
  return true;
}

// --- Realization -----------------------------------------------------------

Realization::Realization(CodeSkeleton skeleton, std::vector<Matrix> blocks,
                         std::vector<ColumnSet> column_sets)
    : skeleton_(std::move(skeleton)), blocks_(std::move(blocks)), column_sets_(std::move(column_sets)) {}

Matrix Realization::parity_check() const {
  Matrix h = blocks_.front();
  for (std::size_t i = 1; i < blocks_.size(); ++i) h = hstack(h, blocks_[i]);
  return h;
}

Realization Realization::from_blocks(TowerPtr tower, std::size_t r, std::vector<Matrix> blocks) {
  if (!tower) fail(ErrorKind::BadParameters, "realization without a field tower");
  const BaseField& f = tower->base();
  const std::size_t ell = tower->ell();
  const std::size_t d = r * ell;
  std::vector<Subspace> nodes;
  std::vector<ColumnSet> column_sets;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Matrix& h = blocks[i];
    const std::string where = "node " + std::to_string(i + 1);
    if (h.rows() != d) fail(ErrorKind::WrongAmbient, where + ": block has " + std::to_string(h.rows()) + " rows");
    if (h.cols() != ell) fail(ErrorKind::BadShape, where + ": block must have ell columns");
    for (Symbol x : h.entries())
      if (x >= f.order()) fail(ErrorKind::BadShape, where + ": entry outside F_q");
    ColumnSet points;
    for (std::size_t t = 0; t < ell; ++t) {
      const Vec col = h.column(t);
      if (std::all_of(col.begin(), col.end(), [](Symbol x) { return x == 0; }))
        fail(ErrorKind::NotSpanning, where + ": zero column");
      Point pt = canonical_point(f, col);
      if (std::find(points.begin(), points.end(), pt) != points.end())
        fail(ErrorKind::DuplicatePoint, where + ": repeated column point");
      points.push_back(std::move(pt));
    }
    Subspace node = Subspace::span(f, transpose(h));
    if (node.dim() != ell) fail(ErrorKind::NotSpanning, where + ": columns do not have full rank");
    nodes.push_back(std::move(node));
    column_sets.push_back(std::move(points));
  }
  CodeSkeleton skeleton(std::move(tower), r, std::move(nodes));
  return Realization(std::move(skeleton), std::move(blocks), std::move(column_sets));
}

Realization realize(const CodeSkeleton& s, std::vector<ColumnSet> column_sets) {
  const BaseField& f = s.field();
  const std::size_t ell = s.ell();
  if (column_sets.size() != s.n()) fail(ErrorKind::BadShape, "one column set per node required");
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < s.n(); ++i) {
    const std::string where = "node " + std::to_string(i + 1);
    ColumnSet& xs = column_sets[i];
    if (xs.size() != ell) fail(ErrorKind::BadShape, where + ": expected ell points");
    for (std::size_t t = 0; t < ell; ++t) {
      if (xs[t].size() != s.ambient_dim()) fail(ErrorKind::AmbientMismatch, where + ": point length");
      if (std::all_of(xs[t].begin(), xs[t].end(), [](Symbol x) { return x == 0; }))
        fail(ErrorKind::PointOutsideNode, where + ": the zero vector is not a projective point");
      xs[t] = canonical_point(f, xs[t]);
      if (!contains(f, s.node(i), xs[t])) fail(ErrorKind::PointOutsideNode, where);
      for (std::size_t u = 0; u < t; ++u)
        if (xs[u] == xs[t]) fail(ErrorKind::DuplicatePoint, where);
    }
    Matrix block = transpose(Matrix::from_rows(xs, s.ambient_dim()));
    if (rank(f, block) != ell) fail(ErrorKind::NotSpanning, where);
    blocks.push_back(std::move(block));
  }
  return Realization(s, std::move(blocks), std::move(column_sets));
}

Vec syndrome(const Realization& re, const Codeword& cw) {
  if (cw.size() != re.n()) fail(ErrorKind::BadShape, "codeword must have n blocks");
  const BaseField& f = re.field();
  Vec acc(re.skeleton().ambient_dim(), 0);
  for (std::size_t i = 0; i < re.n(); ++i) {
    const Vec part = apply(f, re.block(i), cw[i]);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = f.add(acc[k], part[k]);
  }
  return acc;
}

CodewordSampler::CodewordSampler(const Realization& re)
    : tower_(re.skeleton().tower_ptr()), n_(re.n()) {
  if (const auto witness = check_mds(re.skeleton())) {
    fail(ErrorKind::NotMds, "sampling requires an MDS skeleton");
  }
  basis_ = kernel(re.field(), re.parity_check()).basis();
}

Codeword CodewordSampler::from_coefficients(std::span<const Symbol> coefficients) const {
  if (coefficients.size() != basis_.rows()) fail(ErrorKind::BadShape, "one coefficient per kernel basis row");
  const BaseField& f = tower_->base();
  Vec flat(basis_.cols(), 0);
  for (std::size_t k = 0; k < basis_.rows(); ++k) {
    if (coefficients[k] == 0) continue;
    const auto row = basis_.row(k);
    for (std::size_t j = 0; j < flat.size(); ++j) flat[j] = f.add(flat[j], f.mul(coefficients[k], row[j]));
  }
  const std::size_t ell = tower_->ell();
  Codeword cw(n_);
  for (std::size_t i = 0; i < n_; ++i)
    cw[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * ell),
                 flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * ell));
  return cw;
}

Codeword CodewordSampler::sample(std::uint64_t seed) const {
  std::mt19937_64 gen(seed);
  const std::uint64_t q = tower_->q();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / q * q;
  Vec coefficients(basis_.rows());
  for (Symbol& c : coefficients) {
    std::uint64_t x;
    do x = gen();
    while (x >= limit);
    c = static_cast<Symbol>(x % q);
  }
  return from_coefficients(coefficients);
}

Codeword sample_codeword(const Realization& re, std::uint64_t seed) {
  return CodewordSampler(re).sample(seed);
}

// --- bounds ----------------------------------------------------------------

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

using Wide = __int128;

Wide wide_pow(std::uint64_t base, std::uint64_t e) {
  Wide acc = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    acc *= static_cast<Wide>(base);
    if (acc > std::numeric_limits<std::int64_t>::max()) fail(ErrorKind::Overflow, "bound exceeds 63 bits");
  }
  return acc;
}

std::int64_t narrow(Wide x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    fail(ErrorKind::Overflow, "bound exceeds 63 bits");
  return static_cast<std::int64_t>(x);
}

}  // namespace

std::int64_t projective_points(std::uint64_t q, std::uint64_t a) {
  if (q < 2) fail(ErrorKind::BadParameters, "q must be at least 2");
  return narrow((wide_pow(q, a) - 1) / static_cast<Wide>(q - 1));
}

BoundsReport bounds_report(std::uint64_t q, std::uint64_t ell, std::uint64_t r, std::uint64_t n) {
  if (!prime_power(q)) fail(ErrorKind::BadParameters, "q = " + std::to_string(q) + " is not a prime power");
  if (ell < 1) fail(ErrorKind::BadParameters, "ell must be at least 1");
  if (r < 2) fail(ErrorKind::BadParameters, "r must be at least 2");
  if (n < r) fail(ErrorKind::BadParameters, "n must be at least r");

  const Wide t = projective_points(q, ell);
  const Wide base = static_cast<Wide>(ell) * static_cast<Wide>(n - 1);
  const Wide qell = wide_pow(q, ell);

  BoundsReport rep;
  rep.q = q;
  rep.ell = ell;
  rep.r = r;
  rep.n = n;
  rep.im_bound = narrow(base - static_cast<Wide>(r - 1) * t);
  rep.pc_bound = narrow(base - projective_points(q, (r - 1) * ell));
  rep.length_max = narrow(qell + static_cast<Wide>(r) - 1);
  rep.equality_min_length = narrow(1 + static_cast<Wide>(r - 1) * t);
  const Wide covered = qell + 2 - 2 * static_cast<Wide>(r - 1) * t;
  rep.coverage_fraction = Rational::make(narrow(std::max<Wide>(covered, 0)), rep.length_max);
  rep.r_le_q = r <= q;
  return rep;
}

}  // namespace mdsrepair
