#include "mdsrepair/gf.hpp"

#include <algorithm>
#include <string>

#include "mdsrepair/error.hpp"

namespace mdsrepair {
namespace {

constexpr std::uint32_t kTableLimit = 1u << 16;
constexpr std::uint32_t kFullTableLimit = 256;

using Poly = std::vector<Symbol>;

Vec to_digits(std::uint64_t code, std::uint64_t radix, std::size_t len) {
  Vec d(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] = static_cast<Symbol>(code % radix);
    code /= radix;
  }
  return d;
}

std::uint64_t from_digits(std::span<const Symbol> d, std::uint64_t radix) {
  std::uint64_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * radix + d[i];
  return code;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a nonzero b over F.
Poly poly_rem(Poly a, const Poly& b, const BaseField& f) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const Symbol lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const Symbol factor = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(factor, b[i]));
    trim(a);
  }
  return a;
}

// Product of two residues modulo a monic modulus, both given as digit vectors.
Poly poly_mulmod(std::span<const Symbol> a, std::span<const Symbol> b, const Poly& modulus,
                 const BaseField& f) {
  Poly prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
  }
  Poly r = poly_rem(std::move(prod), modulus, f);
  r.resize(modulus.size() - 1, 0);
  return r;
}

bool is_irreducible(const Poly& poly, const BaseField& f) {
  const std::size_t deg = poly.size() - 1;
  const std::uint64_t q = f.order();
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= q;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly divisor = to_digits(c, q, k);
      divisor.push_back(1);
      if (poly_rem(poly, divisor, f).empty()) return false;
    }
  }
  return true;
}

// Lexicographically smallest monic irreducible of the given degree, comparing
// coefficient lists low-degree-first.
Poly smallest_irreducible(std::size_t deg, const BaseField& f) {
  const std::uint64_t q = f.order();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < deg; ++i) count *= q;
  for (std::uint64_t c = 0; c < count; ++c) {
    Vec digits = to_digits(c, q, deg);
    Poly poly(digits.rbegin(), digits.rend());
    poly.push_back(1);
    if (is_irreducible(poly, f)) return poly;
  }
  fail(ErrorKind::InternalInconsistency, "no irreducible polynomial of degree " + std::to_string(deg));
}

void check_poly_shape(const Poly& poly, std::size_t deg, std::uint32_t coeff_order,
                      const char* which) {
  if (poly.size() != deg + 1 || poly.back() != 1) {
    fail(ErrorKind::DegreeMismatch,
         std::string(which) + " must be monic of degree " + std::to_string(deg));
  }
  for (Symbol c : poly) {
    if (c >= coeff_order) fail(ErrorKind::DegreeMismatch, std::string(which) + " coefficient out of range");
  }
}

template <class MulFn>
bool build_log_tables(std::uint32_t order, MulFn mul, std::vector<Symbol>& log,
                      std::vector<Symbol>& exp) {
  if (order == 2) {
    exp = {1};
    log = {0, 0};
    return true;
  }
  for (Symbol g = 2; g < order; ++g) {
    exp.assign(order - 1, 0);
    Symbol x = 1;
    std::uint32_t period = 0;
    do {
      exp[period++] = x;
      x = mul(x, g);
    } while (x != 1 && period < order - 1);
    if (x == 1 && period == order - 1) {
      log.assign(order, 0);
      for (std::uint32_t i = 0; i < order - 1; ++i) log[exp[i]] = i;
      return true;
    }
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t n) noexcept {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (n % p != 0) p = n;
  std::uint32_t m = 0;
  while (n % p == 0) {
    n /= p;
    ++m;
  }
  if (n != 1) return std::nullopt;
  return std::pair{static_cast<std::uint32_t>(p), m};
}

// --- BaseField -------------------------------------------------------------

BaseField::BaseField(std::uint32_t p) : p_(p), m_(1), q_(p) {
  if (!is_prime(p)) fail(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
  if (q_ > kTableLimit) fail(ErrorKind::UnsupportedSize, "base field larger than 2^16");
  if (q_ <= kFullTableLimit) {
    add_.resize(std::size_t{q_} * q_);
    mul_.resize(std::size_t{q_} * q_);
    for (Symbol a = 0; a < q_; ++a)
      for (Symbol b = 0; b < q_; ++b) {
        add_[a * q_ + b] = static_cast<std::uint16_t>((a + b) % p_);
        mul_[a * q_ + b] = static_cast<std::uint16_t>((a * b) % p_);
      }
  }
  inv_.assign(q_, 0);
  for (Symbol a = 1; a < q_; ++a) inv_[a] = pow(a, q_ - 2);
}

BaseField::BaseField(std::uint32_t p, std::vector<Symbol> modulus) : BaseField(p) {
  if (modulus.empty()) return;
  const BaseField prime(p);
  m_ = static_cast<std::uint32_t>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    q *= p;
    if (q > kTableLimit) fail(ErrorKind::UnsupportedSize, "base field larger than 2^16");
  }
  q_ = static_cast<std::uint32_t>(q);
  modulus_ = std::move(modulus);
  add_.clear();
  mul_.clear();
  inv_.clear();

  auto slow = [&](Symbol a, Symbol b) {
    Vec da = to_digits(a, p_, m_);
    Vec db = to_digits(b, p_, m_);
    return static_cast<Symbol>(from_digits(poly_mulmod(da, db, modulus_, prime), p_));
  };
  neg_.assign(q_, 0);
  for (Symbol a = 0; a < q_; ++a) {
    Vec d = to_digits(a, p_, m_);
    for (Symbol& x : d) x = x == 0 ? 0 : p_ - x;
    neg_[a] = static_cast<Symbol>(from_digits(d, p_));
  }
  if (m_ == 1 && q_ > kFullTableLimit) neg_.clear();
  if (m_ > 1 && !build_log_tables(q_, slow, log_, exp_)) {
    fail(ErrorKind::ReduciblePolynomial, "base_poly does not define a field");
  }
  if (q_ <= kFullTableLimit) {
    add_.resize(std::size_t{q_} * q_);
    mul_.resize(std::size_t{q_} * q_);
    for (Symbol a = 0; a < q_; ++a)
      for (Symbol b = 0; b < q_; ++b) {
        add_[a * q_ + b] = static_cast<std::uint16_t>(add_digits(a, b));
        mul_[a * q_ + b] = static_cast<std::uint16_t>(slow(a, b));
      }
  }
  inv_.assign(q_, 0);
  for (Symbol a = 1; a < q_; ++a) inv_[a] = pow(a, q_ - 2);
}

Symbol BaseField::add_digits(Symbol a, Symbol b) const noexcept {
  Symbol out = 0;
  Symbol scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Symbol BaseField::inv(Symbol a) const {
  if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero in F_q");
  if (!inv_.empty()) return inv_[a];
  return pow(a, q_ - 2);
}

Symbol BaseField::pow(Symbol a, std::uint64_t e) const noexcept {
  Symbol result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

// --- FieldTower ------------------------------------------------------------

FieldTower FieldTower::build(std::uint32_t p, std::uint32_t m, std::uint32_t ell,
                             std::optional<std::vector<Symbol>> base_poly,
                             std::optional<std::vector<Symbol>> ext_poly) {
  if (!is_prime(p)) fail(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
  if (m < 1 || ell < 1) fail(ErrorKind::DegreeMismatch, "extension degrees must be at least 1");

  const BaseField prime(p);
  Poly bpoly;
  if (m == 1) {
    if (base_poly && !base_poly->empty())
      fail(ErrorKind::DegreeMismatch, "base_poly must be empty when m = 1");
  } else if (base_poly) {
    bpoly = *base_poly;
    check_poly_shape(bpoly, m, p, "base_poly");
    if (!is_irreducible(bpoly, prime)) fail(ErrorKind::ReduciblePolynomial, "base_poly");
  } else {
    bpoly = smallest_irreducible(m, prime);
  }
  BaseField base(p, bpoly);

  std::uint64_t top = 1;
  for (std::uint32_t i = 0; i < ell; ++i) {
    top *= base.order();
    if (top >= (std::uint64_t{1} << 32)) fail(ErrorKind::UnsupportedSize, "q^ell must stay below 2^32");
  }

  Poly epoly;
  if (ext_poly) {
    epoly = *ext_poly;
    check_poly_shape(epoly, ell, base.order(), "ext_poly");
    if (!is_irreducible(epoly, base)) fail(ErrorKind::ReduciblePolynomial, "ext_poly");
  } else {
    epoly = smallest_irreducible(ell, base);
  }
  return FieldTower(std::move(base), std::move(bpoly), std::move(epoly), ell);
}

FieldTower::FieldTower(BaseField base, std::vector<Symbol> base_poly, std::vector<Symbol> ext_poly,
                       std::uint32_t ell)
    : base_(std::move(base)),
      base_poly_(std::move(base_poly)),
      ext_poly_(std::move(ext_poly)),
      ell_(ell) {
  std::uint64_t top = 1;
  for (std::uint32_t i = 0; i < ell_; ++i) top *= base_.order();
  top_order_ = static_cast<std::uint32_t>(top);
  if (top_order_ <= kTableLimit) {
    auto slow = [this](Symbol a, Symbol b) { return mul_slow(a, b); };
    if (!build_log_tables(top_order_, slow, log_, exp_)) {
      fail(ErrorKind::InternalInconsistency, "no primitive element in F_{q^ell}");
    }
  }
}

Symbol FieldTower::mul_slow(Symbol a, Symbol b) const {
  const Vec da = reduce(a);
  const Vec db = reduce(b);
  return lift(poly_mulmod(da, db, ext_poly_, base_));
}

Symbol FieldTower::top_add(Symbol a, Symbol b) const noexcept {
  if (ell_ == 1) return base_.add(a, b);
  const std::uint32_t q = base_.order();
  Symbol out = 0;
  Symbol scale = 1;
  for (std::uint32_t i = 0; i < ell_; ++i) {
    out += base_.add(a % q, b % q) * scale;
    a /= q;
    b /= q;
    scale *= q;
  }
  return out;
}

Symbol FieldTower::top_neg(Symbol a) const noexcept {
  const std::uint32_t q = base_.order();
  Symbol out = 0;
  Symbol scale = 1;
  for (std::uint32_t i = 0; i < ell_; ++i) {
    out += base_.neg(a % q) * scale;
    a /= q;
    scale *= q;
  }
  return out;
}

Symbol FieldTower::top_sub(Symbol a, Symbol b) const noexcept { return top_add(a, top_neg(b)); }

Symbol FieldTower::top_mul(Symbol a, Symbol b) const noexcept {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) return exp_[(std::uint64_t{log_[a]} + log_[b]) % (top_order_ - 1)];
  return mul_slow(a, b);
}

Symbol FieldTower::top_inv(Symbol a) const {
  if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero in F_{q^ell}");
  if (!exp_.empty()) return exp_[(top_order_ - 1 - log_[a]) % (top_order_ - 1)];
  return top_pow(a, top_order_ - 2);
}

Symbol FieldTower::top_pow(Symbol a, std::uint64_t e) const noexcept {
  if (!exp_.empty()) {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[(std::uint64_t{log_[a]} * (e % (top_order_ - 1))) % (top_order_ - 1)];
  }
  Symbol result = 1;
  while (e > 0) {
    if (e & 1) result = top_mul(result, a);
    a = top_mul(a, a);
    e >>= 1;
  }
  return result;
}

Symbol FieldTower::norm(Symbol x) const {
  const Symbol y = top_pow(x, points_count());
  if (y >= q()) fail(ErrorKind::InternalInconsistency, "norm left the embedded base field");
  return y;
}

Vec FieldTower::reduce(Symbol x) const { return to_digits(x, base_.order(), ell_); }

Symbol FieldTower::lift(std::span<const Symbol> coords) const {
  if (coords.size() != ell_) fail(ErrorKind::BadShape, "expected ell coordinates");
  for (Symbol c : coords)
    if (c >= q()) fail(ErrorKind::BadParameters, "coordinate outside F_q");
  return static_cast<Symbol>(from_digits(coords, base_.order()));
}

// --- level-checked API -----------------------------------------------------

namespace {

void check_elt(const FieldTower& t, Elt x) {
  const std::uint32_t bound = x.level == Level::base ? t.q() : t.top_order();
  if (x.code >= bound) fail(ErrorKind::BadParameters, "element code out of range");
}

void require_top(const FieldTower& t, Elt x) {
  if (x.level != Level::top) fail(ErrorKind::LevelMismatch, "expected a top-level element");
  check_elt(t, x);
}

}  // namespace

Elt element_arith(const FieldTower& t, ArithOp op, Elt a, Operand b) {
  check_elt(t, a);
  const bool top = a.level == Level::top;
  if (op == ArithOp::inv) {
    return {a.level, top ? t.top_inv(a.code) : t.base().inv(a.code)};
  }
  if (op == ArithOp::pow) {
    const auto* e = std::get_if<std::uint64_t>(&b);
    if (e == nullptr) fail(ErrorKind::BadParameters, "pow expects an integer exponent");
    return {a.level, top ? t.top_pow(a.code, *e) : t.base().pow(a.code, *e)};
  }
  const auto* rhs = std::get_if<Elt>(&b);
  if (rhs == nullptr) fail(ErrorKind::BadParameters, "binary operation expects an element");
  if (rhs->level != a.level) fail(ErrorKind::LevelMismatch, "operands live at different levels");
  check_elt(t, *rhs);
  const BaseField& f = t.base();
  switch (op) {
    case ArithOp::add: return {a.level, top ? t.top_add(a.code, rhs->code) : f.add(a.code, rhs->code)};
    case ArithOp::sub: return {a.level, top ? t.top_sub(a.code, rhs->code) : f.sub(a.code, rhs->code)};
    case ArithOp::mul: return {a.level, top ? t.top_mul(a.code, rhs->code) : f.mul(a.code, rhs->code)};
    case ArithOp::div: return {a.level, top ? t.top_div(a.code, rhs->code) : f.div(a.code, rhs->code)};
    default: break;
  }
  fail(ErrorKind::BadParameters, "unknown operation");
}

Elt frobenius(const FieldTower& t, Elt x) {
  require_top(t, x);
  return Elt::top(t.frobenius(x.code));
}

Elt norm_to_base(const FieldTower& t, Elt x) {
  require_top(t, x);
  return Elt::base(t.norm(x.code));
}

Vec field_reduce(const FieldTower& t, Elt x) {
  require_top(t, x);
  return t.reduce(x.code);
}

Elt field_lift(const FieldTower& t, std::span<const Symbol> coords) { return Elt::top(t.lift(coords)); }

Matrix linear_map_matrix(const FieldTower& t, const LinearMap& map) {
  if (const auto* mb = std::get_if<MultiplyBy>(&map)) require_top(t, mb->factor);
  const std::size_t ell = t.ell();
  Matrix out(ell, ell);
  Symbol basis = 1;  // z^c
  for (std::size_t c = 0; c < ell; ++c) {
    Symbol image = std::holds_alternative<MultiplyBy>(map)
                       ? t.top_mul(std::get<MultiplyBy>(map).factor.code, basis)
                       : t.frobenius(basis);
    const Vec col = t.reduce(image);
    for (std::size_t r = 0; r < ell; ++r) out(r, c) = col[r];
    basis *= t.q();
  }
  return out;
}

}  // namespace mdsrepair
