#pragma once

// Finite-field tower F_p ⊆ F_q ⊆ F_{q^ℓ}.
//
// Elements are integer codes. A base element y0 + y1·y + ... of
// F_q = F_p[y]/(base_poly) has code y0 + y1·p + y2·p² + ...; a top element
// x0 + x1·z + ... of F_{q^ℓ} = F_q[z]/(ext_poly) has code x0 + x1·q + ...
// with every xi a base code. F_q sits inside F_{q^ℓ} as the constant
// coefficients, so a base code is also the top code of the same element.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mdsrepair/matrix.hpp"

namespace mdsrepair {

/// Arithmetic in F_q = F_p[y]/(modulus). A prime field when the modulus is empty.
class BaseField {
 public:
  explicit BaseField(std::uint32_t p);
  /// `modulus` is monic over F_p, low-degree-first; irreducibility is the
  /// caller's responsibility (FieldTower checks it).
  BaseField(std::uint32_t p, std::vector<Symbol> modulus);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return q_; }

  Symbol add(Symbol a, Symbol b) const noexcept {
    if (!add_.empty()) return add_[a * q_ + b];
    if (m_ == 1) return static_cast<Symbol>((std::uint64_t{a} + b) % p_);
    return add_digits(a, b);
  }
  Symbol sub(Symbol a, Symbol b) const noexcept { return add(a, neg(b)); }
  Symbol neg(Symbol a) const noexcept {
    if (!neg_.empty()) return neg_[a];
    return a == 0 ? 0 : p_ - a;
  }
  Symbol mul(Symbol a, Symbol b) const noexcept {
    if (!mul_.empty()) return mul_[a * q_ + b];
    if (m_ == 1) return static_cast<Symbol>((std::uint64_t{a} * b) % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  /// Throws DivisionByZero for a == 0.
  Symbol inv(Symbol a) const;
  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
  Symbol pow(Symbol a, std::uint64_t e) const noexcept;

 private:
  Symbol add_digits(Symbol a, Symbol b) const noexcept;
  Symbol mul_slow(Symbol a, Symbol b) const;

  std::uint32_t p_ = 2;
  std::uint32_t m_ = 1;
  std::uint32_t q_ = 2;
  std::vector<Symbol> modulus_;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<Symbol> neg_;
  std::vector<Symbol> inv_;
  std::vector<Symbol> log_;
  std::vector<Symbol> exp_;
};

enum class Level { base, top };

struct Elt {
  Level level = Level::base;
  Symbol code = 0;

  static Elt base(Symbol code) { return {Level::base, code}; }
  static Elt top(Symbol code) { return {Level::top, code}; }

  friend bool operator==(const Elt&, const Elt&) = default;
};

/// The two-level tower. Immutable after construction; share it freely.
class FieldTower {
 public:
  /// Validates (or, when omitted, searches for) the defining polynomials.
  /// Throws NonPrime, ReduciblePolynomial, DegreeMismatch, UnsupportedSize.
  static FieldTower build(std::uint32_t p, std::uint32_t m, std::uint32_t ell,
                          std::optional<std::vector<Symbol>> base_poly = std::nullopt,
                          std::optional<std::vector<Symbol>> ext_poly = std::nullopt);

  std::uint32_t p() const noexcept { return base_.characteristic(); }
  std::uint32_t m() const noexcept { return base_.degree(); }
  std::uint32_t ell() const noexcept { return ell_; }
  std::uint32_t q() const noexcept { return base_.order(); }
  /// q^ℓ.
  std::uint32_t top_order() const noexcept { return top_order_; }
  /// t_ℓ(q) = (q^ℓ − 1)/(q − 1).
  std::uint64_t points_count() const noexcept { return (top_order_ - 1) / (q() - 1); }

  const BaseField& base() const noexcept { return base_; }
  /// Low-degree-first over F_p; empty when m = 1.
  const std::vector<Symbol>& base_poly() const noexcept { return base_poly_; }
  /// Low-degree-first over F_q, leading 1 included.
  const std::vector<Symbol>& ext_poly() const noexcept { return ext_poly_; }

  Symbol top_add(Symbol a, Symbol b) const noexcept;
  Symbol top_sub(Symbol a, Symbol b) const noexcept;
  Symbol top_neg(Symbol a) const noexcept;
  Symbol top_mul(Symbol a, Symbol b) const noexcept;
  Symbol top_inv(Symbol a) const;
  Symbol top_div(Symbol a, Symbol b) const { return top_mul(a, top_inv(b)); }
  Symbol top_pow(Symbol a, std::uint64_t e) const noexcept;

  /// x ↦ x^q.
  Symbol frobenius(Symbol x) const noexcept { return top_pow(x, q()); }
  /// x ↦ x^{t_ℓ(q)}, returned as a base code.
  Symbol norm(Symbol x) const;
  /// Coordinates in the basis 1, z, …, z^{ℓ−1}.
  Vec reduce(Symbol x) const;
  Symbol lift(std::span<const Symbol> coords) const;

 private:
  FieldTower(BaseField base, std::vector<Symbol> base_poly, std::vector<Symbol> ext_poly,
             std::uint32_t ell);
  Symbol mul_slow(Symbol a, Symbol b) const;

  BaseField base_;
  std::vector<Symbol> base_poly_;
  std::vector<Symbol> ext_poly_;
  std::uint32_t ell_ = 1;
  std::uint32_t top_order_ = 2;
  std::vector<Symbol> log_;
  std::vector<Symbol> exp_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

// Level-checked element operations.

enum class ArithOp { add, sub, mul, div, pow, inv };

/// Second operand: an element for add/sub/mul/div, an exponent for pow,
/// ignored for inv.
using Operand = std::variant<Elt, std::uint64_t>;

/// Throws LevelMismatch, DivisionByZero, BadParameters (out-of-range code or
/// wrong operand kind).
Elt element_arith(const FieldTower& t, ArithOp op, Elt a, Operand b = std::uint64_t{0});

Elt frobenius(const FieldTower& t, Elt x);
Elt norm_to_base(const FieldTower& t, Elt x);
Vec field_reduce(const FieldTower& t, Elt x);
Elt field_lift(const FieldTower& t, std::span<const Symbol> coords);

struct MultiplyBy {
  Elt factor;
};
struct FrobeniusMap {};
using LinearMap = std::variant<MultiplyBy, FrobeniusMap>;

/// ℓ×ℓ matrix A over F_q with A·reduce(y) = reduce(map(y)).
Matrix linear_map_matrix(const FieldTower& t, const LinearMap& map);

bool is_prime(std::uint64_t n) noexcept;

/// Returns (p, m) when n = p^m for a prime p.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t n) noexcept;

}  // namespace mdsrepair
