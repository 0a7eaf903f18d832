#pragma once

// Exact arithmetic over the base field: prime fields GF(p), the extension
// fields GF(4), GF(8), GF(9), and the rationals.

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace matchsig {

enum class FieldKind { Prime, GF4, GF8, GF9, Rational };

class Field;
class Element;

namespace detail {

struct FieldImpl {
  FieldKind kind;
  std::uint32_t characteristic;  // 0 for the rationals
  std::uint32_t degree;          // degree over the prime subfield
  std::uint32_t order;           // number of elements, 0 when infinite
  std::string name;
  // Extension fields keep full operation tables indexed by element code.
  std::vector<std::uint8_t> add_table, mul_table, neg_table, inv_table;
};

[[noreturn]] void throw_mixed_fields();
[[noreturn]] void throw_division_by_zero();
[[noreturn]] void throw_no_field();

}  // namespace detail

/// A field element in canonical form.
///
/// Finite-field elements are stored as a code in [0, q). For GF(p) the code is
/// the residue; for extensions it is sum(c_k * p^k) over the coefficients of
/// the polynomial representative, lowest degree first. Rationals carry a
/// reduced GMP fraction.
class Element {
 public:
  Element() = default;

  Field field() const;
  const detail::FieldImpl* impl() const { return field_; }

  bool is_zero() const { return field_ && (q_ ? sgn(*q_) == 0 : code_ == 0); }
  bool is_one() const;

  /// Finite fields only.
  std::uint32_t code() const { return code_; }
  /// Rationals only.
  const mpq_class& rational() const;

  Element inverse() const;
  Element operator-() const;

  /// Returns -x when `odd`, x otherwise. This is (-1)^k * x with k's parity
  /// given, which collapses correctly in characteristic 2.
  Element negate_if(bool odd) const { return odd ? -*this : *this; }

  std::string str() const;

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator/(const Element& a, const Element& b);
  Element& operator+=(const Element& b) { return *this = *this + b; }
  Element& operator-=(const Element& b) { return *this = *this - b; }
  Element& operator*=(const Element& b) { return *this = *this * b; }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.field_ != b.field_ || a.code_ != b.code_) return false;
    return !a.q_ || *a.q_ == *b.q_;
  }

 private:
  friend class Field;
  Element(const detail::FieldImpl* f, std::uint32_t code) : field_(f), code_(code) {}
  Element(const detail::FieldImpl* f, mpq_class q)
      : field_(f), q_(std::make_shared<const mpq_class>(std::move(q))) {}

  const detail::FieldImpl* field_ = nullptr;
  std::uint32_t code_ = 0;
  std::shared_ptr<const mpq_class> q_;  // rationals only
};

std::ostream& operator<<(std::ostream& os, const Element& e);

/// Handle to an interned field. Copies are cheap and compare equal exactly
/// when they denote the same field.
class Field {
 public:
  /// GF(p). Throws std::invalid_argument when p is not a prime below 2^32.
  static Field prime(std::uint64_t p);
  /// GF(4) = GF(2)[w]/(w^2+w+1).
  static Field gf4();
  /// GF(8) = GF(2)[w]/(w^3+w+1).
  static Field gf8();
  /// GF(9) = GF(3)[w]/(w^2+1).
  static Field gf9();
  static Field rational();

  /// Parses a descriptor: "gf<p>" for primes, "gf4", "gf8", "gf9", or
  /// "rational".
  static Field parse(std::string_view descriptor);

  FieldKind kind() const { return impl_->kind; }
  bool is_finite() const { return impl_->order != 0; }
  /// Number of elements; nullopt for the rationals.
  std::optional<std::uint64_t> cardinality() const;
  std::uint32_t characteristic() const { return impl_->characteristic; }
  const std::string& name() const { return impl_->name; }

  Element zero() const;
  Element one() const;
  Element from_int(std::int64_t v) const;
  /// Element with the given canonical code (finite fields only).
  Element from_code(std::uint64_t code) const;
  Element from_rational(const mpq_class& q) const;
  /// Parses the text encoding: decimal residue for GF(p), "c0,c1[,c2]" for
  /// extensions (a bare integer is taken as a prime-subfield element), and
  /// "num/den" or an integer for the rationals.
  Element parse_element(std::string_view text) const;

  /// All elements in code order (finite fields only).
  std::vector<Element> elements() const;

  const detail::FieldImpl* impl() const { return impl_; }

  friend bool operator==(const Field& a, const Field& b) { return a.impl_ == b.impl_; }

 private:
  friend class Element;
  explicit Field(const detail::FieldImpl* impl) : impl_(impl) {}
  const detail::FieldImpl* impl_;
};

bool is_prime(std::uint64_t p);

// ---- inline arithmetic -----------------------------------------------------

inline Field Element::field() const {
  if (!field_) detail::throw_no_field();
  return Field(field_);
}

inline bool Element::is_one() const {
  if (!field_) return false;
  if (q_) return *q_ == 1;
  return code_ == 1;
}

inline Element operator+(const Element& a, const Element& b) {
  if (a.field_ != b.field_ || !a.field_) detail::throw_mixed_fields();
  const auto* f = a.field_;
  switch (f->kind) {
    case FieldKind::Prime: {
      std::uint64_t s = std::uint64_t{a.code_} + b.code_;
      if (s >= f->order) s -= f->order;
      return Element(f, static_cast<std::uint32_t>(s));
    }
    case FieldKind::Rational:
      return Element(f, mpq_class(*a.q_ + *b.q_));
    default:
      return Element(f, f->add_table[a.code_ * f->order + b.code_]);
  }
}

inline Element Element::operator-() const {
  if (!field_) detail::throw_no_field();
  switch (field_->kind) {
    case FieldKind::Prime:
      return Element(field_, code_ == 0 ? 0u : field_->order - code_);
    case FieldKind::Rational:
      return Element(field_, mpq_class(-*q_));
    default:
      return Element(field_, field_->neg_table[code_]);
  }
}

inline Element operator-(const Element& a, const Element& b) { return a + (-b); }

inline Element operator*(const Element& a, const Element& b) {
  if (a.field_ != b.field_ || !a.field_) detail::throw_mixed_fields();
  const auto* f = a.field_;
  switch (f->kind) {
    case FieldKind::Prime:
      return Element(f, static_cast<std::uint32_t>((std::uint64_t{a.code_} * b.code_) % f->order));
    case FieldKind::Rational:
      return Element(f, mpq_class(*a.q_ * *b.q_));
    default:
      return Element(f, f->mul_table[a.code_ * f->order + b.code_]);
  }
}

inline Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }

}  // namespace matchsig
