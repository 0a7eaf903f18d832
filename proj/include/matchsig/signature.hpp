#pragma once

// n-bit functions V^n -> F stored as truth tables, together with the
// transforms used throughout: restriction of the last bit, bit flips,
// normalization, and the shift basis / shift set machinery.

#include <optional>
#include <span>
#include <vector>

#include "matchsig/bits.hpp"
#include "matchsig/field.hpp"

namespace matchsig {

/// An n-bit function as a length-2^n truth table. Position k holds f(x) for
/// the bit string x with index k (x_1 is the least significant bit).
class Signature {
 public:
  Signature(int n, Field field, std::vector<Element> values);

  static Signature zero(int n, Field field);

  int bits() const { return n_; }
  const Field& field() const { return field_; }
  std::size_t size() const { return values_.size(); }

  const Element& operator[](Bits x) const { return values_[x]; }
  std::span<const Element> values() const { return values_; }

  bool is_zero() const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.n_ == b.n_ && a.field_ == b.field_ && a.values_ == b.values_;
  }

 private:
  int n_;
  Field field_;
  std::vector<Element> values_;
};

enum class Parity { Zero, StrictlyEven, StrictlyOdd, Mixed };

const char* to_string(Parity p);

Parity parity_of(const Signature& f);

/// f_b: the (n-1)-bit function obtained by fixing x_n = b.
Signature restrict_last_bit(const Signature& f, int b);

/// g(x) = f(x + e_i), 1 <= i <= n.
Signature flip_bit(const Signature& f, int i);

/// Lexicographically smallest input with a non-zero value, if any.
std::optional<Bits> first_nonzero(const Signature& f);

struct Normalized {
  Signature signature;  // g(x) = scale^{-1} f(x + basepoint), g(0...0) = 1
  Bits basepoint;
  Element scale;        // f(basepoint)
};

/// Normalizes f around `basepoint`, or around the first non-zero input when
/// none is given. Throws std::invalid_argument when f is zero or vanishes at
/// the requested basepoint.
Normalized normalize(const Signature& f, std::optional<Bits> basepoint = std::nullopt);

/// The shift basis function s_i^f relative to a basepoint x^ with f(x^) != 0:
///
///   s_i(x) = 0                                      if x_i == x^_i
///   s_i(x) = (-1)^{|x + x^|_1^{i-1}} f(x + e_i)      otherwise
struct ShiftBasisVector {
  int index;
  Bits basepoint;
  Signature table;
};

ShiftBasisVector shift_basis(const Signature& f, int i, Bits basepoint);

/// sum_i coeffs[i-1] * s_i^f, computed in a single pass over the table.
/// `coeffs` has one entry per bit of f.
Signature shift_combination(const Signature& f, Bits basepoint, std::span<const Element> coeffs);

/// Coefficients (lambda_1 ... lambda_n) with g = sum lambda_i s_i^f, or nullopt
/// when g is outside the shift set of f. The basis is diagonal on the points
/// x^ + e_j, so candidates are read there and then checked on every entry.
std::optional<std::vector<Element>> shift_set_solve(const Signature& g, const Signature& f, Bits basepoint);

}  // namespace matchsig
