#include "matchsig/signature.hpp"

#include <string>

namespace matchsig {

namespace {

void check_bits(int n) {
  if (n < 1 || n > kMaxBits)
    throw std::invalid_argument("bit count must be in [1, " + std::to_string(kMaxBits) + "], got " +
                                std::to_string(n));
}

void check_index(const Signature& f, int i) {
  if (i < 1 || i > f.bits())
    throw std::invalid_argument("bit index " + std::to_string(i) + " out of range [1, " +
                                std::to_string(f.bits()) + "]");
}

void check_basepoint(const Signature& f, Bits basepoint) {
  if (basepoint >= f.size()) throw std::invalid_argument("basepoint out of range");
  if (f[basepoint].is_zero()) throw std::invalid_argument("f vanishes at the basepoint");
}

}  // namespace

Signature::Signature(int n, Field field, std::vector<Element> values)
    : n_(n), field_(field), values_(std::move(values)) {
  check_bits(n);
  std::size_t expected = std::size_t{1} << n;
  if (values_.size() != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) + " values, got " +
                                std::to_string(values_.size()));
  for (const auto& v : values_)
    if (v.impl() != field_.impl()) throw std::invalid_argument("value does not belong to " + field_.name());
}

Signature Signature::zero(int n, Field field) {
  check_bits(n);
  return Signature(n, field, std::vector<Element>(std::size_t{1} << n, field.zero()));
}

bool Signature::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

const char* to_string(Parity p) {
  switch (p) {
    case Parity::Zero: return "zero";
    case Parity::StrictlyEven: return "even";
    case Parity::StrictlyOdd: return "odd";
    case Parity::Mixed: return "mixed";
  }
  return "?";
}

Parity parity_of(const Signature& f) {
  bool even = false, odd = false;
  for (Bits x = 0; x < f.size(); ++x) {
    if (f[x].is_zero()) continue;
    (weight(x) % 2 ? odd : even) = true;
  }
  if (even && odd) return Parity::Mixed;
  if (even) return Parity::StrictlyEven;
  if (odd) return Parity::StrictlyOdd;
  return Parity::Zero;
}

Signature restrict_last_bit(const Signature& f, int b) {
  if (f.bits() < 2) throw std::invalid_argument("restrict_last_bit needs at least 2 bits");
  if (b != 0 && b != 1) throw std::invalid_argument("restricted bit must be 0 or 1");
  auto half = f.size() / 2;
  auto begin = f.values().begin() + static_cast<std::ptrdiff_t>(b ? half : 0);
  return Signature(f.bits() - 1, f.field(), std::vector<Element>(begin, begin + static_cast<std::ptrdiff_t>(half)));
}

Signature flip_bit(const Signature& f, int i) {
  check_index(f, i);
  std::vector<Element> out(f.size());
  for (Bits x = 0; x < f.size(); ++x) out[x] = f[x ^ unit(i)];
  return Signature(f.bits(), f.field(), std::move(out));
}

std::optional<Bits> first_nonzero(const Signature& f) {
  for (Bits x = 0; x < f.size(); ++x)
    if (!f[x].is_zero()) return x;
  return std::nullopt;
}

Normalized normalize(const Signature& f, std::optional<Bits> basepoint) {
  if (!basepoint) {
    basepoint = first_nonzero(f);
    if (!basepoint) throw std::invalid_argument("cannot normalize the zero function");
  }
  check_basepoint(f, *basepoint);
  Element scale = f[*basepoint];
  Element inv = scale.inverse();
  std::vector<Element> out(f.size());
  for (Bits x = 0; x < f.size(); ++x) out[x] = inv * f[x ^ *basepoint];
  return {Signature(f.bits(), f.field(), std::move(out)), *basepoint, scale};
}

ShiftBasisVector shift_basis(const Signature& f, int i, Bits basepoint) {
  check_index(f, i);
  check_basepoint(f, basepoint);
  std::vector<Element> out(f.size(), f.field().zero());
  for (Bits x = 0; x < f.size(); ++x) {
    if (test_bit(x, i) == test_bit(basepoint, i)) continue;
    bool odd = partial_weight(x ^ basepoint, 1, i - 1) % 2;
    out[x] = f[x ^ unit(i)].negate_if(odd);
  }
  return {i, basepoint, Signature(f.bits(), f.field(), std::move(out))};
}

Signature shift_combination(const Signature& f, Bits basepoint, std::span<const Element> coeffs) {
  if (coeffs.size() != static_cast<std::size_t>(f.bits()))
    throw std::invalid_argument("expected one coefficient per bit");
  check_basepoint(f, basepoint);
  const int n = f.bits();
  const Element zero = f.field().zero();
  std::vector<Element> out(f.size(), zero);
  for (Bits x = 0; x < f.size(); ++x) {
    Bits diff = x ^ basepoint;
    Element acc = zero;
    // Walking i upward, the sign exponent |x + x^|_1^{i-1} is the number of
    // differing bits already passed.
    int passed = 0;
    for (int i = 1; i <= n; ++i) {
      if (!test_bit(diff, i)) continue;
      const Element& c = coeffs[static_cast<std::size_t>(i - 1)];
      if (!c.is_zero()) {
        const Element& v = f[x ^ unit(i)];
        if (!v.is_zero()) {
          Element term = c * v;
          acc = (passed % 2) ? acc - term : acc + term;
        }
      }
      ++passed;
    }
    out[x] = std::move(acc);
  }
  return Signature(n, f.field(), std::move(out));
}

std::optional<std::vector<Element>> shift_set_solve(const Signature& g, const Signature& f, Bits basepoint) {
  if (g.bits() != f.bits() || !(g.field() == f.field()))
    throw std::invalid_argument("shift_set_solve: g and f must share bit count and field");
  check_basepoint(f, basepoint);
  Element inv = f[basepoint].inverse();
  std::vector<Element> coeffs;
  coeffs.reserve(static_cast<std::size_t>(f.bits()));
  for (int j = 1; j <= f.bits(); ++j) coeffs.push_back(g[basepoint ^ unit(j)] * inv);
  if (shift_combination(f, basepoint, coeffs) == g) return coeffs;
  return std::nullopt;
}

}  // namespace matchsig
