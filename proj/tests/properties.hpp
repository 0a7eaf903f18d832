#pragma once

// Exhaustive structural properties of standard signatures. Each check returns
// an empty string on success or a description of the first failure. Set
// membership is decided by the forward construction in oracles.hpp, not by
// the recognizer.

#include <string>

#include "oracles.hpp"

namespace properties {

using namespace matchsig;

inline std::string describe(const Signature& f) {
  std::string s = "[";
  for (std::size_t k = 0; k < f.size(); ++k) s += (k ? " " : "") + f[static_cast<Bits>(k)].str();
  return s + "]";
}

inline Signature from_key(const Field& field, int n, const oracle::Key& k) {
  std::vector<Element> v;
  for (auto c : k) v.push_back(field.from_code(c));
  return Signature(n, field, std::move(v));
}

/// f in A_n implies f_0, f_1 in A_{n-1}, for 2 <= n <= max_n.
inline std::string restriction_closure(const Field& field, int max_n) {
  for (int n = 2; n <= max_n; ++n) {
    const auto upper = oracle::standard_by_construction(field, n);
    const auto lower = oracle::standard_by_construction(field, n - 1);
    for (const auto& k : upper) {
      const Signature f = from_key(field, n, k);
      for (int b : {0, 1})
        if (!lower.count(oracle::key(restrict_last_bit(f, b))))
          return "restriction f_" + std::to_string(b) + " of " + describe(f) + " is not standard";
    }
  }
  return {};
}

/// For f_0 in A_n non-zero and g supported on the parity opposite to f_0:
/// (f_0, g) is standard iff g lies in the shift set of f_0, at every basepoint.
/// Functions of n+1 <= max_n bits.
inline std::string shift_set_law(const Field& field, int max_n) {
  const auto elems = field.elements();
  for (int n = 1; n + 1 <= max_n; ++n) {
    const auto upper = oracle::standard_by_construction(field, n + 1);
    const auto base = oracle::standard_by_construction(field, n);
    const std::size_t half = std::size_t{1} << n;
    for (const auto& k0 : base) {
      const Signature f0 = from_key(field, n, k0);
      if (f0.is_zero()) continue;
      const bool f0_even = parity_of(f0) == Parity::StrictlyEven;
      std::vector<Bits> slots;
      for (Bits x = 0; x < half; ++x)
        if ((weight(x) % 2 == 0) != f0_even) slots.push_back(x);
      std::vector<std::size_t> digits(slots.size(), 0);
      while (true) {
        std::vector<Element> gv(half, field.zero());
        for (std::size_t s = 0; s < slots.size(); ++s) gv[slots[s]] = elems[digits[s]];
        const Signature g(n, field, gv);
        oracle::Key joined = k0;
        for (const auto& v : gv) joined.push_back(v.code());
        const bool standard = upper.count(joined) > 0;
        for (Bits xhat = 0; xhat < half; ++xhat) {
          if (f0[xhat].is_zero()) continue;
          const bool in_span = shift_set_solve(g, f0, xhat).has_value();
          if (in_span != standard)
            return "f_0=" + describe(f0) + " f_1=" + describe(g) + " basepoint " + bits_to_string(xhat, n) +
                   (standard ? ": standard but outside the shift set" : ": in the shift set but not standard");
        }
        std::size_t d = 0;
        while (d < digits.size() && ++digits[d] == elems.size()) digits[d++] = 0;
        if (d == digits.size()) break;
      }
    }
  }
  return {};
}

/// flip_bit(., i) maps A_n^even onto A_n^odd bijectively for every i.
inline std::string flip_parity_bijection(const Field& field, int max_n) {
  for (int n = 1; n <= max_n; ++n) {
    const auto all = oracle::standard_by_construction(field, n);
    std::set<oracle::Key> even, odd;
    for (const auto& k : all) {
      const Parity p = parity_of(from_key(field, n, k));
      if (p == Parity::StrictlyEven) even.insert(k);
      if (p == Parity::StrictlyOdd) odd.insert(k);
      if (p == Parity::Mixed) return "standard signature with mixed parity: " + describe(from_key(field, n, k));
    }
    if (even.size() != odd.size()) return "even and odd classes differ in size at n=" + std::to_string(n);
    for (int i = 1; i <= n; ++i) {
      std::set<oracle::Key> image;
      for (const auto& k : even) image.insert(oracle::key(flip_bit(from_key(field, n, k), i)));
      if (image != odd) return "flip_bit(., " + std::to_string(i) + ") does not map even onto odd at n=" + std::to_string(n);
    }
  }
  return {};
}

/// For standard f, normalizing at any non-zero basepoint gives a function in
/// B_n, and the shift set of f does not depend on the basepoint.
inline std::string basepoint_independence(const Field& field, int max_n) {
  for (int n = 1; n <= max_n; ++n) {
    const auto all = oracle::standard_by_construction(field, n);
    std::set<oracle::Key> normalized;
    for (const auto& k : all) {
      const Signature f = from_key(field, n, k);
      if (!f.is_zero() && f[0].is_one()) normalized.insert(k);
    }
    for (const auto& k : all) {
      const Signature f = from_key(field, n, k);
      if (f.is_zero()) continue;
      std::vector<Bits> support;
      for (Bits x = 0; x < f.size(); ++x)
        if (!f[x].is_zero()) support.push_back(x);
      for (Bits xhat : support)
        if (!normalized.count(oracle::key(normalize(f, xhat).signature)))
          return "normalizing " + describe(f) + " at " + bits_to_string(xhat, n) + " leaves B_n";
      // Compare spans through the basis vectors: each s_i at one basepoint
      // must be expressible at every other.
      for (Bits a : support)
        for (int i = 1; i <= n; ++i) {
          const Signature v = shift_basis(f, i, a).table;
          for (Bits b : support)
            if (!shift_set_solve(v, f, b))
              return "shift set of " + describe(f) + " differs between basepoints " + bits_to_string(a, n) +
                     " and " + bits_to_string(b, n);
        }
    }
  }
  return {};
}

}  // namespace properties
