#pragma once

// Pfaffians of strongly skew-symmetric matrices and the normalized standard
// signatures they generate through their principal minors.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "matchsig/bits.hpp"
#include "matchsig/field.hpp"
#include "matchsig/signature.hpp"

namespace matchsig {

/// n x n strongly skew-symmetric matrix stored by its strict upper triangle
/// m(1,2), m(1,3), ..., m(n-1,n) in row-major order. Indices are 1-based.
class SkewMatrix {
 public:
  SkewMatrix(int n, Field field);
  SkewMatrix(int n, Field field, std::vector<Element> upper);

  int size() const { return n_; }
  const Field& field() const { return field_; }

  /// m(i,j) for any 1 <= i, j <= n; m(j,i) = -m(i,j) and m(i,i) = 0.
  Element at(int i, int j) const;
  /// Sets m(i,j) (and implicitly m(j,i) = -m(i,j)). Requires i != j.
  void set(int i, int j, Element v);

  const std::vector<Element>& upper() const { return upper_; }

  /// M_x: the principal submatrix on the rows/columns i with x_i = 1.
  SkewMatrix minor(Bits x) const;

  friend bool operator==(const SkewMatrix&, const SkewMatrix&) = default;

 private:
  std::size_t offset(int i, int j) const;

  int n_;
  Field field_;
  std::vector<Element> upper_;
};

/// Pf(M) by expansion along the last row and column,
///   Pf(M) = sum_{i<n} (-1)^{i-1} m(i,n) Pf(M without rows i, n),
/// memoized over the index subsets that occur.
Element pfaffian(const SkewMatrix& m);

/// Pf(M) as the signed sum over all perfect pairings, with the sign given by
/// the parity of the number of overlapping pairs. Exponential; for checks.
Element pfaffian_by_pairings(const SkewMatrix& m);

/// f_M(x) = Pf(M_x) for every x. Each minor reuses the minors two rows
/// smaller, so the whole table costs O(n 2^n) field operations.
Signature signature_from_matrix(const SkewMatrix& m);

/// m(i,j) = f(e_i + e_j) for i < j. Purely syntactic.
SkewMatrix matrix_from_signature(const Signature& f);

/// Builds h^n from M by the shift-set recursion: h^1 = [1, 0] and h^j agrees
/// with h^{j-1} on x_j = 0 while its x_j = 1 half is
/// sum_{i<j} m(i,j) s_i^{h^{j-1}} (basepoint 0). If `steps` is non-null the
/// number of (basis vector, table entry) visits is added to it.
Signature rebuild_recursive(const SkewMatrix& m, std::uint64_t* steps = nullptr);

/// A monomial +-prod lambda_{j,i} with lambda_{j,i} = m(i,j), j > i.
struct SignedMonomial {
  int sign = 1;
  std::vector<std::pair<int, int>> factors;  // (j, i), descending by j

  friend auto operator<=>(const SignedMonomial&, const SignedMonomial&) = default;
};

/// Symbolic Pfaffian of the minor selected by x, one monomial per pairing,
/// sorted lexicographically by factor list. Throws for odd |x|.
std::vector<SignedMonomial> symbolic_minor(Bits x);

/// Evaluates a symbolic expansion at the entries of M.
Element evaluate(const std::vector<SignedMonomial>& poly, const SkewMatrix& m);

/// "1", or terms such as "λ_{4,1}λ_{3,2} - λ_{4,2}λ_{3,1} + λ_{4,3}λ_{2,1}".
std::string format_polynomial(const std::vector<SignedMonomial>& poly);

/// (2k-1)!! = (2k)! / (k! 2^k); 1 for k = 0.
std::uint64_t double_factorial_odd(int k);

}  // namespace matchsig
