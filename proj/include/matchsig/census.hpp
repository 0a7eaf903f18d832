#pragma once

// Counting standard signatures over finite fields, the asymptotic constant
// gamma(s), expected sparsity, uniform samplers and exhaustive enumeration.
//
// Counting functions take the field size s as a plain integer since the
// formulas depend on nothing else. Samplers and enumerators need a Field.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "matchsig/field.hpp"
#include "matchsig/signature.hpp"

namespace matchsig {

struct CountReport {
  std::uint64_t s = 0;
  int n = 0;
  mpz_class normalized;           // |B_n| = s^{n(n-1)/2}
  mpz_class odd;                  // |A_n^odd| = (s-1) prod_{i<n} (s^i + 1)
  mpz_class even;                 // equal to odd via the bit-flip bijection
  mpz_class all;                  // 1 + 2 |A_n^odd|
  mpz_class semi_normalized_odd;  // |H_n^odd| = |A_n^odd| / (s-1)
};

/// Throws std::invalid_argument for s < 2 or n < 1.
CountReport count(std::uint64_t s, int n);

/// A rational enclosure lower <= x <= upper together with a point value.
struct CertifiedValue {
  mpq_class value;
  mpq_class lower;
  mpq_class upper;

  /// Round-to-nearest decimal rendering. Throws std::logic_error if the
  /// enclosure is too wide to fix the requested digits.
  std::string decimal(int digits) const;
};

struct GammaValue {
  std::uint64_t s = 0;
  int digits = 0;
  CertifiedValue value;
  int terms = 0;  // pentagonal indices used on each side, |i| <= terms

  std::string decimal() const { return value.decimal(digits); }
};

/// gamma(s) = prod_{i>=1} (1 + s^{-i}), evaluated as the ratio of Euler's
/// pentagonal series in sigma = 1/s,
///
///   gamma = sum_i (-1)^i sigma^{2 w(i)} / sum_i (-1)^i sigma^{w(i)},
///   w(i) = (3i^2 - i) / 2, i over all integers,
///
/// in exact rationals. Truncating at |i| <= K leaves a tail bounded by
/// sigma^{w(K+1)} / (1 - sigma) on each series; K grows until the enclosure is
/// narrower than 10^{-digits-2} and the rounded digits are fixed.
GammaValue gamma(std::uint64_t s, int digits);

/// The limiting sparsity 1/gamma(s), enclosed by inverting gamma's bounds.
CertifiedValue inverse_gamma(std::uint64_t s, int digits);

/// prod_{i=1}^{N} (1 + s^{-i}) truncated at N factors, exact. Slow to
/// converge; used to cross-check the pentagonal route.
mpq_class gamma_partial_product(std::uint64_t s, int factors);

/// Pr[f(x) != 0] for f uniform in A_n^even and fixed even x, which is also the
/// expected fraction of non-zero entries among the inputs of f's parity:
/// [prod_{i=1}^{n-1} (1 + s^{-i})]^{-1}. Over all 2^n inputs it is half that.
mpq_class expected_sparsity(std::uint64_t s, int n);

struct CardinalityComparison {
  mpz_class all_functions;        // s^{2^n}
  mpz_class parity_functions;     // 2 s^{2^{n-1}} - 1
  mpz_class standard;             // |A_n|
  mpz_class symmetric_realizable; // s (s-1)^3 (s+3) + 1
  std::string symmetric_caveat;
};

CardinalityComparison cardinality_comparison(std::uint64_t s, int n);

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection on whole words.
std::uint64_t uniform_below(std::uint64_t bound, Rng& rng);
mpz_class uniform_below(const mpz_class& bound, Rng& rng);

Element random_element(const Field& field, Rng& rng);

/// Uniform element of B_n: i.i.d. uniform matrix entries pushed through the
/// Pfaffian minors, which is a bijection onto B_n. Finite fields only.
Signature sample_normalized(const Field& field, int n, Rng& rng);

/// Uniform element of A_n^odd or A_n^even (parity must be StrictlyOdd or
/// StrictlyEven). Finite fields only.
///
/// Level n splits disjointly into {f_0 != 0, f_1 in shift set of f_0}, of size
/// s^{n-1} |A_{n-1}|, and {f_0 = 0, f_1 of opposite parity}, of size
/// |A_{n-1}|. The branch is drawn with exact integer odds, then each part is
/// filled uniformly.
Signature sample_parity(const Field& field, int n, Parity parity, Rng& rng);

/// Generator for stream `stream` of a run seeded with `seed`. Streams with
/// different indices are seeded independently through std::seed_seq.
Rng stream_rng(std::uint64_t seed, std::uint64_t stream);

struct SparsityTrial {
  std::uint64_t trials = 0;
  std::uint64_t nonzero_at_probe = 0;  // draws with f(probe) != 0
  std::uint64_t accepted = 0;          // draws accepted by recognize_fast
  std::uint64_t nonzero_entries = 0;   // summed over all draws
};

/// Draws `trials` signatures with sample_parity and tallies them. Draws are
/// split into fixed chunks of 1024, chunk k using stream_rng(seed, k), so the
/// tallies do not depend on `threads` (0 = hardware concurrency).
SparsityTrial run_sparsity_trial(const Field& field, int n, Parity parity, std::uint64_t trials,
                                 std::uint64_t seed, Bits probe = 0, unsigned threads = 0);

enum class SearchSpace {
  /// Every function, if s^{2^n} fits the guard; otherwise ParitySupported.
  Auto,
  Full,
  /// Functions supported on even-weight inputs or on odd-weight inputs.
  ParitySupported,
};

inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

/// Visits every function accepted by recognize_naive in lexicographic order
/// of the truth table (entry 0 first, element codes ascending). Throws
/// std::invalid_argument when the chosen space exceeds kEnumerationGuard.
/// Returns the number of candidates examined.
std::uint64_t for_each_standard(const Field& field, int n, SearchSpace space,
                                const std::function<void(const Signature&)>& visit);

std::vector<Signature> enumerate_standard(const Field& field, int n, SearchSpace space = SearchSpace::Auto);

}  // namespace matchsig
