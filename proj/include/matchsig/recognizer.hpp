#pragma once

// Deciding whether a function is a standard signature.
//
// Two independent routes are provided. The naive route checks the Parity
// Constraint and every Matchgate Identity
//
//   sum_{i=1}^{L} (-1)^i f(alpha + e_{p_i}) f(alpha + e_{p_i} + p) = 0,
//
// where p_1 < ... < p_L are the set positions of p, at a cost of
// O(n 4^n). The fast route normalizes f, reads a skew matrix off the
// weight-two entries, rebuilds the unique candidate from that matrix by the
// shift-set recursion, and compares, in O(n 2^n).
//
// Identity witnesses use the (-1)^i sign convention above; the opposite
// convention only flips the sign of the reported value.

#include <cstdint>
#include <optional>
#include <variant>

#include "matchsig/pfaffian.hpp"
#include "matchsig/signature.hpp"

namespace matchsig {

enum class Verdict { ZeroSignature, Standard, NotStandard };

const char* to_string(Verdict v);

/// f(x) = scale * f_M(x + basepoint) for all x.
struct Certificate {
  Bits basepoint;
  Element scale;
  SkewMatrix matrix;
};

/// Two non-zero inputs of opposite weight parity: the first non-zero input
/// and the first non-zero input of the other parity.
struct ParityWitness {
  Bits first;
  Bits second;
};

/// A Matchgate Identity (alpha, p) whose sum is `value` != 0.
struct IdentityWitness {
  Bits alpha;
  Bits p;
  Element value;
};

/// The first input where f differs from the rebuilt candidate
/// scale * h(x + basepoint).
struct MismatchWitness {
  Bits input;
  Element expected;
  Element actual;
};

using Witness = std::variant<ParityWitness, IdentityWitness, MismatchWitness>;

struct RecognitionVerdict {
  Verdict status = Verdict::NotStandard;
  std::optional<Certificate> certificate;  // set iff Standard
  std::optional<Witness> witness;          // set iff NotStandard
  std::uint64_t steps = 0;                 // table reads and term evaluations

  bool accepted() const { return status != Verdict::NotStandard; }
};

/// nullopt when f is zero, strictly even or strictly odd.
std::optional<ParityWitness> check_parity_constraint(const Signature& f);

enum class IdentityScan {
  /// Every alpha and p.
  Exhaustive,
  /// Even-weight p and alpha of parity opposite to f. Only meaningful once
  /// the Parity Constraint holds.
  ParityRestricted,
  /// Only identities that can contain a non-zero term: p = u + v for
  /// support points u != v and alpha = u + e_j or v + e_j with j in p. At
  /// most 2n * C(k,2) identities for k non-zero entries. Requires parity.
  SparseSupport,
};

/// The sum of one Matchgate Identity.
Element identity_value(const Signature& f, Bits alpha, Bits p);

/// nullopt when all identities in the scan hold. Otherwise the failure that
/// comes first with alpha as the outer and p as the inner ascending index,
/// which is the same witness in every scan mode.
std::optional<IdentityWitness> check_matchgate_identities(const Signature& f, IdentityScan scan,
                                                          std::uint64_t* steps = nullptr);

RecognitionVerdict recognize_fast(const Signature& f);

/// Parity Constraint followed by the Matchgate Identities.
RecognitionVerdict recognize_naive(const Signature& f, IdentityScan scan = IdentityScan::ParityRestricted);

bool verify_certificate(const Signature& f, const Certificate& c);

/// Re-checks a NotStandard witness against its definition.
bool verify_witness(const Signature& f, const Witness& w);

}  // namespace matchsig
