#include "matchsig/recognizer.hpp"

namespace matchsig {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ZeroSignature: return "zero";
    case Verdict::Standard: return "standard";
    case Verdict::NotStandard: return "not-standard";
  }
  return "?";
}

std::optional<ParityWitness> check_parity_constraint(const Signature& f) {
  auto first = first_nonzero(f);
  if (!first) return std::nullopt;
  const int parity = weight(*first) % 2;
  for (Bits x = *first + 1; x < f.size(); ++x)
    if (weight(x) % 2 != parity && !f[x].is_zero()) return ParityWitness{*first, x};
  return std::nullopt;
}

Element identity_value(const Signature& f, Bits alpha, Bits p) {
  Element acc = f.field().zero();
  int i = 0;
  for (int pos = 1; pos <= f.bits(); ++pos) {
    if (!test_bit(p, pos)) continue;
    ++i;
    const Element& a = f[alpha ^ unit(pos)];
    if (a.is_zero()) continue;
    const Element& b = f[alpha ^ unit(pos) ^ p];
    if (b.is_zero()) continue;
    Element term = a * b;
    acc = (i % 2) ? acc - term : acc + term;
  }
  return acc;
}

std::optional<IdentityWitness> check_matchgate_identities(const Signature& f, IdentityScan scan,
                                                          std::uint64_t* steps) {
  const Bits size = static_cast<Bits>(f.size());
  std::uint64_t local_steps = 0;
  std::optional<IdentityWitness> found;

  auto evaluate = [&](Bits alpha, Bits p) -> bool {
    local_steps += static_cast<std::uint64_t>(weight(p));
    Element v = identity_value(f, alpha, p);
    if (v.is_zero()) return false;
    if (!found || std::pair(alpha, p) < std::pair(found->alpha, found->p)) found = IdentityWitness{alpha, p, v};
    return true;
  };

  switch (scan) {
    case IdentityScan::Exhaustive:
      for (Bits alpha = 0; alpha < size && !found; ++alpha)
        for (Bits p = 1; p < size; ++p)
          if (evaluate(alpha, p)) break;
      break;
    case IdentityScan::ParityRestricted: {
      auto first = first_nonzero(f);
      if (!first) break;
      const int alpha_parity = 1 - weight(*first) % 2;
      for (Bits alpha = 0; alpha < size && !found; ++alpha) {
        if (weight(alpha) % 2 != alpha_parity) continue;
        for (Bits p = 1; p < size; ++p) {
          if (weight(p) % 2) continue;
          if (evaluate(alpha, p)) break;
        }
      }
      break;
    }
    case IdentityScan::SparseSupport: {
      std::vector<Bits> support;
      for (Bits x = 0; x < size; ++x)
        if (!f[x].is_zero()) support.push_back(x);
      local_steps += size;
      for (std::size_t a = 0; a < support.size(); ++a)
        for (std::size_t b = a + 1; b < support.size(); ++b) {
          const Bits u = support[a];
          const Bits p = u ^ support[b];
          for (int j = 1; j <= f.bits(); ++j)
            if (test_bit(p, j)) {
              evaluate(u ^ unit(j), p);
              evaluate(support[b] ^ unit(j), p);
            }
        }
      break;
    }
  }
  if (steps) *steps += local_steps;
  return found;
}

RecognitionVerdict recognize_fast(const Signature& f) {
  RecognitionVerdict verdict;
  const Bits size = static_cast<Bits>(f.size());

  auto basepoint = first_nonzero(f);
  verdict.steps += basepoint ? *basepoint + 1 : size;
  if (!basepoint) {
    verdict.status = Verdict::ZeroSignature;
    return verdict;
  }

  verdict.steps += size;
  if (auto w = check_parity_constraint(f)) {
    verdict.status = Verdict::NotStandard;
    verdict.witness = *w;
    return verdict;
  }

  Normalized norm = normalize(f, *basepoint);
  verdict.steps += size;
  SkewMatrix m = matrix_from_signature(norm.signature);
  verdict.steps += static_cast<std::uint64_t>(f.bits()) * (f.bits() - 1) / 2;
  Signature h = rebuild_recursive(m, &verdict.steps);

  // Compare f(x) against scale * h(x + basepoint) in ascending x.
  verdict.steps += size;
  for (Bits x = 0; x < size; ++x) {
    const Element& candidate = h[x ^ norm.basepoint];
    if (norm.signature[x ^ norm.basepoint] == candidate) continue;
    verdict.status = Verdict::NotStandard;
    verdict.witness = MismatchWitness{x, norm.scale * candidate, f[x]};
    return verdict;
  }
  verdict.status = Verdict::Standard;
  verdict.certificate = Certificate{norm.basepoint, norm.scale, std::move(m)};
  return verdict;
}

RecognitionVerdict recognize_naive(const Signature& f, IdentityScan scan) {
  RecognitionVerdict verdict;
  verdict.steps += f.size();
  if (auto w = check_parity_constraint(f)) {
    verdict.status = Verdict::NotStandard;
    verdict.witness = *w;
    return verdict;
  }
  if (f.is_zero()) {
    verdict.status = Verdict::ZeroSignature;
    return verdict;
  }
  if (auto w = check_matchgate_identities(f, scan, &verdict.steps)) {
    verdict.status = Verdict::NotStandard;
    verdict.witness = *w;
    return verdict;
  }
  Normalized norm = normalize(f);
  verdict.status = Verdict::Standard;
  verdict.certificate = Certificate{norm.basepoint, norm.scale, matrix_from_signature(norm.signature)};
  return verdict;
}

bool verify_certificate(const Signature& f, const Certificate& c) {
  if (c.matrix.size() != f.bits() || !(c.matrix.field() == f.field())) return false;
  if (c.basepoint >= f.size() || c.scale.is_zero()) return false;
  Signature fm = signature_from_matrix(c.matrix);
  for (Bits x = 0; x < f.size(); ++x)
    if (!(c.scale * fm[x ^ c.basepoint] == f[x])) return false;
  return true;
}

bool verify_witness(const Signature& f, const Witness& w) {
  if (const auto* pw = std::get_if<ParityWitness>(&w)) {
    if (pw->first >= f.size() || pw->second >= f.size()) return false;
    return !f[pw->first].is_zero() && !f[pw->second].is_zero() &&
           weight(pw->first) % 2 != weight(pw->second) % 2;
  }
  if (const auto* iw = std::get_if<IdentityWitness>(&w)) {
    if (iw->alpha >= f.size() || iw->p >= f.size()) return false;
    Element v = identity_value(f, iw->alpha, iw->p);
    return !v.is_zero() && v == iw->value;
  }
  const auto& mw = std::get<MismatchWitness>(w);
  if (mw.input >= f.size() || !(f[mw.input] == mw.actual) || mw.actual == mw.expected) return false;
  // The candidate is recomputed through the Pfaffian minors of the extracted
  // matrix rather than through the rebuild recursion.
  auto base = first_nonzero(f);
  if (!base) return false;
  Normalized norm = normalize(f, *base);
  Signature fm = signature_from_matrix(matrix_from_signature(norm.signature));
  return norm.scale * fm[mw.input ^ norm.basepoint] == mw.expected;
}

}  // namespace matchsig
