#include "matchsig/pfaffian.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace matchsig {

namespace {

void check_dimension(int n) {
  if (n < 0 || n > kMaxBits)
    throw std::invalid_argument("matrix dimension must be in [0, " + std::to_string(kMaxBits) + "]");
}

int top_bit(Bits x) { return 32 - std::countl_zero(x); }

// Calls visit(pairs) for every perfect pairing of `items` (ascending).
void for_each_pairing(std::vector<int>& items, std::vector<std::pair<int, int>>& pairs,
                      const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
  if (items.empty()) {
    visit(pairs);
    return;
  }
  int a = items.front();
  for (std::size_t k = 1; k < items.size(); ++k) {
    int b = items[k];
    std::vector<int> rest;
    rest.reserve(items.size() - 2);
    for (std::size_t t = 1; t < items.size(); ++t)
      if (t != k) rest.push_back(items[t]);
    pairs.emplace_back(a, b);
    for_each_pairing(rest, pairs, visit);
    pairs.pop_back();
  }
}

// Pairs (i,j) and (k,l) with i < k overlap when i < k < j < l.
bool pairing_sign_negative(const std::vector<std::pair<int, int>>& pairs) {
  int overlaps = 0;
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      auto [i, j] = pairs[a];
      auto [k, l] = pairs[b];
      if (i < k && k < j && j < l) ++overlaps;
    }
  return overlaps % 2;
}

std::vector<int> positions(Bits x) {
  std::vector<int> out;
  for (int i = 1; i <= 32 && (x >> (i - 1)); ++i)
    if (test_bit(x, i)) out.push_back(i);
  return out;
}

}  // namespace

SkewMatrix::SkewMatrix(int n, Field field)
    : n_(n), field_(field), upper_(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2, field.zero()) {
  check_dimension(n);
}

SkewMatrix::SkewMatrix(int n, Field field, std::vector<Element> upper)
    : n_(n), field_(field), upper_(std::move(upper)) {
  check_dimension(n);
  std::size_t expected = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  if (upper_.size() != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) + " upper-triangular entries, got " +
                                std::to_string(upper_.size()));
  for (const auto& v : upper_)
    if (v.impl() != field_.impl()) throw std::invalid_argument("matrix entry does not belong to " + field_.name());
}

std::size_t SkewMatrix::offset(int i, int j) const {
  // Row i (1-based) starts after rows 1..i-1, which hold (n-1) + ... + (n-i+1) entries.
  auto row = static_cast<std::size_t>(i - 1);
  return row * static_cast<std::size_t>(2 * n_ - i) / 2 + static_cast<std::size_t>(j - i - 1);
}

Element SkewMatrix::at(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_) throw std::invalid_argument("matrix index out of range");
  if (i == j) return field_.zero();
  if (i < j) return upper_[offset(i, j)];
  return -upper_[offset(j, i)];
}

void SkewMatrix::set(int i, int j, Element v) {
  if (i < 1 || j < 1 || i > n_ || j > n_ || i == j) throw std::invalid_argument("matrix index out of range");
  if (v.impl() != field_.impl()) throw std::invalid_argument("matrix entry does not belong to " + field_.name());
  if (i < j)
    upper_[offset(i, j)] = std::move(v);
  else
    upper_[offset(j, i)] = -v;
}

SkewMatrix SkewMatrix::minor(Bits x) const {
  auto rows = positions(x);
  if (!rows.empty() && rows.back() > n_) throw std::invalid_argument("minor selects rows beyond the matrix");
  SkewMatrix out(static_cast<int>(rows.size()), field_);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b)
      out.set(static_cast<int>(a + 1), static_cast<int>(b + 1), at(rows[a], rows[b]));
  return out;
}

Element pfaffian(const SkewMatrix& m) {
  const int n = m.size();
  if (n % 2) return m.field().zero();
  std::unordered_map<Bits, Element> memo;
  std::function<Element(Bits)> pf = [&](Bits s) -> Element {
    if (s == 0) return m.field().one();
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    const int j = top_bit(s);
    Element acc = m.field().zero();
    int rank = 0;
    for (int i = 1; i < j; ++i) {
      if (!test_bit(s, i)) continue;
      const Element& entry = m.at(i, j);
      if (!entry.is_zero()) {
        Element term = entry * pf(s ^ unit(i) ^ unit(j));
        acc = (rank % 2) ? acc - term : acc + term;
      }
      ++rank;
    }
    memo.emplace(s, acc);
    return acc;
  };
  Bits all = n == 0 ? 0 : static_cast<Bits>((std::uint64_t{1} << n) - 1);
  return pf(all);
}

Element pfaffian_by_pairings(const SkewMatrix& m) {
  const int n = m.size();
  if (n % 2) return m.field().zero();
  std::vector<int> items(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) items[static_cast<std::size_t>(i)] = i + 1;
  std::vector<std::pair<int, int>> pairs;
  Element total = m.field().zero();
  for_each_pairing(items, pairs, [&](const std::vector<std::pair<int, int>>& ps) {
    Element prod = m.field().one();
    for (auto [a, b] : ps) prod *= m.at(a, b);
    total = pairing_sign_negative(ps) ? total - prod : total + prod;
  });
  return total;
}

Signature signature_from_matrix(const SkewMatrix& m) {
  const int n = m.size();
  if (n < 1) throw std::invalid_argument("signature_from_matrix needs n >= 1");
  const Element zero = m.field().zero();
  std::vector<Element> f(std::size_t{1} << n, zero);
  f[0] = m.field().one();
  for (Bits x = 1; x < f.size(); ++x) {
    if (weight(x) % 2) continue;
    const int j = top_bit(x);
    Element acc = zero;
    int rank = 0;
    for (int i = 1; i < j; ++i) {
      if (!test_bit(x, i)) continue;
      const Element& sub = f[x ^ unit(i) ^ unit(j)];
      if (!sub.is_zero()) {
        Element term = m.at(i, j) * sub;
        acc = (rank % 2) ? acc - term : acc + term;
      }
      ++rank;
    }
    f[x] = std::move(acc);
  }
  return Signature(n, m.field(), std::move(f));
}

SkewMatrix matrix_from_signature(const Signature& f) {
  const int n = f.bits();
  SkewMatrix m(n, f.field());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) m.set(i, j, f[unit(i) | unit(j)]);
  return m;
}

Signature rebuild_recursive(const SkewMatrix& m, std::uint64_t* steps) {
  const int n = m.size();
  if (n < 1) throw std::invalid_argument("rebuild_recursive needs n >= 1");
  const Field& field = m.field();
  Signature h(1, field, {field.one(), field.zero()});
  for (int j = 2; j <= n; ++j) {
    std::vector<Element> coeffs;
    coeffs.reserve(static_cast<std::size_t>(j - 1));
    for (int i = 1; i < j; ++i) coeffs.push_back(m.at(i, j));
    Signature upper = shift_combination(h, 0, coeffs);
    if (steps) *steps += static_cast<std::uint64_t>(j - 1) << (j - 1);
    std::vector<Element> next(h.values().begin(), h.values().end());
    next.insert(next.end(), upper.values().begin(), upper.values().end());
    h = Signature(j, field, std::move(next));
  }
  return h;
}

std::vector<SignedMonomial> symbolic_minor(Bits x) {
  if (weight(x) % 2) throw std::invalid_argument("symbolic_minor needs an even-weight bit string");
  auto items = positions(x);
  std::vector<std::pair<int, int>> pairs;
  std::vector<SignedMonomial> out;
  for_each_pairing(items, pairs, [&](const std::vector<std::pair<int, int>>& ps) {
    SignedMonomial mono;
    mono.sign = pairing_sign_negative(ps) ? -1 : 1;
    for (auto [a, b] : ps) mono.factors.emplace_back(b, a);
    std::sort(mono.factors.begin(), mono.factors.end(), std::greater<>());
    out.push_back(std::move(mono));
  });
  std::sort(out.begin(), out.end(),
            [](const SignedMonomial& a, const SignedMonomial& b) { return a.factors < b.factors; });
  return out;
}

Element evaluate(const std::vector<SignedMonomial>& poly, const SkewMatrix& m) {
  Element total = m.field().zero();
  for (const auto& mono : poly) {
    Element prod = m.field().one();
    for (auto [j, i] : mono.factors) prod *= m.at(i, j);
    total = mono.sign < 0 ? total - prod : total + prod;
  }
  return total;
}

std::string format_polynomial(const std::vector<SignedMonomial>& poly) {
  std::string out;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const auto& mono = poly[k];
    if (k == 0)
      out += mono.sign < 0 ? "-" : "";
    else
      out += mono.sign < 0 ? " - " : " + ";
    if (mono.factors.empty()) out += "1";
    for (auto [j, i] : mono.factors) out += "λ_{" + std::to_string(j) + "," + std::to_string(i) + "}";
  }
  return out.empty() ? "0" : out;
}

std::uint64_t double_factorial_odd(int k) {
  std::uint64_t r = 1;
  for (int t = 1; t <= 2 * k - 1; t += 2) r *= static_cast<std::uint64_t>(t);
  return r;
}

}  // namespace matchsig
