#include "matchsig/census.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "matchsig/pfaffian.hpp"
#include "matchsig/recognizer.hpp"

namespace matchsig {

namespace {

void check_count_args(std::uint64_t s, int n) {
  if (s < 2) throw std::invalid_argument("field size s must be at least 2");
  if (n < 1) throw std::invalid_argument("bit count n must be at least 1");
}

mpz_class pow_mpz(std::uint64_t base, std::uint64_t exp) {
  mpz_class r;
  mpz_class b(std::to_string(base));
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
  return r;
}

mpz_class to_mpz(std::uint64_t v) { return mpz_class(std::to_string(v)); }

mpq_class pow_q(const mpq_class& base, std::uint64_t exp) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exp);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

std::string round_decimal(const mpq_class& x, int digits) {
  mpz_class scale = pow_mpz(10, static_cast<std::uint64_t>(digits));
  mpq_class scaled = x * scale + mpq_class(1, 2);
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  bool negative = r < 0;
  if (negative) r = -r;
  std::string s = r.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

std::int64_t pentagonal(std::int64_t i) { return (3 * i * i - i) / 2; }

void check_sampler_field(const Field& field, int n) {
  if (!field.is_finite()) throw std::invalid_argument("sampling requires a finite field");
  if (n < 1 || n > kMaxBits) throw std::invalid_argument("bit count out of range");
}

// Counts through all code vectors over `positions` (others stay zero) in
// lexicographic order of the full table.
class Odometer {
 public:
  Odometer(std::size_t table_size, std::vector<Bits> positions, std::uint32_t q)
      : codes_(table_size, 0), positions_(std::move(positions)), q_(q) {}

  const std::vector<std::uint32_t>& codes() const { return codes_; }
  bool done() const { return done_; }

  void advance() {
    for (std::size_t k = positions_.size(); k-- > 0;) {
      auto& c = codes_[positions_[k]];
      if (++c < q_) return;
      c = 0;
    }
    done_ = true;
  }

 private:
  std::vector<std::uint32_t> codes_;
  std::vector<Bits> positions_;
  std::uint32_t q_;
  bool done_ = false;
};

}  // namespace

CountReport count(std::uint64_t s, int n) {
  check_count_args(s, n);
  CountReport r;
  r.s = s;
  r.n = n;
  r.normalized = pow_mpz(s, static_cast<std::uint64_t>(n) * (n - 1) / 2);
  mpz_class prod = 1;
  for (int i = 1; i <= n - 1; ++i) prod *= pow_mpz(s, static_cast<std::uint64_t>(i)) + 1;
  r.semi_normalized_odd = prod;
  r.odd = to_mpz(s - 1) * prod;
  r.even = r.odd;
  r.all = 1 + 2 * r.odd;
  return r;
}

std::string CertifiedValue::decimal(int digits) const {
  std::string lo = round_decimal(lower, digits);
  std::string hi = round_decimal(upper, digits);
  if (lo != hi) throw std::logic_error("enclosure too wide for " + std::to_string(digits) + " digits");
  return lo;
}

GammaValue gamma(std::uint64_t s, int digits) {
  if (s < 2) throw std::invalid_argument("gamma needs s >= 2");
  if (digits < 0 || digits > 1000) throw std::invalid_argument("digits out of range");
  const mpq_class sigma(mpz_class(1), to_mpz(s));
  const mpq_class tail_factor = 1 / (1 - sigma);
  const mpq_class target(mpz_class(1), pow_mpz(10, static_cast<std::uint64_t>(digits) + 2));

  mpq_class num = 1, den = 1;  // i = 0 terms
  for (std::int64_t k = 1; k <= 10000; ++k) {
    const int sign = (k % 2) ? -1 : 1;
    for (std::int64_t i : {k, -k}) {
      auto w = static_cast<std::uint64_t>(pentagonal(i));
      mpq_class t1 = pow_q(sigma, w), t2 = pow_q(sigma, 2 * w);
      if (sign < 0) {
        den -= t1;
        num -= t2;
      } else {
        den += t1;
        num += t2;
      }
    }
    auto next = static_cast<std::uint64_t>(pentagonal(k + 1));
    mpq_class err_den = pow_q(sigma, next) * tail_factor;
    mpq_class err_num = pow_q(sigma, 2 * next) * tail_factor;
    if (den - err_den <= 0) continue;
    CertifiedValue v{num / den, (num - err_num) / (den + err_den), (num + err_num) / (den - err_den)};
    if (v.upper - v.lower >= target) continue;
    if (round_decimal(v.lower, digits) != round_decimal(v.upper, digits)) continue;
    return GammaValue{s, digits, std::move(v), static_cast<int>(k)};
  }
  throw std::runtime_error("gamma did not converge");
}

CertifiedValue inverse_gamma(std::uint64_t s, int digits) {
  // Widen the working precision until the reciprocal's digits are fixed too.
  for (int extra = 2; extra < 64; extra += 4) {
    GammaValue g = gamma(s, digits + extra);
    CertifiedValue inv{1 / g.value.value, 1 / g.value.upper, 1 / g.value.lower};
    if (round_decimal(inv.lower, digits) == round_decimal(inv.upper, digits)) return inv;
  }
  throw std::runtime_error("inverse_gamma did not converge");
}

mpq_class gamma_partial_product(std::uint64_t s, int factors) {
  if (s < 2) throw std::invalid_argument("gamma needs s >= 2");
  mpq_class prod = 1;
  mpz_class power = 1;
  for (int i = 1; i <= factors; ++i) {
    power *= to_mpz(s);
    prod *= mpq_class(mpz_class(power + 1), power);
  }
  prod.canonicalize();
  return prod;
}

mpq_class expected_sparsity(std::uint64_t s, int n) {
  check_count_args(s, n);
  mpq_class p = 1;
  mpz_class power = 1;
  for (int i = 1; i <= n - 1; ++i) {
    power *= to_mpz(s);
    p *= mpq_class(power, mpz_class(power + 1));
  }
  p.canonicalize();
  return p;
}

CardinalityComparison cardinality_comparison(std::uint64_t s, int n) {
  check_count_args(s, n);
  if (n > kMaxBits) throw std::invalid_argument("bit count out of range");
  CardinalityComparison c;
  c.all_functions = pow_mpz(s, std::uint64_t{1} << n);
  c.parity_functions = 2 * pow_mpz(s, std::uint64_t{1} << (n - 1)) - 1;
  c.standard = count(s, n).all;
  mpz_class sz = to_mpz(s);
  c.symmetric_realizable = sz * (sz - 1) * (sz - 1) * (sz - 1) * (sz + 3) + 1;
  c.symmetric_caveat = "symmetric count assumes odd characteristic not dividing n";
  return c;
}

std::uint64_t uniform_below(std::uint64_t bound, Rng& rng) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs a positive bound");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  while (true) {
    std::uint64_t r = rng();
    if (r <= limit) return r % bound;
  }
}

mpz_class uniform_below(const mpz_class& bound, Rng& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below needs a positive bound");
  if (mpz_fits_ulong_p(bound.get_mpz_t())) return mpz_class(uniform_below(mpz_get_ui(bound.get_mpz_t()), rng));
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  mpz_class r;
  while (true) {
    for (auto& w : buf) w = rng();
    mpz_import(r.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
    if (r < bound) return r;
  }
}

Element random_element(const Field& field, Rng& rng) {
  if (!field.is_finite()) throw std::invalid_argument("random_element requires a finite field");
  return field.from_code(uniform_below(*field.cardinality(), rng));
}

Signature sample_normalized(const Field& field, int n, Rng& rng) {
  check_sampler_field(field, n);
  SkewMatrix m(n, field);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) m.set(i, j, random_element(field, rng));
  return signature_from_matrix(m);
}

Signature sample_parity(const Field& field, int n, Parity parity, Rng& rng) {
  check_sampler_field(field, n);
  if (parity != Parity::StrictlyEven && parity != Parity::StrictlyOdd)
    throw std::invalid_argument("sample_parity needs StrictlyEven or StrictlyOdd");
  const std::uint64_t q = *field.cardinality();
  if (n == 1) {
    Element c = field.from_code(1 + uniform_below(q - 1, rng));
    return parity == Parity::StrictlyOdd ? Signature(1, field, {field.zero(), c})
                                         : Signature(1, field, {c, field.zero()});
  }
  const int lower = n - 1;
  const mpz_class shifts = pow_mpz(q, static_cast<std::uint64_t>(lower));
  Signature f0 = Signature::zero(lower, field);
  Signature f1 = Signature::zero(lower, field);
  if (uniform_below(mpz_class(shifts + 1), rng) < shifts) {
    f0 = sample_parity(field, lower, parity, rng);
    std::vector<Element> coeffs;
    coeffs.reserve(static_cast<std::size_t>(lower));
    for (int i = 0; i < lower; ++i) coeffs.push_back(random_element(field, rng));
    f1 = shift_combination(f0, *first_nonzero(f0), coeffs);
  } else {
    Parity opposite = parity == Parity::StrictlyEven ? Parity::StrictlyOdd : Parity::StrictlyEven;
    f1 = sample_parity(field, lower, opposite, rng);
  }
  std::vector<Element> table(f0.values().begin(), f0.values().end());
  table.insert(table.end(), f1.values().begin(), f1.values().end());
  return Signature(n, field, std::move(table));
}

Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

SparsityTrial run_sparsity_trial(const Field& field, int n, Parity parity, std::uint64_t trials,
                                 std::uint64_t seed, Bits probe, unsigned threads) {
  check_sampler_field(field, n);
  if (probe >> n) throw std::invalid_argument("probe input out of range");
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));

  std::atomic<std::uint64_t> next_chunk{0};
  std::mutex mu;
  SparsityTrial total;
  total.trials = trials;
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      SparsityTrial local;
      for (std::uint64_t k; (k = next_chunk.fetch_add(1)) < chunks;) {
        Rng rng = stream_rng(seed, k);
        const std::uint64_t end = std::min(trials, (k + 1) * kChunk);
        for (std::uint64_t t = k * kChunk; t < end; ++t) {
          Signature f = sample_parity(field, n, parity, rng);
          if (!f[probe].is_zero()) ++local.nonzero_at_probe;
          if (recognize_fast(f).accepted()) ++local.accepted;
          for (const auto& v : f.values()) local.nonzero_entries += !v.is_zero();
        }
      }
      std::lock_guard lock(mu);
      total.nonzero_at_probe += local.nonzero_at_probe;
      total.accepted += local.accepted;
      total.nonzero_entries += local.nonzero_entries;
    } catch (...) {
      std::lock_guard lock(mu);
      failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return total;
}

std::uint64_t for_each_standard(const Field& field, int n, SearchSpace space,
                                const std::function<void(const Signature&)>& visit) {
  if (!field.is_finite()) throw std::invalid_argument("enumeration requires a finite field");
  if (n < 1 || n > 5) throw std::invalid_argument("enumeration bit count out of range");
  const std::uint64_t q = *field.cardinality();
  const std::size_t size = std::size_t{1} << n;
  const mpz_class guard = to_mpz(kEnumerationGuard);
  const mpz_class full = pow_mpz(q, size);
  const mpz_class parity_space = 2 * pow_mpz(q, size / 2) - 1;

  if (space == SearchSpace::Auto) space = full <= guard ? SearchSpace::Full : SearchSpace::ParitySupported;
  if ((space == SearchSpace::Full ? full : parity_space) > guard)
    throw std::invalid_argument("enumeration space exceeds the guard of " + std::to_string(kEnumerationGuard));

  const auto elements = field.elements();
  std::uint64_t examined = 0;
  auto emit = [&](const std::vector<std::uint32_t>& codes) {
    ++examined;
    std::vector<Element> values(size);
    for (std::size_t x = 0; x < size; ++x) values[x] = elements[codes[x]];
    Signature f(n, field, std::move(values));
    if (recognize_naive(f).accepted()) visit(f);
  };

  if (space == SearchSpace::Full) {
    std::vector<Bits> all(size);
    for (std::size_t x = 0; x < size; ++x) all[x] = static_cast<Bits>(x);
    for (Odometer od(size, all, static_cast<std::uint32_t>(q)); !od.done(); od.advance()) emit(od.codes());
    return examined;
  }

  std::vector<Bits> even, odd;
  for (Bits x = 0; x < size; ++x) (weight(x) % 2 ? odd : even).push_back(x);
  Odometer a(size, even, static_cast<std::uint32_t>(q));
  Odometer b(size, odd, static_cast<std::uint32_t>(q));
  while (!a.done() || !b.done()) {
    if (b.done() || (!a.done() && a.codes() < b.codes())) {
      emit(a.codes());
      a.advance();
    } else if (a.done() || b.codes() < a.codes()) {
      emit(b.codes());
      b.advance();
    } else {  // both at the zero table
      emit(a.codes());
      a.advance();
      b.advance();
    }
  }
  return examined;
}

std::vector<Signature> enumerate_standard(const Field& field, int n, SearchSpace space) {
  std::vector<Signature> out;
  for_each_standard(field, n, space, [&](const Signature& f) { out.push_back(f); });
  return out;
}

}  // namespace matchsig
