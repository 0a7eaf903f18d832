#include "matchsig/field.hpp"

#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace matchsig {

namespace detail {

void throw_mixed_fields() { throw std::invalid_argument("operands belong to different fields"); }
void throw_division_by_zero() { throw std::domain_error("division by zero"); }
void throw_no_field() { throw std::invalid_argument("element has no field"); }

}  // namespace detail

namespace {

using detail::FieldImpl;

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

// Builds GF(p^k) tables from a monic modulus given by its low coefficients:
// w^k = -(modulus[0] + modulus[1] w + ... + modulus[k-1] w^{k-1}).
std::unique_ptr<FieldImpl> make_extension(FieldKind kind, std::uint32_t p, std::uint32_t k,
                                          std::vector<std::uint32_t> modulus, std::string name) {
  auto f = std::make_unique<FieldImpl>();
  f->kind = kind;
  f->characteristic = p;
  f->degree = k;
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  f->order = q;
  f->name = std::move(name);

  auto digits = [&](std::uint32_t code) {
    std::vector<std::uint32_t> c(k);
    for (std::uint32_t i = 0; i < k; ++i, code /= p) c[i] = code % p;
    return c;
  };
  auto encode = [&](const std::vector<std::uint32_t>& c) {
    std::uint32_t code = 0;
    for (std::uint32_t i = k; i-- > 0;) code = code * p + c[i];
    return code;
  };

  f->add_table.resize(q * q);
  f->mul_table.resize(q * q);
  f->neg_table.resize(q);
  f->inv_table.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    auto ca = digits(a);
    std::vector<std::uint32_t> neg(k);
    for (std::uint32_t i = 0; i < k; ++i) neg[i] = (p - ca[i]) % p;
    f->neg_table[a] = static_cast<std::uint8_t>(encode(neg));
    for (std::uint32_t b = 0; b < q; ++b) {
      auto cb = digits(b);
      std::vector<std::uint32_t> sum(k);
      for (std::uint32_t i = 0; i < k; ++i) sum[i] = (ca[i] + cb[i]) % p;
      f->add_table[a * q + b] = static_cast<std::uint8_t>(encode(sum));

      std::vector<std::uint32_t> prod(2 * k - 1, 0);
      for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      for (std::uint32_t d = 2 * k - 1; d-- > k;) {
        std::uint32_t top = prod[d];
        prod[d] = 0;
        for (std::uint32_t i = 0; i < k; ++i)
          prod[d - k + i] = (prod[d - k + i] + top * (p - modulus[i])) % p;
      }
      prod.resize(k);
      f->mul_table[a * q + b] = static_cast<std::uint8_t>(encode(prod));
    }
  }
  for (std::uint32_t a = 1; a < q; ++a)
    for (std::uint32_t b = 1; b < q; ++b)
      if (f->mul_table[a * q + b] == 1) f->inv_table[a] = static_cast<std::uint8_t>(b);
  return f;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto trimmed = text;
  while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
  while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);
  if (!trimmed.empty() && trimmed.front() == '+') trimmed.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
  if (ec != std::errc() || ptr != trimmed.data() + trimmed.size() || trimmed.empty())
    throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  return v;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("prime too large");
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<FieldImpl>> registry;
  std::lock_guard lock(mu);
  auto& slot = registry[p];
  if (!slot) {
    slot = std::make_unique<FieldImpl>();
    slot->kind = FieldKind::Prime;
    slot->characteristic = static_cast<std::uint32_t>(p);
    slot->degree = 1;
    slot->order = static_cast<std::uint32_t>(p);
    slot->name = "gf" + std::to_string(p);
  }
  return Field(slot.get());
}

Field Field::gf4() {
  static const auto impl = make_extension(FieldKind::GF4, 2, 2, {1, 1}, "gf4");
  return Field(impl.get());
}

Field Field::gf8() {
  static const auto impl = make_extension(FieldKind::GF8, 2, 3, {1, 1, 0}, "gf8");
  return Field(impl.get());
}

Field Field::gf9() {
  static const auto impl = make_extension(FieldKind::GF9, 3, 2, {1, 0}, "gf9");
  return Field(impl.get());
}

Field Field::rational() {
  static const FieldImpl impl{FieldKind::Rational, 0, 1, 0, "rational", {}, {}, {}, {}};
  return Field(&impl);
}

Field Field::parse(std::string_view descriptor) {
  if (descriptor == "rational" || descriptor == "q") return rational();
  if (descriptor == "gf4") return gf4();
  if (descriptor == "gf8") return gf8();
  if (descriptor == "gf9") return gf9();
  if (descriptor.size() > 2 && descriptor.substr(0, 2) == "gf") {
    std::uint64_t q = 0;
    auto body = descriptor.substr(2);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), q);
    if (ec == std::errc() && ptr == body.data() + body.size()) {
      if (is_prime(q)) return prime(q);
      // Prime powers other than 4, 8, 9 are not supported.
      for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p != 0) continue;
        std::uint64_t r = q;
        while (r % p == 0) r /= p;
        if (r == 1) throw std::invalid_argument("unsupported prime-power field gf" + std::to_string(q));
        break;
      }
      throw std::invalid_argument(std::to_string(q) + " is not prime");
    }
  }
  throw std::invalid_argument("unknown field '" + std::string(descriptor) + "'");
}

std::optional<std::uint64_t> Field::cardinality() const {
  if (!is_finite()) return std::nullopt;
  return impl_->order;
}

Element Field::zero() const {
  if (impl_->kind == FieldKind::Rational) return Element(impl_, mpq_class(0));
  return Element(impl_, 0u);
}

Element Field::one() const {
  if (impl_->kind == FieldKind::Rational) return Element(impl_, mpq_class(1));
  return Element(impl_, 1u);
}

Element Field::from_int(std::int64_t v) const {
  if (impl_->kind == FieldKind::Rational) return Element(impl_, mpq_class(static_cast<long>(v)));
  std::int64_t p = impl_->characteristic;
  auto r = static_cast<std::uint32_t>(((v % p) + p) % p);
  return Element(impl_, r);  // prime subfield codes coincide with residues
}

Element Field::from_code(std::uint64_t code) const {
  if (!is_finite()) throw std::invalid_argument("from_code requires a finite field");
  if (code >= impl_->order) throw std::invalid_argument("element code out of range");
  return Element(impl_, static_cast<std::uint32_t>(code));
}

Element Field::from_rational(const mpq_class& q) const {
  if (impl_->kind == FieldKind::Rational) {
    mpq_class c = q;
    c.canonicalize();
    return Element(impl_, std::move(c));
  }
  mpz_class p = impl_->characteristic;
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (num < 0) num += p;
  if (den == 0) detail::throw_division_by_zero();
  return from_int(num.get_si()) / from_int(den.get_si());
}

Element Field::parse_element(std::string_view text) const {
  if (impl_->kind == FieldKind::Rational) {
    mpq_class q;
    std::string s(text);
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
    if (q.get_den() == 0) detail::throw_division_by_zero();
    q.canonicalize();
    return Element(impl_, std::move(q));
  }
  if (impl_->kind == FieldKind::Prime || text.find(',') == std::string_view::npos)
    return from_int(parse_int(text));
  std::vector<std::int64_t> coeffs;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    coeffs.push_back(parse_int(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coeffs.size() > impl_->degree)
    throw std::invalid_argument("too many coefficients for " + impl_->name);
  std::int64_t p = impl_->characteristic;
  std::uint64_t code = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) code = code * p + ((coeffs[i] % p) + p) % p;
  return Element(impl_, static_cast<std::uint32_t>(code));
}

std::vector<Element> Field::elements() const {
  if (!is_finite()) throw std::invalid_argument("elements() requires a finite field");
  std::vector<Element> out;
  out.reserve(impl_->order);
  for (std::uint32_t c = 0; c < impl_->order; ++c) out.push_back(Element(impl_, c));
  return out;
}

const mpq_class& Element::rational() const {
  if (!q_) throw std::invalid_argument("element is not rational");
  return *q_;
}

Element Element::inverse() const {
  if (!field_) detail::throw_no_field();
  if (is_zero()) detail::throw_division_by_zero();
  switch (field_->kind) {
    case FieldKind::Prime:
      return Element(field_, static_cast<std::uint32_t>(pow_mod(code_, field_->order - 2, field_->order)));
    case FieldKind::Rational:
      return Element(field_, mpq_class(1 / *q_));
    default:
      return Element(field_, field_->inv_table[code_]);
  }
}

std::string Element::str() const {
  if (!field_) return "<none>";
  switch (field_->kind) {
    case FieldKind::Prime:
      return std::to_string(code_);
    case FieldKind::Rational:
      return q_->get_den() == 1 ? q_->get_num().get_str() : q_->get_str();
    default: {
      std::string out;
      std::uint32_t c = code_;
      for (std::uint32_t i = 0; i < field_->degree; ++i, c /= field_->characteristic) {
        if (i) out += ',';
        out += std::to_string(c % field_->characteristic);
      }
      return out;
    }
  }
}

std::ostream& operator<<(std::ostream& os, const Element& e) { return os << e.str(); }

}  // namespace matchsig
