#include "fszlab/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <ostream>
#include <regex>
#include <sstream>
#include <tuple>

#include "fszlab/error.hpp"
#include "fszlab/numtheory.hpp"

namespace fszlab {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first, trimmed

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(mod_pow(a, p - 2, p));
}

// a mod m, m nonzero
Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::size_t shift = a.size() - m.size();
    const std::uint64_t c = (a.back() * lead_inv) % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  return poly_rem(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  base = poly_rem(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

using RegistryKey = std::tuple<std::uint32_t, unsigned, Poly, std::uint32_t>;

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<RegistryKey, std::unique_ptr<FieldSpec>>& registry() {
  static std::map<RegistryKey, std::unique_ptr<FieldSpec>> r;
  return r;
}

}  // namespace

bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p) {
  Poly f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  // Ben-Or: no irreducible factor of degree i <= deg/2.
  Poly x{0, 1};
  Poly h = x;
  for (std::size_t i = 1; i <= deg / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    Poly g = poly_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, unsigned n) {
  // Enumerate (c_0, ..., c_{n-1}) lexicographically, c_0 most significant.
  std::vector<std::uint32_t> c(n, 0);
  for (;;) {
    std::vector<std::uint32_t> f(c);
    f.push_back(1);
    if (is_irreducible_mod_p(f, p)) return f;
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && c[i] == p - 1) {
      c[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++c[i];
  }
  throw DomainError("no irreducible polynomial found");  // unreachable for prime p
}

FieldSpec::FieldSpec(std::uint32_t p, unsigned n, std::vector<std::uint32_t> modulus,
                     std::uint32_t log_table_bound)
    : p_(p), n_(n), q_(0), modulus_(std::move(modulus)) {
  place_.resize(n_ + 1);
  place_[0] = 1;
  for (unsigned i = 1; i <= n_; ++i) place_[i] = place_[i - 1] * p_;
  q_ = place_[n_];
  build_tables(log_table_bound);
}

void FieldSpec::build_tables(std::uint32_t log_table_bound) {
  if (n_ > 1 && q_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Code a = 0; a < q_; ++a)
      for (Code b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
  }
  if (q_ > log_table_bound) return;
  // Find a primitive element; only valid when the modulus is irreducible, so
  // give up silently (no tables) if none turns up.
  const auto factors = prime_factors(q_ - 1);
  Code gen = 0;
  for (Code g = 1; g < q_ && gen == 0; ++g) {
    bool ok = pow(g, q_ - 1) == 1;
    for (auto r : factors) {
      if (!ok) break;
      if (pow(g, (q_ - 1) / r) == 1) ok = false;
    }
    if (ok) gen = g;
  }
  if (gen == 0) return;
  std::vector<std::uint32_t> log(q_, 0);
  std::vector<Code> exp(2 * (q_ - 1));
  Code v = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp[i] = v;
    exp[i + q_ - 1] = v;
    log[v] = i;
    v = mul_poly(v, gen);
  }
  log_ = std::move(log);
  exp_ = std::move(exp);
}

Code FieldSpec::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Code>(r);
}

Code FieldSpec::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != n_) throw DomainError("coefficient vector has wrong length");
  Code c = 0;
  for (unsigned i = 0; i < n_; ++i) {
    if (coeffs[i] >= p_) throw DomainError("coefficient out of range [0,p)");
    c += coeffs[i] * place_[i];
  }
  return c;
}

std::vector<std::uint32_t> FieldSpec::coeffs(Code a) const {
  std::vector<std::uint32_t> out(n_);
  for (unsigned i = 0; i < n_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

Code FieldSpec::generator_x() const {
  if (n_ == 1) return from_int(p_ - static_cast<std::int64_t>(modulus_[0]));  // root of x + c0
  return p_;
}

Code FieldSpec::add_digits(Code a, Code b) const noexcept {
  Code r = 0;
  for (unsigned i = 0; i < n_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * place_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

Code FieldSpec::neg_digits(Code a) const noexcept {
  Code r = 0;
  for (unsigned i = 0; i < n_; ++i) {
    std::uint32_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * place_[i];
    a /= p_;
  }
  return r;
}

Code FieldSpec::mul_poly(Code a, Code b) const noexcept {
  if (n_ == 1) {
    // Modulus x + c0 identifies F_p[x]/(x + c0) with F_p by evaluation; the
    // code is the constant term, and constants multiply as integers.
    return static_cast<Code>((std::uint64_t{a} * b) % p_);
  }
  std::uint64_t prod[64] = {};
  std::uint32_t da[32], db[32];
  for (unsigned i = 0; i < n_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (unsigned i = 0; i < n_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
  }
  for (int k = 2 * static_cast<int>(n_) - 2; k >= static_cast<int>(n_); --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    // x^k = x^{k-n} * x^n and x^n = -(c_0 + ... + c_{n-1} x^{n-1})
    for (unsigned i = 0; i < n_; ++i)
      prod[k - n_ + i] = (prod[k - n_ + i] + (p_ - modulus_[i]) * c) % p_;
  }
  Code r = 0;
  for (unsigned i = 0; i < n_; ++i) r += static_cast<Code>(prod[i]) * place_[i];
  return r;
}

Code FieldSpec::inv(Code a) const {
  if (a == 0) throw DomainError("inverse of zero in F_q");
  if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Code FieldSpec::pow(Code a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!log_.empty()) {
    const std::uint64_t k = (std::uint64_t{log_[a]} * (e % (q_ - 1))) % (q_ - 1);
    return exp_[k];
  }
  Code result = 1;
  Code b = a;
  while (e > 0) {
    if (e & 1) result = mul_poly(result, b);
    b = mul_poly(b, b);
    e >>= 1;
  }
  return result;
}

Code FieldSpec::pow(Code a, const mpz_class& e) const {
  if (e < 0) throw DomainError("negative exponent");
  if (e == 0) return 1;
  if (a == 0) return 0;
  // Exponents act modulo q - 1 on the multiplicative group.
  mpz_class r = e % (q_ - 1);
  std::uint64_t reduced = r.get_ui();
  if (reduced == 0) reduced = q_ - 1;
  return pow(a, reduced);
}

std::uint32_t FieldSpec::trace(Code a) const {
  Code sum = 0;
  Code term = a;
  for (unsigned i = 0; i < n_; ++i) {
    sum = add(sum, term);
    term = frobenius(term);
  }
  if (sum >= p_) throw DomainError("trace left the prime subfield; modulus is not irreducible");
  return sum;
}

int FieldSpec::legendre(Code a) const {
  if (a == 0) return 0;
  if (qr_ready_.load(std::memory_order_acquire)) return qr_mask_[a] ? 1 : -1;
  const Code e = pow(a, (q_ - 1) / 2);
  return e == 1 ? 1 : -1;
}

const std::vector<bool>& FieldSpec::qr_mask() const {
  std::call_once(qr_once_, [this] {
    std::vector<bool> mask(q_, false);
    for (Code y = 0; y < q_; ++y) mask[mul(y, y)] = true;
    qr_mask_ = std::move(mask);
    qr_ready_.store(true, std::memory_order_release);
  });
  return qr_mask_;
}

std::string FieldSpec::format(Code a) const {
  std::ostringstream os;
  os << '[';
  const auto c = coeffs(a);
  for (unsigned i = 0; i < n_; ++i) os << (i ? "," : "") << c[i];
  os << "] mod (" << p_ << ',' << n_ << ')';
  return os.str();
}

std::string FieldSpec::describe() const {
  std::ostringstream os;
  os << '(' << p_ << ',' << n_ << ") mod [";
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  os << ']';
  return os.str();
}

const FieldSpec& field_with_modulus(std::uint32_t p, unsigned n, std::vector<std::uint32_t> modulus,
                                    bool check_irreducible, std::uint32_t log_table_bound) {
  if (p % 2 == 0 || !is_prime(p)) throw DomainError("characteristic must be an odd prime");
  if (n < 1) throw DomainError("extension degree must be >= 1");
  if (n > 30) throw DomainError("extension degree too large");
  if (auto q = checked_pow(p, n); !q || *q > (1ull << 31)) throw DomainError("field order too large");
  if (modulus.size() != n + 1 || modulus.back() != 1) throw DomainError("modulus must be monic of degree n");
  for (auto c : modulus)
    if (c >= p) throw DomainError("modulus coefficient out of range");
  if (check_irreducible && !is_irreducible_mod_p(modulus, p))
    throw DomainError("modulus is not irreducible");
  std::lock_guard lock(registry_mutex());
  RegistryKey key{p, n, modulus, log_table_bound};
  auto& slot = registry()[key];
  if (!slot) slot.reset(new FieldSpec(p, n, std::move(modulus), log_table_bound));
  return *slot;
}

const FieldSpec& field_make(std::uint32_t p, unsigned n, std::uint32_t log_table_bound) {
  if (p % 2 == 0 || !is_prime(p)) throw DomainError("characteristic must be an odd prime");
  if (n < 1) throw DomainError("extension degree must be >= 1");
  return field_with_modulus(p, n, canonical_modulus(p, n), false, log_table_bound);
}

const FieldSpec& field_of_order(std::uint64_t q) {
  auto pp = prime_power(q);
  if (!pp || pp->first == 2) throw DomainError("q must be an odd prime power");
  return field_make(static_cast<std::uint32_t>(pp->first), pp->second);
}

FieldElem::FieldElem(const FieldSpec& spec, Code code) : spec_(&spec), code_(code) {
  if (code >= spec.q()) throw DomainError("field element code out of range");
}

FieldElem FieldElem::parse(const std::string& text) {
  static const std::regex re(R"(^\s*\[([0-9,\s]*)\]\s*mod\s*\(\s*([0-9]+)\s*,\s*([0-9]+)\s*\)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw DomainError("cannot parse field element: " + text);
  const auto p = static_cast<std::uint32_t>(std::stoul(m[2]));
  const auto n = static_cast<unsigned>(std::stoul(m[3]));
  const FieldSpec& spec = field_make(p, n);
  std::vector<std::uint32_t> c;
  std::stringstream ss(m[1].str());
  std::string tok;
  while (std::getline(ss, tok, ',')) c.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
  return from_coeffs(spec, c);
}

void FieldElem::check_same(const FieldElem& o) const {
  if (spec_ != o.spec_) throw DomainError("operands belong to different fields");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  return {*spec_, spec_->add(code_, o.code_)};
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same(o);
  return {*spec_, spec_->sub(code_, o.code_)};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  return {*spec_, spec_->mul(code_, o.code_)};
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.to_string(); }

std::uint32_t trace_z(const FieldElem& z, const FieldElem& x) { return (z * x).trace(); }

std::vector<FieldElem> qr_set(const FieldSpec& spec) {
  const auto& mask = spec.qr_mask();
  std::vector<FieldElem> out;
  for (Code c = 0; c < spec.q(); ++c)
    if (mask[c]) out.emplace_back(spec, c);
  return out;
}

std::vector<FieldElem> all_elements(const FieldSpec& spec) {
  std::vector<FieldElem> out;
  out.reserve(spec.q());
  for (Code c = 0; c < spec.q(); ++c) out.emplace_back(spec, c);
  return out;
}

}  // namespace fszlab
