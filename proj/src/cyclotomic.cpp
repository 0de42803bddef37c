#include "fszlab/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fszlab/error.hpp"
#include "fszlab/numtheory.hpp"

namespace fszlab {

namespace {

void require_odd_prime(std::uint32_t p) {
  if (p % 2 == 0 || !is_prime(p)) throw DomainError("cyclotomic prime must be an odd prime");
}

std::uint32_t reduce_exponent(std::int64_t k, std::uint32_t p) {
  std::int64_t r = k % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

CycNum::CycNum(std::uint32_t p) : p_(p) {
  require_odd_prime(p);
  coeffs_.assign(p - 1, mpq_class(0));
}

CycNum::CycNum(std::uint32_t p, std::vector<mpq_class> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  require_odd_prime(p);
  if (coeffs_.size() != p - 1) throw DomainError("CycNum needs p-1 coordinates");
  for (auto& c : coeffs_) c.canonicalize();
}

CycNum CycNum::rational(std::uint32_t p, const mpq_class& value) {
  CycNum r(p);
  r.coeffs_[0] = value;
  return r;
}

CycNum CycNum::zeta_pow(std::uint32_t p, std::int64_t k) {
  CycNum r(p);
  const std::uint32_t e = reduce_exponent(k, p);
  if (e < p - 1) {
    r.coeffs_[e] = 1;
  } else {
    for (auto& c : r.coeffs_) c = -1;
  }
  return r;
}

CycNum CycNum::from_exponent_counts(std::uint32_t p, std::span<const mpz_class> counts) {
  if (counts.size() != p) throw DomainError("exponent count vector must have length p");
  CycNum r(p);
  // zeta^{p-1} = -(1 + ... + zeta^{p-2})
  for (std::uint32_t i = 0; i + 1 < p; ++i) r.coeffs_[i] = mpq_class(counts[i] - counts[p - 1]);
  return r;
}

CycNum CycNum::from_exponent_counts(std::uint32_t p, std::span<const std::int64_t> counts) {
  std::vector<mpz_class> big;
  big.reserve(counts.size());
  for (auto c : counts) big.emplace_back(static_cast<long>(c));
  return from_exponent_counts(p, big);
}

void CycNum::check_same(const CycNum& o) const {
  if (p_ != o.p_) throw DomainError("cyclotomic operands have different primes");
}

CycNum CycNum::operator+(const CycNum& o) const {
  CycNum r(*this);
  r += o;
  return r;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycNum CycNum::operator-(const CycNum& o) const {
  check_same(o);
  CycNum r(*this);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

CycNum CycNum::operator-() const {
  CycNum r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycNum CycNum::operator*(const mpq_class& s) const {
  CycNum r(*this);
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

CycNum CycNum::operator*(const CycNum& o) const {
  check_same(o);
  // Multiply in Z[x]/(x^p - 1) first, then fold zeta^{p-1}.
  std::vector<mpq_class> full(p_, mpq_class(0));
  for (std::uint32_t i = 0; i + 1 < p_; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::uint32_t j = 0; j + 1 < p_; ++j) {
      if (o.coeffs_[j] == 0) continue;
      full[(i + j) % p_] += coeffs_[i] * o.coeffs_[j];
    }
  }
  CycNum r(p_);
  for (std::uint32_t i = 0; i + 1 < p_; ++i) r.coeffs_[i] = full[i] - full[p_ - 1];
  return r;
}

CycNum CycNum::pow(unsigned e) const {
  CycNum result = rational(p_, 1);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

CycNum CycNum::galois(std::int64_t k) const {
  const std::uint32_t kk = reduce_exponent(k, p_);
  if (kk == 0) throw DomainError("galois_k requires k coprime to p");
  std::vector<mpq_class> full(p_, mpq_class(0));
  for (std::uint32_t i = 0; i + 1 < p_; ++i)
    full[static_cast<std::uint64_t>(i) * kk % p_] += coeffs_[i];
  CycNum r(p_);
  for (std::uint32_t i = 0; i + 1 < p_; ++i) r.coeffs_[i] = full[i] - full[p_ - 1];
  return r;
}

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<mpq_class> CycNum::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return std::nullopt;
  return coeffs_[0];
}

std::complex<long double> CycNum::evaluate() const {
  std::complex<long double> sum = 0;
  for (std::uint32_t i = 0; i + 1 < p_; ++i) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * i / p_;
    sum += static_cast<long double>(coeffs_[i].get_d()) *
           std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

bool CycNum::operator==(const CycNum& o) const { return p_ == o.p_ && coeffs_ == o.coeffs_; }

bool equivalent_mod_rationals(const CycNum& x, const CycNum& y) {
  if (x.p() != y.p()) throw DomainError("mixed primes");
  if (x.is_rational() || y.is_rational()) return x.is_rational() && y.is_rational();
  const auto& xc = x.coeffs();
  const auto& yc = y.coeffs();
  std::size_t i = 1;
  while (yc[i] == 0) ++i;
  const mpq_class t = xc[i] / yc[i];
  if (t == 0) return false;
  for (std::size_t k = 1; k < yc.size(); ++k)
    if (xc[k] != t * yc[k]) return false;
  return true;
}

std::string rational_string(const mpq_class& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string CycNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t i = 0; i + 1 < p_; ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << rational_string(coeffs_[i]);
    if (i > 0) os << "*z^" << i;
  }
  if (first) os << "0";
  return os.str();
}

CycNum norm_sq(const CycNum& x) { return x * x.conj(); }

CycNum e_q(const FieldElem& x) { return CycNum::zeta_pow(x.spec().p(), x.trace()); }

CycNum gauss_sum(const FieldSpec& spec) {
  std::vector<std::int64_t> counts(spec.p(), 0);
  for (Code c = 1; c < spec.q(); ++c) counts[spec.trace(c)] += spec.legendre(c);
  return CycNum::from_exponent_counts(spec.p(), counts);
}

CycNum gauss_sum_lifted(std::uint32_t p, unsigned n) {
  const CycNum gp = gauss_sum(field_make(p, 1));
  return -((-gp).pow(n));
}

}  // namespace fszlab
