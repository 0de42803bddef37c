#pragma once

// Exact arithmetic in Q(zeta_p), p an odd prime, in the power basis
// {1, zeta, ..., zeta^{p-2}}.  Since the minimal polynomial of zeta is
// 1 + x + ... + x^{p-1}, the representation is unique and an element is
// rational exactly when its non-constant coordinates vanish.

#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fszlab/field.hpp"

namespace fszlab {

class CycNum {
 public:
  explicit CycNum(std::uint32_t p);  // zero
  CycNum(std::uint32_t p, std::vector<mpq_class> coeffs);

  static CycNum rational(std::uint32_t p, const mpq_class& value);
  // zeta^k for any integer k.
  static CycNum zeta_pow(std::uint32_t p, std::int64_t k);
  // sum_k counts[k] zeta^k over k in [0, p); counts has length p.
  static CycNum from_exponent_counts(std::uint32_t p, std::span<const mpz_class> counts);
  static CycNum from_exponent_counts(std::uint32_t p, std::span<const std::int64_t> counts);

  std::uint32_t p() const noexcept { return p_; }
  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }

  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator-() const;
  CycNum operator*(const CycNum& o) const;
  CycNum operator*(const mpq_class& s) const;
  CycNum& operator+=(const CycNum& o);
  CycNum pow(unsigned e) const;

  // zeta -> zeta^k; requires p not dividing k.
  CycNum galois(std::int64_t k) const;
  // Complex conjugation, zeta -> zeta^{p-1}.
  CycNum conj() const { return galois(static_cast<std::int64_t>(p_) - 1); }

  bool is_zero() const;
  std::optional<mpq_class> as_rational() const;
  bool is_rational() const { return as_rational().has_value(); }

  // Floating evaluation at zeta = exp(2 pi i / p).  Diagnostic only.
  std::complex<long double> evaluate() const;

  bool operator==(const CycNum& o) const;

  std::string to_string() const;

 private:
  void check_same(const CycNum& o) const;
  std::uint32_t p_;
  std::vector<mpq_class> coeffs_;  // length p-1, lowest terms
};

// x * conj(x).
CycNum norm_sq(const CycNum& x);

// zeta^{tr(x)}.
CycNum e_q(const FieldElem& x);

// G(q) = sum_x legendre(x) e_q(x), by definition.
CycNum gauss_sum(const FieldSpec& spec);

// -(-G(p))^n evaluated by exponentiation in Q(zeta_p).
CycNum gauss_sum_lifted(std::uint32_t p, unsigned n);

// x = s + t y for rationals s, t with t != 0.
bool equivalent_mod_rationals(const CycNum& x, const CycNum& y);

std::string rational_string(const mpq_class& r);

}  // namespace fszlab
