#pragma once

// Arithmetic in F_{p^n} for odd p.
//
// An element is stored as a packed code c_0 + c_1 p + ... + c_{n-1} p^{n-1}
// of its coefficient vector in the basis 1, x, ..., x^{n-1} modulo the
// field's monic irreducible modulus.  The packing is a bijection, so code
// equality is coefficient equality.  Prime-subfield elements are exactly the
// codes 0..p-1.
//
// FieldSpec objects are interned: field_make() returns a reference that stays
// valid for the life of the process, and two specs are the same field iff
// they are the same object.

#include <atomic>
#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace fszlab {

using Code = std::uint32_t;

inline constexpr std::uint32_t kDefaultLogTableBound = 1u << 16;

class FieldSpec {
 public:
  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

  std::uint32_t p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  // Coefficients c_0..c_n of the monic modulus (c_n == 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  bool has_log_tables() const noexcept { return !log_.empty(); }

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return 1; }
  // Image of an integer in the prime subfield.
  Code from_int(std::int64_t v) const noexcept;
  Code from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Code a) const;
  // The element x (the class of the indeterminate); equals a prime-field
  // element when n == 1.
  Code generator_x() const;

  Code add(Code a, Code b) const noexcept {
    if (n_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  Code neg(Code a) const noexcept {
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_digits(a);
  }
  Code sub(Code a, Code b) const noexcept { return add(a, neg(b)); }
  Code mul(Code a, Code b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
  }
  // Throws DomainError on zero.
  Code inv(Code a) const;
  Code pow(Code a, std::uint64_t e) const noexcept;
  Code pow(Code a, const mpz_class& e) const;
  Code frobenius(Code a) const noexcept { return pow(a, p_); }

  // tr(x) = sum_{i<n} x^{p^i}, returned as an integer in [0, p).
  std::uint32_t trace(Code a) const;
  // -1, 0, +1.  Euler's criterion unless the residue bitmask has been built.
  int legendre(Code a) const;
  bool minus_one_is_square() const { return legendre(neg(1)) >= 0; }

  // Bitmask of squares, built once on first use.
  const std::vector<bool>& qr_mask() const;

  std::string format(Code a) const;
  // Text form of the spec, e.g. "(5,2) mod [2,4,1]".
  std::string describe() const;

 private:
  friend const FieldSpec& field_with_modulus(std::uint32_t, unsigned, std::vector<std::uint32_t>,
                                             bool, std::uint32_t);
  FieldSpec(std::uint32_t p, unsigned n, std::vector<std::uint32_t> modulus,
            std::uint32_t log_table_bound);

  Code add_digits(Code a, Code b) const noexcept;
  Code neg_digits(Code a) const noexcept;
  Code mul_poly(Code a, Code b) const noexcept;
  void build_tables(std::uint32_t log_table_bound);

  std::uint32_t p_;
  unsigned n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> place_;  // p^i
  std::vector<Code> add_table_;
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<Code> exp_;           // length 2(q-1)

  mutable std::once_flag qr_once_;
  mutable std::atomic<bool> qr_ready_{false};
  mutable std::vector<bool> qr_mask_;
};

// Canonical field of order p^n: modulus is the lexicographically least monic
// irreducible polynomial of degree n, comparing (c_0, ..., c_{n-1}).
const FieldSpec& field_make(std::uint32_t p, unsigned n,
                            std::uint32_t log_table_bound = kDefaultLogTableBound);

// Field with an explicit modulus.  With check_irreducible == false the
// quotient ring is built as-is (used to inject corrupted moduli in tests).
const FieldSpec& field_with_modulus(std::uint32_t p, unsigned n, std::vector<std::uint32_t> modulus,
                                    bool check_irreducible = true,
                                    std::uint32_t log_table_bound = kDefaultLogTableBound);

// Canonical field of order q (q an odd prime power).
const FieldSpec& field_of_order(std::uint64_t q);

bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p);
std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, unsigned n);

class FieldElem {
 public:
  FieldElem(const FieldSpec& spec, Code code);
  static FieldElem from_int(const FieldSpec& spec, std::int64_t v) {
    return FieldElem(spec, spec.from_int(v));
  }
  static FieldElem from_coeffs(const FieldSpec& spec, std::span<const std::uint32_t> c) {
    return FieldElem(spec, spec.from_coeffs(c));
  }
  // Parses "[c0,...,c{n-1}] mod (p,n)" against the canonical field.
  static FieldElem parse(const std::string& text);

  const FieldSpec& spec() const noexcept { return *spec_; }
  Code code() const noexcept { return code_; }
  std::vector<std::uint32_t> coeffs() const { return spec_->coeffs(code_); }
  bool is_zero() const noexcept { return code_ == 0; }
  bool in_prime_field() const noexcept { return code_ < spec_->p(); }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator-() const { return {*spec_, spec_->neg(code_)}; }
  FieldElem operator*(const FieldElem& o) const;
  FieldElem inv() const { return {*spec_, spec_->inv(code_)}; }
  FieldElem operator/(const FieldElem& o) const { return *this * o.inv(); }
  FieldElem pow(std::uint64_t e) const { return {*spec_, spec_->pow(code_, e)}; }
  FieldElem pow(const mpz_class& e) const { return {*spec_, spec_->pow(code_, e)}; }
  FieldElem frobenius() const { return {*spec_, spec_->frobenius(code_)}; }

  std::uint32_t trace() const { return spec_->trace(code_); }
  int legendre() const { return spec_->legendre(code_); }

  bool operator==(const FieldElem& o) const noexcept {
    return spec_ == o.spec_ && code_ == o.code_;
  }

  std::string to_string() const { return spec_->format(code_); }

 private:
  void check_same(const FieldElem& o) const;
  const FieldSpec* spec_;
  Code code_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

// tr(z x).
std::uint32_t trace_z(const FieldElem& z, const FieldElem& x);

// {y^2 : y in F_q}, sorted by code.
std::vector<FieldElem> qr_set(const FieldSpec& spec);

std::vector<FieldElem> all_elements(const FieldSpec& spec);

}  // namespace fszlab
