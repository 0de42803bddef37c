#pragma once

// Counting identities for quadratic residues in finite fields, each available
// as a closed formula and as a direct enumeration.

#include <cstdint>
#include <gmpxx.h>

#include "fszlab/field.hpp"

namespace fszlab {

enum class CountMode { closed, enumerate };

// |QR ∩ (QR + c)| for c != 0.
std::uint64_t qr_diff_count(const FieldElem& c, CountMode mode);

struct FiberCountQuery {
  FieldElem z;       // nonzero
  std::uint32_t y;   // prime-subfield value in [0, p)
};

// |tr_z^{-1}(y) ∩ QR(p^n)|.  The closed form only ever uses G(p)^2 = ±p and
// G(p^n) = -(-G(p))^n, so every case reduces to exact integer arithmetic.
// For odd n and y != 0 the count is (p^n + (z/q)(-y/p) G(p) G(p^n)) / 2p.
std::uint64_t trace_fiber_qr_count(const FiberCountQuery& query, CountMode mode);

// G(p)^2 as an integer: (-1)^{(p-1)/2} p.
std::int64_t gauss_sum_squared(std::uint32_t p);
// G(p^n) for even n, and G(p) G(p^n) for odd n; both are integers.
std::int64_t gauss_sum_even_power(std::uint32_t p, unsigned n);
std::int64_t gauss_product_odd_power(std::uint32_t p, unsigned n);

// sum_{i=1}^{p-1} i^k mod p, computed term by term.
std::uint32_t power_sum_mod(std::uint32_t p, std::uint64_t k);
// 0 if (p-1) does not divide k, else p-1.
std::uint32_t power_sum_mod_closed(std::uint32_t p, std::uint64_t k);

enum class BinomPath { big_integer, lucas };

// sum_{m=0}^{p^j-1} C(m,k) C(m,l) mod p for 0 <= k, l <= (p^j-1)/2.
std::uint32_t binom_product_sum_mod(std::uint32_t p, unsigned j, std::uint64_t k, std::uint64_t l,
                                    BinomPath path);

}  // namespace fszlab
