#include "fszlab/residue.hpp"

#include "fszlab/error.hpp"
#include "fszlab/numtheory.hpp"

namespace fszlab {

namespace {

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

std::uint64_t exact_div(std::int64_t num, std::int64_t den) {
  if (num < 0 || num % den != 0)
    throw std::logic_error("closed-form count is not a non-negative integer");
  return static_cast<std::uint64_t>(num / den);
}

int legendre_prime(std::uint32_t y, std::uint32_t p) {
  y %= p;
  if (y == 0) return 0;
  return mod_pow(y, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::uint64_t small_binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::uint64_t qr_diff_count(const FieldElem& c, CountMode mode) {
  if (c.is_zero()) throw DomainError("qr_diff_count needs c != 0");
  const FieldSpec& f = c.spec();
  const std::int64_t q = f.q();
  if (mode == CountMode::closed) {
    if (f.minus_one_is_square()) {
      if (c.legendre() == 1) return exact_div(q + 3, 4);
      return exact_div(q - 1, 4);
    }
    return exact_div(q + 1, 4);
  }
  const auto& mask = f.qr_mask();
  std::uint64_t count = 0;
  for (Code x = 0; x < f.q(); ++x)
    if (mask[x] && mask[f.sub(x, c.code())]) ++count;
  return count;
}

std::int64_t gauss_sum_squared(std::uint32_t p) { return sign_pow((p - 1) / 2) * static_cast<std::int64_t>(p); }

std::int64_t gauss_sum_even_power(std::uint32_t p, unsigned n) {
  if (n % 2 != 0) throw DomainError("gauss_sum_even_power needs even n");
  return -ipow(gauss_sum_squared(p), n / 2);
}

std::int64_t gauss_product_odd_power(std::uint32_t p, unsigned n) {
  if (n % 2 == 0) throw DomainError("gauss_product_odd_power needs odd n");
  return ipow(gauss_sum_squared(p), (n + 1) / 2);
}

std::uint64_t trace_fiber_qr_count(const FiberCountQuery& query, CountMode mode) {
  const FieldSpec& f = query.z.spec();
  if (query.z.is_zero()) throw DomainError("trace fiber query needs z != 0");
  const std::uint32_t p = f.p();
  const unsigned n = f.n();
  if (query.y >= p) throw DomainError("fiber value must lie in the prime subfield");
  if (mode == CountMode::enumerate) {
    const auto& mask = f.qr_mask();
    std::uint64_t count = 0;
    for (Code x = 0; x < f.q(); ++x)
      if (mask[x] && f.trace(f.mul(query.z.code(), x)) == query.y) ++count;
    return count;
  }
  const std::int64_t q = f.q();
  const std::int64_t pp = p;
  const std::int64_t lz = query.z.legendre();
  if (n % 2 == 1) {
    if (query.y == 0) return exact_div(ipow(pp, n - 1) + 1, 2);
    // sum_{a=1}^{p-1} (a/p) e_p(-ay) = (-y/p) G(p); the sign matters when p = 3 mod 4.
    return exact_div(q + lz * legendre_prime(p - query.y, p) * gauss_product_odd_power(p, n), 2 * pp);
  }
  const std::int64_t g = gauss_sum_even_power(p, n);
  if (query.y == 0) return exact_div(q + (pp - 1) * lz * g + pp, 2 * pp);
  return exact_div(q - lz * g, 2 * pp);
}

std::uint32_t power_sum_mod(std::uint32_t p, std::uint64_t k) {
  std::uint64_t s = 0;
  for (std::uint32_t i = 1; i < p; ++i) s = (s + mod_pow(i, k, p)) % p;
  return static_cast<std::uint32_t>(s);
}

std::uint32_t power_sum_mod_closed(std::uint32_t p, std::uint64_t k) {
  return (k % (p - 1) == 0) ? p - 1 : 0;
}

std::uint32_t binom_product_sum_mod(std::uint32_t p, unsigned j, std::uint64_t k, std::uint64_t l,
                                    BinomPath path) {
  if (p % 2 == 0 || !is_prime(p)) throw DomainError("p must be an odd prime");
  if (j < 1) throw DomainError("j must be >= 1");
  const auto pj = checked_pow(p, j);
  if (!pj || *pj > (1ull << 20)) throw DomainError("p^j too large");
  const std::uint64_t half = (*pj - 1) / 2;
  if (k > half || l > half) throw DomainError("k and l must lie in [0, (p^j-1)/2]");

  if (path == BinomPath::big_integer) {
    mpz_class sum = 0;
    mpz_class bk, bl;
    for (std::uint64_t m = 0; m < *pj; ++m) {
      mpz_bin_uiui(bk.get_mpz_t(), m, k);
      mpz_bin_uiui(bl.get_mpz_t(), m, l);
      sum += bk * bl;
    }
    mpz_class r = sum % p;
    return static_cast<std::uint32_t>(r.get_ui());
  }

  // Lucas: C(m,k) ≡ prod_i C(m_i,k_i) digitwise, so the sum over all j-digit m
  // factors into a product of one-digit sums.
  std::uint64_t result = 1;
  std::uint64_t kk = k, ll = l;
  for (unsigned i = 0; i < j; ++i) {
    const std::uint64_t kd = kk % p, ld = ll % p;
    kk /= p;
    ll /= p;
    std::uint64_t digit_sum = 0;
    for (std::uint64_t t = 0; t < p; ++t)
      digit_sum = (digit_sum + (small_binom(t, kd) % p) * (small_binom(t, ld) % p)) % p;
    result = result * digit_sum % p;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace fszlab
