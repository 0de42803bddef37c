#include <vector>

#include "doctest.h"
#include "fszlab/error.hpp"
#include "fszlab/numtheory.hpp"
#include "fszlab/residue.hpp"

using namespace fszlab;

namespace {

std::vector<bool> squares(const FieldSpec& f) {
  std::vector<bool> sq(f.q(), false);
  for (Code y = 0; y < f.q(); ++y) sq[f.mul(y, y)] = true;
  return sq;
}

std::uint64_t brute_qr_diff(const FieldSpec& f, Code c) {
  const auto sq = squares(f);
  std::uint64_t n = 0;
  for (Code x = 0; x < f.q(); ++x)
    if (sq[x] && sq[f.sub(x, c)]) ++n;
  return n;
}

std::uint64_t brute_fiber(const FieldSpec& f, Code z, std::uint32_t y) {
  const auto sq = squares(f);
  std::uint64_t n = 0;
  for (Code x = 0; x < f.q(); ++x)
    if (sq[x] && f.trace(f.mul(z, x)) == y) ++n;
  return n;
}

// C(m,k) mod p from Pascal's triangle, reduced as it is built.
std::uint32_t pascal_sum(std::uint32_t p, unsigned j, std::uint64_t k, std::uint64_t l) {
  const std::uint64_t top = *checked_pow(p, j);
  std::vector<std::vector<std::uint32_t>> c(top, std::vector<std::uint32_t>(top, 0));
  for (std::uint64_t m = 0; m < top; ++m) {
    c[m][0] = 1;
    for (std::uint64_t r = 1; r <= m; ++r) c[m][r] = (c[m - 1][r - 1] + (r < m ? c[m - 1][r] : 0)) % p;
  }
  std::uint64_t s = 0;
  for (std::uint64_t m = 0; m < top; ++m) s = (s + c[m][k] * c[m][l]) % p;
  return static_cast<std::uint32_t>(s);
}

}  // namespace

TEST_CASE("qr_diff_count examples") {
  const auto& f5 = field_make(5, 1);
  const auto& f7 = field_make(7, 1);
  for (auto mode : {CountMode::closed, CountMode::enumerate}) {
    CHECK(qr_diff_count(FieldElem::from_int(f5, 1), mode) == 2);
    CHECK(qr_diff_count(FieldElem::from_int(f5, 2), mode) == 1);
    CHECK(qr_diff_count(FieldElem::from_int(f7, 1), mode) == 2);
    CHECK_THROWS_AS(qr_diff_count(FieldElem::from_int(f5, 0), mode), DomainError);
  }
}

TEST_CASE("qr_diff_count closed = enumerate = brute for q <= 400; double counting") {
  for (auto q : odd_prime_powers_up_to(400)) {
    const auto [p, n] = *prime_power(q);
    const auto& f = field_make(static_cast<std::uint32_t>(p), n);
    CAPTURE(q);
    const std::uint64_t qr = (q + 1) / 2;
    std::uint64_t total = qr;
    for (Code c = 1; c < f.q(); ++c) {
      const FieldElem ce(f, c);
      const auto closed = qr_diff_count(ce, CountMode::closed);
      REQUIRE(closed == qr_diff_count(ce, CountMode::enumerate));
      REQUIRE(closed == brute_qr_diff(f, c));
      total += closed;
    }
    CHECK(total == qr * qr);
  }
}

TEST_CASE("trace fiber examples") {
  const auto& f5 = field_make(5, 1);
  const auto& f25 = field_make(5, 2);
  for (auto mode : {CountMode::closed, CountMode::enumerate}) {
    CHECK(trace_fiber_qr_count({FieldElem::from_int(f5, 1), 0}, mode) == 1);
    CHECK(trace_fiber_qr_count({FieldElem::from_int(f5, 1), 1}, mode) == 1);
    CHECK(trace_fiber_qr_count({FieldElem::from_int(f25, 1), 0}, mode) == 1);
    CHECK_THROWS_AS(trace_fiber_qr_count({FieldElem::from_int(f5, 0), 1}, mode), DomainError);
  }
  CHECK(brute_fiber(f25, 1, 0) == 1);
  CHECK((25 + 4 * gauss_sum_even_power(5, 2) + 5) / 10 == 1);
}

TEST_CASE("trace fiber closed = enumerate = brute; fibers partition QR") {
  const std::vector<std::pair<std::uint32_t, unsigned>> cases = {
      {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}, {11, 1}, {11, 2}, {13, 1}, {13, 2}};
  for (auto [p, n] : cases) {
    const auto& f = field_make(p, n);
    CAPTURE(p);
    CAPTURE(n);
    for (Code z = 1; z < f.q(); ++z) {
      std::uint64_t sum = 0;
      for (std::uint32_t y = 0; y < p; ++y) {
        const FiberCountQuery query{FieldElem(f, z), y};
        const auto closed = trace_fiber_qr_count(query, CountMode::closed);
        REQUIRE(closed == trace_fiber_qr_count(query, CountMode::enumerate));
        if (f.q() <= 200) REQUIRE(closed == brute_fiber(f, z, y));
        sum += closed;
      }
      REQUIRE(sum == (f.q() + 1) / 2);
    }
  }
}

TEST_CASE("odd-n fiber formula needs legendre(-y), not legendre(y)") {
  // In F_3, the fiber tr^{-1}(1) = {1} holds one square, but
  // (3 + (1/3) G(3)^2) / 6 = 0.
  CHECK(brute_fiber(field_make(3, 1), 1, 1) == 1);
  CHECK(3 + 1 * gauss_product_odd_power(3, 1) == 0);
  CHECK(trace_fiber_qr_count({FieldElem::from_int(field_make(3, 1), 1), 1}, CountMode::closed) == 1);
}

TEST_CASE("gauss sum integers") {
  CHECK(gauss_sum_squared(5) == 5);
  CHECK(gauss_sum_squared(7) == -7);
  CHECK(gauss_sum_even_power(5, 2) == -5);
  CHECK(gauss_sum_even_power(3, 2) == 3);
  // G(p) G(p^3) = -(-1)^3 G(p)^4 = p^2
  CHECK(gauss_product_odd_power(7, 3) == 49);
  CHECK(gauss_product_odd_power(7, 1) == -7);
}

TEST_CASE("power sums") {
  CHECK(power_sum_mod(5, 2) == 0);
  CHECK(power_sum_mod(5, 4) == 4);
  CHECK(power_sum_mod(3, 0) == 2);
  for (std::uint32_t p : {3u, 5u, 7u, 11u})
    for (std::uint64_t k = 0; k < 40; ++k) CHECK(power_sum_mod(p, k) == power_sum_mod_closed(p, k));
}

TEST_CASE("binomial product sums") {
  for (auto path : {BinomPath::big_integer, BinomPath::lucas}) {
    CHECK(binom_product_sum_mod(5, 1, 2, 2, path) == 1);
    CHECK(binom_product_sum_mod(5, 1, 0, 1, path) == 0);
    CHECK(binom_product_sum_mod(3, 2, 4, 4, path) == 1);
    CHECK_THROWS_AS(binom_product_sum_mod(5, 1, 3, 0, path), DomainError);
  }
  for (std::uint32_t p : {3u, 5u, 7u})
    for (unsigned j : {1u, 2u}) {
      const std::uint64_t half = (*checked_pow(p, j) - 1) / 2;
      for (std::uint64_t k = 0; k <= half; ++k)
        for (std::uint64_t l = 0; l <= half; ++l) {
          const auto big = binom_product_sum_mod(p, j, k, l, BinomPath::big_integer);
          REQUIRE(big == binom_product_sum_mod(p, j, k, l, BinomPath::lucas));
          REQUIRE(big == pascal_sum(p, j, k, l));
          if (k + l < 2 * half) REQUIRE(big == 0);
        }
      CHECK(binom_product_sum_mod(p, j, half, half, BinomPath::lucas) ==
            (sign_pow(j * (p - 1) / 2) > 0 ? 1u : p - 1));
    }
}
