#pragma once

// Small integer helpers shared by the field and counting code.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace fszlab {

bool is_prime(std::uint64_t n);

// Returns (p, k) with q = p^k, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q);

// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// base^exp, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

// Smallest t with p^t >= n (so p^t = p^{ceil(log_p n)}).
unsigned ceil_log(std::uint64_t p, std::uint64_t n);

// (-1)^e as +1/-1.
constexpr int sign_pow(std::uint64_t e) { return (e % 2 == 0) ? 1 : -1; }

// All odd prime powers q with q <= bound, increasing.
std::vector<std::uint64_t> odd_prime_powers_up_to(std::uint64_t bound);

}  // namespace fszlab
