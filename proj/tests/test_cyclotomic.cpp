#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "doctest.h"
#include "fszlab/cyclotomic.hpp"
#include "fszlab/error.hpp"
#include "fszlab/numtheory.hpp"

using namespace fszlab;
using quad = boost::multiprecision::cpp_bin_float_quad;

namespace {

CycNum random_cyc(std::uint32_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<mpq_class> c;
  for (std::uint32_t i = 0; i + 1 < p; ++i) c.emplace_back(num(rng), den(rng));
  return CycNum(p, c);
}

// Real and imaginary parts at zeta = exp(2 pi i / p) in quad precision.
std::pair<quad, quad> eval_quad(const CycNum& x) {
  const quad two_pi = 2 * boost::math::constants::pi<quad>();
  quad re = 0, im = 0;
  for (std::uint32_t i = 0; i + 1 < x.p(); ++i) {
    const quad c = quad(x.coeffs()[i].get_num().get_str()) / quad(x.coeffs()[i].get_den().get_str());
    re += c * cos(two_pi * i / x.p());
    im += c * sin(two_pi * i / x.p());
  }
  return {re, im};
}

CycNum from_ints(std::uint32_t p, std::vector<int> c) {
  std::vector<mpq_class> q;
  for (int v : c) q.emplace_back(v);
  return CycNum(p, q);
}

}  // namespace

TEST_CASE("roots of unity") {
  for (std::uint32_t p : {3u, 5u, 7u, 13u}) {
    CHECK(CycNum::zeta_pow(p, 1) * CycNum::zeta_pow(p, p - 1) == CycNum::rational(p, 1));
    CycNum sum(p);
    for (std::uint32_t i = 0; i < p; ++i) sum += CycNum::zeta_pow(p, i);
    CHECK(sum.is_zero());
  }
  CHECK(CycNum::zeta_pow(5, 1).conj() == from_ints(5, {-1, -1, -1, -1}));
  CHECK(CycNum::zeta_pow(5, -1) == CycNum::zeta_pow(5, 4));
}

TEST_CASE("mixed primes and bad galois exponents are rejected") {
  CHECK_THROWS_AS(CycNum::zeta_pow(5, 1) + CycNum::zeta_pow(7, 1), DomainError);
  CHECK_THROWS_AS(CycNum::zeta_pow(5, 1).galois(10), DomainError);
  CHECK_THROWS_AS(CycNum(9), DomainError);
}

TEST_CASE("is_rational") {
  CycNum full(5);
  for (int i = 0; i < 5; ++i) full += CycNum::zeta_pow(5, i);
  REQUIRE(full.as_rational());
  CHECK(*full.as_rational() == 0);
  CHECK_FALSE(CycNum::zeta_pow(5, 1).is_rational());
  const CycNum x = CycNum::rational(5, 1) + CycNum::zeta_pow(5, 1) + CycNum::zeta_pow(5, 4);
  CHECK_FALSE(x.is_rational());
}

TEST_CASE("norm_sq") {
  for (int k = 0; k < 7; ++k) CHECK(norm_sq(CycNum::zeta_pow(7, k)) == CycNum::rational(7, 1));
  CHECK(norm_sq(CycNum(5)).is_zero());

  // (1 + z + z^4)^2 reduced by hand: 3 + 2z + z^2 + z^3 + 2z^4 = 1 - z^2 - z^3.
  const CycNum x = CycNum::rational(5, 1) + CycNum::zeta_pow(5, 1) + CycNum::zeta_pow(5, 4);
  const CycNum n = norm_sq(x);
  CHECK(n == from_ints(5, {1, 0, -1, -1}));
  const auto [re, im] = eval_quad(n);
  const auto [xr, xi] = eval_quad(x);
  CHECK(abs(re - (xr * xr + xi * xi)) < quad("1e-30"));
  CHECK(abs(im) < quad("1e-30"));
}

TEST_CASE("norm_sq is conjugation-invariant; rational iff Galois-fixed") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const CycNum x = random_cyc(p, rng);
      const CycNum n = norm_sq(x);
      CHECK(n.conj() == n);
      for (const CycNum& v : {x, n, CycNum::rational(p, mpq_class(3, 7))}) {
        bool fixed = true;
        for (std::uint32_t k = 1; k < p; ++k) fixed = fixed && v.galois(k) == v;
        CHECK(fixed == v.is_rational());
      }
    }
  }
}

TEST_CASE("multiplication matches floating evaluation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CycNum a = random_cyc(7, rng), b = random_cyc(7, rng);
    const auto ab = (a * b).evaluate();
    const auto expect = a.evaluate() * b.evaluate();
    CHECK(std::abs(ab - expect) < 1e-9L);
  }
}

TEST_CASE("e_q") {
  const auto& f5 = field_make(5, 1);
  CHECK(e_q(FieldElem(f5, 0)) == CycNum::rational(5, 1));
  CHECK(e_q(FieldElem(f5, 2)) == CycNum::zeta_pow(5, 2));
  const auto& f9 = field_make(3, 2);
  CHECK(e_q(FieldElem(f9, f9.generator_x())) == CycNum::rational(3, 1));
  const auto& f25 = field_make(5, 2);
  for (Code a = 0; a < 25; a += 3)
    for (Code b = 0; b < 25; b += 2)
      CHECK(e_q(FieldElem(f25, f25.add(a, b))) == e_q(FieldElem(f25, a)) * e_q(FieldElem(f25, b)));
}

TEST_CASE("Gauss sums of prime fields square to ±p") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const CycNum g = gauss_sum(field_make(p, 1));
    CHECK(g * g == CycNum::rational(p, sign_pow((p - 1) / 2) * static_cast<long>(p)));
  }
  CHECK(gauss_sum(field_make(5, 2)) == CycNum::rational(5, -5));
}

TEST_CASE("definitional G(p^n) equals -(-G(p))^n for p^n <= 400") {
  for (auto q : odd_prime_powers_up_to(400)) {
    const auto [p, n] = *prime_power(q);
    CAPTURE(q);
    CHECK(gauss_sum(field_make(static_cast<std::uint32_t>(p), n)) ==
          gauss_sum_lifted(static_cast<std::uint32_t>(p), n));
  }
}

// The sum is legendre(-y) G(p); it equals legendre(y) G(p) exactly when p = 1 mod 4.
TEST_CASE("quadratic character sum against e_p(-ay)") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const auto& f = field_make(p, 1);
    const CycNum g = gauss_sum(f);
    for (std::uint32_t y = 1; y < p; ++y) {
      CycNum s(p);
      for (std::uint32_t a = 1; a < p; ++a)
        s += CycNum::zeta_pow(p, -static_cast<std::int64_t>(a * y)) * mpq_class(f.legendre(a));
      CHECK(s == g * mpq_class(f.legendre(p - y)));
      CHECK((s == g * mpq_class(f.legendre(y))) == (p % 4 == 1));
    }
  }
}
