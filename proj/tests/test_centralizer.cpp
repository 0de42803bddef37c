#include <random>

#include "doctest.h"
#include "fszlab/centralizer.hpp"
#include "fszlab/error.hpp"

using namespace fszlab;

namespace {

const PthPowerTarget& sp6() {
  static const PthPowerTarget t = make_target(field_make(5, 1), 1, 1);
  return t;
}

}  // namespace

TEST_CASE("membership examples") {
  const auto& t = sp6();
  const auto& f = *t.spec;
  CHECK(is_in_centralizer(t.matrix(), t));
  CHECK(is_in_centralizer(-MatFq::identity(f, 6), t));
  const CentElem s = pi_section(t, random_symplectic(f, 2, 1), f.neg(1));
  CHECK(is_in_centralizer(s.matrix(), t));
  CHECK_THROWS_AS(is_in_centralizer(MatFq::identity(f, 6).scaled(2), t), DomainError);
  CHECK_THROWS_AS(CentElem(t, random_symplectic(f, 3, 99)), DomainError);
}

TEST_CASE("pi on known elements") {
  const auto& t = sp6();
  const auto& f = *t.spec;
  const auto [s, l] = pi(CentElem(t, t.matrix()));
  CHECK(s.is_identity());
  CHECK(l == 1);
  const auto [s2, l2] = pi(CentElem(t, -MatFq::identity(f, 6)));
  CHECK(s2 == -MatFq::identity(f, 4));
  CHECK(l2 == 4);
  CHECK(pi_section(t, MatFq::identity(f, 4), 1).matrix().is_identity());
  CHECK_THROWS_AS(pi_section(t, MatFq::identity(f, 4), 2), DomainError);
  CHECK_THROWS_AS(pi_section(t, MatFq::identity(f, 4).scaled(2), 1), DomainError);
}

TEST_CASE("predicates agree on centralizing and perturbed matrices") {
  const auto& t = sp6();
  const auto& f = *t.spec;
  int inside = 0, outside = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const CentElem m = random_centralizer_elem(t, seed);
    CHECK(commutes_with_target(m.matrix(), t));
    CHECK(has_centralizer_block_form(m.matrix(), t));
    const MatFq perturbed = m.matrix() * random_symplectic(f, 3, seed + 1000, 1);
    const bool a = commutes_with_target(perturbed, t);
    CHECK(a == has_centralizer_block_form(perturbed, t));
    (a ? inside : outside)++;
  }
  CHECK(outside > 0);
}

TEST_CASE("pi is a homomorphism with a section") {
  const auto& t = sp6();
  const auto& f = *t.spec;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const CentElem a = random_centralizer_elem(t, seed), b = random_centralizer_elem(t, seed + 7777);
    const auto [sa, la] = pi(a);
    const auto [sb, lb] = pi(b);
    const auto [sab, lab] = pi(a * b);
    CHECK(sab == sa * sb);
    CHECK(lab == f.mul(la, lb));
    CHECK(is_symplectic(sab));
    CHECK(sab.rows() == 4);
    CHECK(f.mul(la, la) == 1);

    const MatFq s = random_symplectic(f, 2, seed);
    const Code l = seed % 2 ? 1 : f.neg(1);
    const auto [s2, l2] = pi(pi_section(t, s, l));
    CHECK(s2 == s);
    CHECK(l2 == l);
  }
}

TEST_CASE("kernel elements have order dividing p") {
  const auto& t = sp6();
  const auto& f = *t.spec;
  const std::vector<Code> zero(4, 0);
  const CentElem g = kernel_element(t, zero, 1);
  CHECK(g.matrix() == t.matrix());
  CHECK(in_kernel(g));
  CHECK_FALSE(g.matrix().is_identity());
  CHECK(g.matrix().pow(5).is_identity());
  CHECK(kernel_element(t, zero, 0).matrix().is_identity());

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Code> pick(0, 4);
  for (int i = 0; i < 200; ++i) {
    std::vector<Code> r(4);
    for (auto& c : r) c = pick(rng);
    const CentElem k = kernel_element(t, r, pick(rng));
    CHECK(in_kernel(k));
    for (std::uint64_t s = 0; s <= 5; ++s) CHECK(kernel_power_closed(k, s) == k.matrix().pow(s));
    CHECK(k.matrix().pow(5).is_identity());
  }
  const std::vector<Code> r{1, 0, 0, 0}, bad_w{0, 0, 0, 0};
  CHECK_THROWS_AS(kernel_element_from_parts(t, r, bad_w, 0), DomainError);
  const std::vector<Code> good_w{0, 0, f.neg(1), 0};
  CHECK(in_kernel(kernel_element_from_parts(t, r, good_w, 0)));
}

TEST_CASE("sampling is deterministic and closed") {
  const auto& t = sp6();
  CHECK(random_centralizer_elem(t, 42).matrix() == random_centralizer_elem(t, 42).matrix());
  CHECK_FALSE(random_centralizer_elem(t, 42).matrix() == random_centralizer_elem(t, 43).matrix());
  const MatFq prod = random_centralizer_elem(t, 1).matrix() * random_centralizer_elem(t, 2).matrix();
  CHECK(is_in_centralizer(prod, t));
}

TEST_CASE("p = 3 mod 4 and j = 2 targets") {
  for (const auto& t : {make_target(field_make(7, 1), 1, 3), make_target(field_make(3, 1), 2, 1)}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const CentElem m = random_centralizer_elem(t, seed);
      CHECK(is_symplectic(pi(m).first));
      CHECK(pi(m).first.rows() == t.m - 1);
    }
    std::vector<Code> zero(t.m - 1, 0);
    CHECK(kernel_element(t, zero, t.element().a().at(t.n - 1, t.n - 1)).matrix() == t.matrix());
  }
}
