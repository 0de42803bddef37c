#include <random>

#include "doctest.h"
#include "fszlab/error.hpp"
#include "fszlab/fsz.hpp"

using namespace fszlab;

namespace {

// a^m through the embedded 2n x 2n matrices, independent of the block power formula.
MatFq matrix_power(const SylowElem& a, std::uint64_t m) { return a.embed().pow(m); }

std::vector<SylowElem> whole_group(std::size_t n, const FieldSpec& f) {
  std::vector<SylowElem> all;
  enumerate_sylow(n, f, 1'000'000, [&](std::uint64_t, const SylowElem& x) { all.push_back(x); });
  return all;
}

// |{a : a^m = (au)^m = g}| with full matrix arithmetic.
std::uint64_t oracle_gm(const std::vector<SylowElem>& all, const SylowElem& u, const MatFq& g, std::uint64_t m) {
  const MatFq um = u.embed();
  std::uint64_t c = 0;
  for (const auto& a : all) {
    const MatFq am = a.embed();
    if (am.pow(m) == g && (am * um).pow(m) == g) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("targets") {
  const auto& f5 = field_make(5, 1);
  const auto t = make_target(f5, 1, 1);
  CHECK(t.n == 3);
  CHECK(t.sigma == 1);
  CHECK(t.matrix() == MatFq::identity(f5, 6) + MatFq::elementary(f5, 6, 6, 2, 5));
  for (std::uint32_t d = 1; d < 5; ++d) CHECK(make_target(f5, 1, d).matrix().pow(5).is_identity());

  const auto& f7 = field_make(7, 1);
  const auto t7 = make_target(f7, 1, 2);
  CHECK(t7.sigma == -1);
  CHECK(t7.matrix() == MatFq::identity(f7, 8) - MatFq::elementary(f7, 8, 8, 3, 7).scaled(2));
  CHECK_THROWS_AS(make_target(f5, 1, 0), DomainError);
  CHECK_THROWS_AS(make_target(f5, 1, 5), DomainError);

  for (const auto& tt : {t, t7, make_target(field_make(3, 1), 1, 1), make_target(field_make(3, 1), 2, 2)})
    CHECK(is_central(tt.element()));
}

TEST_CASE("solve_pth_power") {
  const auto& f5 = field_make(5, 1);
  const auto t = make_target(f5, 1, 1);
  const SylowElem x = solve_pth_power(t, FieldElem(f5, 1));
  CHECK(x.l().superdiag(0) == 1);
  CHECK(x.l().superdiag(1) == 1);
  CHECK(x.a().at(0, 0) == 1);
  CHECK(matrix_power(x, 5) == t.matrix());
  CHECK_THROWS_AS(solve_pth_power(t, FieldElem(f5, 2)), DomainError);
  CHECK_THROWS_AS(solve_pth_power(t, FieldElem(f5, 0)), DomainError);

  const auto t2 = make_target(f5, 1, 2);
  CHECK(matrix_power(solve_pth_power(t2, FieldElem(f5, 2)), 5) == t2.matrix());

  // every admissible corner value over F_25 and over F_3 with j = 2
  const auto& f25 = field_make(5, 2);
  for (std::uint32_t d = 1; d < 5; ++d) {
    const auto tq = make_target(f25, 1, d);
    for (Code c = 1; c < 25; ++c) {
      if (f25.legendre(c) != f25.legendre(d)) {
        CHECK_THROWS_AS(solve_pth_power(tq, FieldElem(f25, c)), DomainError);
        continue;
      }
      const SylowElem y = solve_pth_power(tq, FieldElem(f25, c));
      CHECK(y.a().at(0, 0) == c);
      CHECK(matrix_power(y, 5) == tq.matrix());
    }
  }
  const auto t9 = make_target(field_make(3, 1), 2, 1);
  CHECK(t9.n == 5);
  CHECK(matrix_power(solve_pth_power(t9, FieldElem(field_make(3, 1), 1)), 9) == t9.matrix());
}

TEST_CASE("solution counts") {
  const auto& f5 = field_make(5, 1);
  for (std::uint32_t d = 1; d < 5; ++d) CHECK(solution_count(make_target(f5, 1, d)) == 4 * 4 * 5 * 3125);

  // P(Sp_4(3)): every element, the characterization against matrix powers.
  const auto& f3 = field_make(3, 1);
  const auto all = whole_group(2, f3);
  for (std::uint32_t d = 1; d < 3; ++d) {
    const auto t = make_target(f3, 1, d);
    std::uint64_t n = 0;
    for (const auto& a : all) {
      const bool root = matrix_power(a, 3) == t.matrix();
      REQUIRE(root == satisfies_characterization(t, a));
      n += root;
    }
    CHECK(mpz_class(std::to_string(n)) == solution_count(t));
  }

  // a random sample of P(Sp_6(5))
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<std::uint64_t> pick(0, 1953124);
  for (int i = 0; i < 3000; ++i) {
    const SylowElem a = sylow_from_index(3, f5, pick(rng));
    const MatFq a5 = matrix_power(a, 5);
    for (std::uint32_t d = 1; d < 5; ++d) {
      const auto t = make_target(f5, 1, d);
      REQUIRE((a5 == t.matrix()) == satisfies_characterization(t, a));
    }
  }
}

TEST_CASE("gm_count fast = brute = matrix oracle on P(Sp_4(3))") {
  const auto& f3 = field_make(3, 1);
  const auto all = whole_group(2, f3);
  const auto base = make_target(f3, 1, 1);
  const PowerScan scan = scan_powers(base, all, 1000, 1);
  CHECK(scan.power_formula_failures == 0);
  CHECK(scan.membership_mismatches == 0);
  for (std::size_t k = 0; k < all.size(); ++k)
    for (std::uint32_t d = 1; d < 3; ++d) {
      const auto t = base.with_d(d);
      const auto fast = gm_count_fast(all[k], t);
      REQUIRE(fast == mpz_class(std::to_string(scan.gm[k][d])));
      if (k % 9 == 0) REQUIRE(fast == mpz_class(std::to_string(oracle_gm(all, all[k], t.matrix(), 3))));
    }
}

TEST_CASE("the witness row on P(Sp_6(5))") {
  const auto& f5 = field_make(5, 1);
  const SylowElem u = witness_u(f5, 3);
  CHECK(is_symplectic(u.embed()));
  const auto base = make_target(f5, 1, 1);
  // 2 square roots of l_{2,3}^2, 2 pairs (a, b), 5 choices of l_{1,3}, 5^5 free A entries
  const std::uint64_t expect[] = {0, 2 * 2 * 5 * 3125, 2 * 2 * 5 * 3125, 0};
  for (std::uint32_t d = 1; d < 5; ++d) {
    CHECK(gm_count_fast(u, base.with_d(d)) == expect[d - 1]);
    CHECK(gm_count_fast(SylowElem::identity(f5, 3), base.with_d(d)) == 250000);
  }
  const LabeledElem us[] = {{"identity", SylowElem::identity(f5, 3)}, {"U", u}};
  const FszReport rep = fsz_test_at(base, us, false, GmMode::fast, 0, 1);
  CHECK(rep.verdict == FszVerdict::non_fsz);
  REQUIRE(rep.witness_row);
  CHECK(*rep.witness_row == 1);
  CHECK(verdict_name(rep.verdict, rep.m) == "non-FSZ_5");

  const auto ws = witness_order_search(rep, KappaCharacter{{1, 0, 0}});
  REQUIRE(ws.row);
  CHECK(*ws.row == 1);
  CHECK(ws.character_order == 5);
  // a character trivial on U finds nothing among these rows
  const auto none = witness_order_search(rep, KappaCharacter{{1, 4, 0}});
  CHECK_FALSE(none.row);
  CHECK(none.exhausted);

  const LabeledElem only_id[] = {{"identity", SylowElem::identity(f5, 3)}};
  CHECK(fsz_test_at(base, only_id, false, GmMode::fast, 0, 1).verdict == FszVerdict::inconclusive);
}

TEST_CASE("exhaustive reports on P(Sp_4(3)) agree between modes") {
  const auto& f3 = field_make(3, 1);
  std::vector<LabeledElem> us;
  for (const auto& x : whole_group(2, f3)) us.push_back({std::to_string(sylow_index(x)), x});
  const auto base = make_target(f3, 1, 1);
  const FszReport fast = fsz_test_at(base, us, true, GmMode::fast, 1000, 1);
  const FszReport brute = fsz_test_at(base, us, true, GmMode::brute, 1000, 2);
  CHECK(fast.verdict == brute.verdict);
  CHECK(fast.verdict != FszVerdict::inconclusive);
  for (std::size_t i = 0; i < us.size(); ++i) CHECK(fast.rows[i].counts == brute.rows[i].counts);
}

TEST_CASE("budget refusal") {
  const auto t = make_target(field_make(7, 1), 1, 1);
  CHECK_THROWS_AS(gm_count_brute(SylowElem::identity(field_make(7, 1), 4), t, 2'000'000, 1), BudgetExceeded);
  // the fast path needs no enumeration
  CHECK(gm_count_fast(SylowElem::identity(field_make(7, 1), 4), t) == solution_count(t));
}

TEST_CASE("UT(3,3) is FSZ_3") {
  const auto& f3 = field_make(3, 1);
  std::vector<MatFq> g;
  for_each_unitriangular(f3, 3, [&](const UniTriMat& l) { g.push_back(l.matrix()); });
  const auto r = fsz_brute_matrix_group(g, 3);
  CHECK(r.fsz);
  CHECK(r.checked_pairs > 0);
}

TEST_CASE("beta_linear on P(Sp_6(5))") {
  const auto& f5 = field_make(5, 1);
  const auto t = make_target(f5, 1, 1);
  const CycNum qr_sum = CycNum::rational(5, 1) + CycNum::zeta_pow(5, 1) + CycNum::zeta_pow(5, 4);
  for (Code z = 1; z < 5; ++z) {
    const BetaValue b = beta_linear(FieldElem(f5, z), t);
    CHECK_FALSE(b.rational);
    CHECK(b.rational == b.value.is_rational());
    CHECK(b.value == norm_sq(b.inner));
  }
  CHECK(equivalent_mod_rationals(beta_linear(FieldElem(f5, 1), t).inner, qr_sum));
  CHECK_FALSE(equivalent_mod_rationals(qr_sum, CycNum::rational(5, 3)));
  CHECK_THROWS_AS(beta_linear(FieldElem(f5, 0), t), DomainError);

  // q = 25: every d in F_5 is a square in F_25 and the values equidistribute.
  const auto& f25 = field_make(5, 2);
  for (Code z = 1; z < 25; z += 5) CHECK(beta_linear(FieldElem(f25, z), make_target(f25, 1, 1)).rational);
}

TEST_CASE("beta via counts equals the direct sum on P(Sp_4(3))") {
  const auto& f3 = field_make(3, 1);
  const auto centre = central_elements(2, f3, 1000);
  CHECK(centre.size() == 3);
  const auto chars = all_kappa_characters(2, f3);
  CHECK(chars.size() == 9);
  for (const auto& z : centre)
    for (const auto& chi : chars) {
      const CycNum direct = beta_direct(chi, 2, f3, 3, z, 1000);
      CHECK(beta_via_counts(chi, 2, f3, 3, z, 1000) == direct);
    }
  // trivial character: (number of roots)^2
  const auto g = make_target(f3, 1, 1);
  const mpz_class roots = solution_count(g);
  CHECK(beta_direct({{0, 0}}, 2, f3, 3, g.element(), 1000) == CycNum::rational(3, mpq_class(roots * roots)));
  // an element with no cube roots
  const SylowElem lonely = sylow_from_index(2, f3, 80);
  bool has_root = false;
  for (const auto& a : whole_group(2, f3)) has_root = has_root || sylow_pow(a, 3) == lonely;
  REQUIRE_FALSE(has_root);
  CHECK(beta_direct(chars[4], 2, f3, 3, lonely, 1000).is_zero());
  CHECK(beta_via_counts(chars[4], 2, f3, 3, lonely, 1000).is_zero());
}

TEST_CASE("sec6 pair counts") {
  CHECK(sec6_pair_count(field_make(5, 1), 1, CountMode::closed) == 0);
  CHECK(sec6_pair_count(field_make(5, 1), 2, CountMode::closed) == 2);
  CHECK(sec6_pair_count(field_make(13, 1), 1, CountMode::closed) == 4);
  for (auto [p, n] : {std::pair{5u, 1u}, {13u, 1u}, {5u, 2u}, {29u, 1u}}) {
    const auto& f = field_make(p, n);
    for (std::uint32_t d = 1; d < p; ++d) {
      const auto closed = sec6_pair_count(f, d, CountMode::closed);
      CHECK(closed == sec6_pair_count(f, d, CountMode::enumerate));
      CHECK(closed == (f.legendre(d) == 1 ? (f.q() - 5) / 2 : (f.q() - 1) / 2));
    }
  }
  CHECK_THROWS_AS(sec6_pair_count(field_make(7, 1), 1, CountMode::closed), DomainError);
}
