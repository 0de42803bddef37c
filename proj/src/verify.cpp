#include "fszlab/verify.hpp"

#include <chrono>
#include <random>
#include <sstream>
#include <tuple>

#include "fszlab/centralizer.hpp"
#include "fszlab/cyclotomic.hpp"
#include "fszlab/error.hpp"
#include "fszlab/fsz.hpp"
#include "fszlab/numtheory.hpp"
#include "fszlab/residue.hpp"
#include "fszlab/sylow.hpp"

namespace fszlab {

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(const std::string& what) { return {false, what}; }
Outcome ok(const std::string& what) { return {true, what}; }

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

Outcome qr_count(const VerifyOptions& opt) {
  std::size_t fields = 0;
  for (auto q : odd_prime_powers_up_to(2000)) {
    const auto [p, n] = *prime_power(q);
    const FieldSpec& f = verify_field(opt, static_cast<std::uint32_t>(p), n);
    const auto size = qr_set(f).size();
    if (size != (q + 1) / 2) return fail(cat("|QR(", q, ")| = ", size, ", expected ", (q + 1) / 2));
    ++fields;
  }
  const std::vector<std::pair<std::uint32_t, std::vector<Code>>> worked = {
      {5, {0, 1, 4}}, {7, {0, 1, 2, 4}}, {11, {0, 1, 3, 4, 5, 9}}};
  for (const auto& [p, expected] : worked) {
    std::vector<Code> got;
    for (const auto& x : qr_set(verify_field(opt, p, 1))) got.push_back(x.code());
    if (got != expected) return fail(cat("QR(", p, ") differs from the worked example"));
  }
  return ok(cat(fields, " fields, QR(5), QR(7), QR(11) verbatim"));
}

Outcome qr_shift(const VerifyOptions& opt) {
  std::size_t checked = 0;
  for (std::uint64_t q : {5, 7, 9, 11, 13, 25, 27, 49, 81, 125}) {
    const auto [p, n] = *prime_power(q);
    const FieldSpec& f = verify_field(opt, static_cast<std::uint32_t>(p), n);
    for (Code c = 1; c < f.q(); ++c) {
      const FieldElem ce(f, c);
      const auto closed = qr_diff_count(ce, CountMode::closed);
      const auto counted = qr_diff_count(ce, CountMode::enumerate);
      if (closed != counted)
        return fail(cat("q = ", q, ", c = ", ce.to_string(), ": closed ", closed, " != enumerated ", counted));
      ++checked;
    }
  }
  return ok(cat(checked, " shifts"));
}

Outcome gauss(const VerifyOptions&) {
  for (std::uint32_t p : {3, 5, 7, 11, 13}) {
    const CycNum g = gauss_sum(field_make(p, 1));
    const CycNum expected = CycNum::rational(p, mpq_class(sign_pow((p - 1) / 2) * static_cast<long>(p)));
    if (!(g * g == expected)) return fail(cat("G(", p, ")^2 != (-1)^((p-1)/2) p"));
  }
  std::size_t checked = 0;
  for (auto q : odd_prime_powers_up_to(400)) {
    const auto [p, n] = *prime_power(q);
    const auto pp = static_cast<std::uint32_t>(p);
    if (!(gauss_sum(field_make(pp, n)) == gauss_sum_lifted(pp, n)))
      return fail(cat("G(", q, ") != -(-G(", p, "))^", n));
    ++checked;
  }
  return ok(cat("5 squares, ", checked, " lifts"));
}

Outcome trace_fibers(const VerifyOptions& opt) {
  const std::vector<std::pair<std::uint32_t, unsigned>> cases = {{3, 1}, {3, 2}, {3, 3},  {3, 4},  {5, 1},
                                                                 {5, 2}, {5, 3}, {7, 1},  {7, 2},  {11, 1},
                                                                 {11, 2}, {13, 1}, {13, 2}};
  std::size_t checked = 0;
  for (const auto& [p, n] : cases) {
    const FieldSpec& f = verify_field(opt, p, n);
    for (Code z = 1; z < f.q(); ++z) {
      std::uint64_t total = 0;
      for (std::uint32_t y = 0; y < p; ++y) {
        const FiberCountQuery query{FieldElem(f, z), y};
        const auto closed = trace_fiber_qr_count(query, CountMode::closed);
        const auto counted = trace_fiber_qr_count(query, CountMode::enumerate);
        if (closed != counted)
          return fail(cat("(p,n) = (", p, ",", n, "), z = ", f.format(z), ", y = ", y, ": closed ", closed,
                          " != enumerated ", counted));
        total += counted;
        ++checked;
      }
      if (total != (f.q() + 1) / 2)
        return fail(cat("(p,n) = (", p, ",", n, "), z = ", f.format(z), ": fibers total ", total));
    }
  }
  return ok(cat(checked, " fibers"));
}

Outcome binomials(const VerifyOptions&) {
  std::size_t checked = 0;
  for (std::uint32_t p : {3, 5, 7}) {
    for (std::uint64_t k = 0; k <= 3 * (p - 1); ++k)
      if (power_sum_mod(p, k) != power_sum_mod_closed(p, k)) return fail(cat("power sum p = ", p, ", k = ", k));
    for (unsigned j : {1u, 2u}) {
      const std::uint64_t pj = *checked_pow(p, j), half = (pj - 1) / 2;
      const std::uint32_t top = sign_pow(j * (p - 1) / 2) == 1 ? 1 : p - 1;
      for (std::uint64_t k = 0; k <= half; ++k)
        for (std::uint64_t l = 0; l <= half; ++l) {
          const auto big = binom_product_sum_mod(p, j, k, l, BinomPath::big_integer);
          const auto lucas = binom_product_sum_mod(p, j, k, l, BinomPath::lucas);
          const auto where = cat("p = ", p, ", j = ", j, ", (k,l) = (", k, ",", l, ")");
          if (big != lucas) return fail(where + ": Lucas path disagrees");
          if (k + l < pj - 1 && big != 0) return fail(where + ": sum does not vanish");
          if (k == half && l == half && big != top) return fail(where + ": top sum is not (-1)^{j(p-1)/2}");
          ++checked;
        }
    }
  }
  return ok(cat(checked, " (k,l) pairs"));
}

SylowElem random_sylow(std::size_t n, const FieldSpec& f, std::mt19937_64& rng) {
  const std::uint64_t size = *checked_pow(f.q(), static_cast<unsigned>(n * n));
  return sylow_from_index(n, f, std::uniform_int_distribution<std::uint64_t>(0, size - 1)(rng));
}

Outcome powers(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::size_t checked = 0;
  for (const auto& [n, q] : std::vector<std::pair<std::size_t, std::uint64_t>>{{2, 3}, {3, 5}, {5, 3}}) {
    const FieldSpec& f = field_of_order(q);
    const std::uint64_t p = f.p();
    for (int s = 0; s < 200; ++s) {
      const SylowElem x = random_sylow(n, f, rng);
      SylowElem acc = x;
      for (std::uint64_t j = 1; j <= p * p; ++j) {
        if (!(sylow_pow(x, j) == acc)) return fail(cat("(n,q) = (", n, ",", q, "), sample ", s, ", j = ", j));
        acc = sylow_mul(acc, x);
        ++checked;
      }
      const std::uint64_t lo = x.l().order(), ord = sylow_order(x);
      if (ord != lo && ord != lo * p)
        return fail(cat("(n,q) = (", n, ",", q, "): order(L) = ", lo, " but order(X) = ", ord));
    }
  }
  return ok(cat(checked, " powers, 600 orders"));
}

Outcome upsilon_delta(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::size_t checked = 0;
  for (const auto& [p, n, y] : std::vector<std::tuple<std::uint32_t, std::size_t, unsigned>>{
           {5, 3, 1}, {3, 5, 1}, {3, 5, 2}}) {
    const FieldSpec& f = field_make(p, 1);
    std::uniform_int_distribution<Code> pick(0, p - 1);
    for (int s = 0; s < 100; ++s) {
      std::vector<Code> upper(n * (n - 1) / 2);
      for (auto& c : upper) c = pick(rng);
      const UniTriMat l = UniTriMat::from_upper(f, n, upper);
      for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = 1; b <= n; ++b) {
          if (!y_map_corner_delta_check(l, y, a, b))
            return fail(cat("(p,n,y) = (", p, ",", n, ",", y, "), sample ", s, ", (s,t) = (", a, ",", b, ")"));
          ++checked;
        }
    }
  }
  return ok(cat(checked, " (L, s, t) triples"));
}

Outcome characterization(const VerifyOptions& opt) {
  const PthPowerTarget t = make_target(field_make(5, 1), 1, 1);
  const PowerScan scan = scan_powers(t, {}, opt.budget, opt.threads);
  if (scan.power_formula_failures) return fail(cat(scan.power_formula_failures, " powers off the formula"));
  if (scan.membership_mismatches) return fail(cat(scan.membership_mismatches, " membership mismatches"));
  for (std::uint32_t d = 1; d < 5; ++d) {
    if (scan.solutions[d] != 250000 || scan.characterized[d] != 250000)
      return fail(cat("d = ", d, ": ", scan.solutions[d], " roots, ", scan.characterized[d], " characterized"));
    if (solution_count(t.with_d(d)) != 250000) return fail(cat("d = ", d, ": closed count differs"));
  }
  return ok(cat(scan.elements, " elements, 250000 roots of each g^d"));
}

Outcome pair_count(const VerifyOptions&) {
  std::size_t checked = 0;
  for (std::uint64_t q : {5, 13, 25, 29}) {
    const FieldSpec& f = field_of_order(q);
    for (std::uint32_t d = 1; d < f.p(); ++d) {
      const auto closed = sec6_pair_count(f, d, CountMode::closed);
      const auto counted = sec6_pair_count(f, d, CountMode::enumerate);
      const std::uint64_t expected = f.legendre(d) == 1 ? (q - 5) / 2 : (q - 1) / 2;
      if (closed != counted || counted != expected)
        return fail(cat("q = ", q, ", d = ", d, ": closed ", closed, ", enumerated ", counted));
      ++checked;
    }
  }
  return ok(cat(checked, " (q, d) pairs"));
}

Outcome two_routes(const VerifyOptions& opt) {
  const FieldSpec& f = field_make(5, 1);
  const PthPowerTarget t = make_target(f, 1, 1);
  const std::vector<LabeledElem> us = {{"U", witness_u(f, t.n)}};
  const FszReport fast = fsz_test_at(t, us, false, GmMode::fast, opt.budget, opt.threads);
  const FszReport brute = fsz_test_at(t, us, false, GmMode::brute, opt.budget, opt.threads);
  const auto& counts = brute.rows[0].counts;
  if (fast.rows[0].counts != counts) return fail("fast and brute counts differ");
  if (counts[0] != 0 || counts[1] <= 0)
    return fail(cat("|G_5(U,g)| = ", counts[0].get_str(), ", |G_5(U,g^2)| = ", counts[1].get_str()));
  if (brute.verdict != FszVerdict::non_fsz) return fail("count route did not give non-FSZ_5");
  for (Code z = 1; z < f.q(); ++z) {
    const BetaValue b = beta_linear(FieldElem(f, z), t);
    if (b.rational) return fail(cat("beta is rational at zparam = ", z, " although the counts differ"));
  }
  return ok(cat("|G_5(U,g)| = 0, |G_5(U,g^2)| = ", counts[1].get_str(), ", beta irrational for 4 zparams"));
}

Outcome linear_expansion(const VerifyOptions& opt) {
  const FieldSpec& f = field_make(3, 1);
  std::size_t checked = 0;
  const auto centre = central_elements(2, f, opt.budget);
  for (const auto& z : centre)
    for (const auto& chi : all_kappa_characters(2, f)) {
      if (!(beta_via_counts(chi, 2, f, 3, z, opt.budget) == beta_direct(chi, 2, f, 3, z, opt.budget)))
        return fail(cat("central z #", checked / 9, ": the two beta sums differ"));
      ++checked;
    }
  if (centre.size() < 2) return fail("fewer than two central elements found");
  return ok(cat(centre.size(), " central elements x 9 characters"));
}

Outcome centralizer(const VerifyOptions& opt) {
  const FieldSpec& f = field_make(5, 1);
  const PthPowerTarget t = make_target(f, 1, 1);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Code> pick(0, 4);
  for (int s = 0; s < 1000; ++s) {
    const CentElem a = random_centralizer_elem(t, rng()), b = random_centralizer_elem(t, rng());
    const MatFq perturbed = a.matrix() * random_symplectic(f, t.n, rng(), 1);
    if (commutes_with_target(perturbed, t) != has_centralizer_block_form(perturbed, t))
      return fail(cat("sample ", s, ": centralizer predicates disagree"));
    const auto [sa, la] = pi(a);
    const auto [sb, lb] = pi(b);
    const auto [sab, lab] = pi(a * b);
    if (!(sab == sa * sb) || lab != f.mul(la, lb)) return fail(cat("sample ", s, ": pi is not multiplicative"));
    const MatFq sym = random_symplectic(f, t.n - 1, rng());
    const Code lambda = (rng() & 1) ? 1 : f.neg(1);
    const auto [s2, l2] = pi(pi_section(t, sym, lambda));
    if (!(s2 == sym) || l2 != lambda) return fail(cat("sample ", s, ": pi after section is not the identity"));
    std::vector<Code> r(2 * t.n - 2);
    for (auto& c : r) c = pick(rng);
    const CentElem k = kernel_element(t, r, pick(rng));
    if (!in_kernel(k) || !k.matrix().pow(5).is_identity())
      return fail(cat("sample ", s, ": kernel element of order not dividing 5"));
  }
  return ok("4 properties x 1000 samples");
}

const char* const kAnchors[] = {"",
                                "quadratic-residue-count",
                                "qr-shift-intersection",
                                "gauss-sum-lift",
                                "trace-fiber-residues",
                                "binomial-vanishing",
                                "sylow-power-formula",
                                "upsilon-delta",
                                "root-characterization",
                                "pair-count",
                                "sylow-non-fsz",
                                "linear-character-expansion",
                                "centralizer-structure"};

}  // namespace

const FieldSpec& verify_field(const VerifyOptions& opt, std::uint32_t p, unsigned n) {
  if (opt.corrupt_modulus && p == 3 && n == 2) return field_with_modulus(3, 2, {2, 0, 1}, false);
  return field_make(p, n);
}

TierResult run_tier(int id, const VerifyOptions& opt) {
  using Fn = Outcome (*)(const VerifyOptions&);
  static const Fn tiers[] = {nullptr,      qr_count,         qr_shift, gauss,      trace_fibers,
                             binomials,    powers,           upsilon_delta, characterization, pair_count,
                             two_routes,   linear_expansion, centralizer};
  if (id < 1 || id > 12) throw DomainError("tier must lie in 1..12");
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = tiers[id](opt);
  } catch (const std::exception& e) {
    out = fail(std::string("exception: ") + e.what());
  }
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  return {id, kAnchors[id], out.pass, out.detail, took.count()};
}

std::vector<TierResult> run_verify(const VerifyOptions& opt, const std::function<void(const TierResult&)>& on_tier) {
  std::vector<TierResult> out;
  for (int id = 1; id <= (opt.quick ? 7 : 12); ++id) {
    out.push_back(run_tier(id, opt));
    if (on_tier) on_tier(out.back());
  }
  return out;
}

}  // namespace fszlab
