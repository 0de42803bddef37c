#include "fszlab/fsz.hpp"

#include <map>
#include <numeric>

#include "fszlab/error.hpp"
#include "fszlab/numtheory.hpp"
#include "fszlab/parallel.hpp"
#include "fszlab/residue.hpp"

namespace fszlab {

namespace {

constexpr std::uint64_t kTupleLimit = 100'000'000;

// Visits every tuple in F_q^len, last coordinate fastest.
template <class Fn>
void for_each_tuple(const FieldSpec& f, std::size_t len, Fn fn) {
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), f.q(), len);
  if (total > kTupleLimit) throw DomainError("superdiagonal tuple space too large: " + total.get_str());
  std::vector<Code> s(len, 0);
  for (;;) {
    fn(std::as_const(s));
    std::size_t i = len;
    while (i > 0 && s[i - 1] == f.q() - 1) s[--i] = 0;
    if (i == 0) return;
    ++s[i - 1];
  }
}

Code upsilon_of(const FieldSpec& f, std::span<const Code> s) {
  Code prod = 1;
  for (Code c : s) prod = f.mul(prod, f.mul(c, c));
  return prod;
}

// Free choices left once the superdiagonal and A_{1,1} are fixed.
mpz_class free_factor(const FieldSpec& f, std::size_t n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), f.q(), (n - 1) * (n - 2) / 2 + n * (n + 1) / 2 - 1);
  return r;
}

// d with x == g^d (d = 0: identity), if any.
std::optional<std::uint32_t> target_exponent(const SylowElem& x, const PthPowerTarget& t,
                                              const std::vector<SylowElem>& targets) {
  if (!x.l().is_identity()) return std::nullopt;
  const Code c = x.a().at(t.n - 1, t.n - 1);
  if (c >= t.p()) return std::nullopt;
  const std::uint32_t d = t.sigma > 0 ? c : (t.p() - c) % t.p();
  if (x == targets[d]) return d;
  return std::nullopt;
}

std::vector<SylowElem> all_targets(const PthPowerTarget& t) {
  std::vector<SylowElem> out;
  out.push_back(SylowElem::identity(*t.spec, t.n));
  for (std::uint32_t d = 1; d < t.p(); ++d) out.push_back(t.with_d(d).element());
  return out;
}

// Power formula check: x^m == I + sigma v E_{n,2n} with v = A_{1,1} Upsilon.
bool matches_power_formula(const SylowElem& xm, const PthPowerTarget& t, Code v) {
  if (!xm.l().is_identity()) return false;
  const FieldSpec& f = *t.spec;
  const Code expect = t.sigma > 0 ? v : f.neg(v);
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t k = 0; k < t.n; ++k) {
      const Code want = (i == t.n - 1 && k == t.n - 1) ? expect : 0;
      if (xm.a().at(i, k) != want) return false;
    }
  return true;
}

std::uint64_t group_size_checked(std::size_t n, const FieldSpec& spec, std::uint64_t budget) {
  return sylow_check_budget(n, spec, budget);
}

}  // namespace

// ---- targets -------------------------------------------------------------------

SylowElem PthPowerTarget::element() const {
  MatFq a(*spec, n, n);
  a.at(n - 1, n - 1) = spec->from_int(static_cast<std::int64_t>(sigma) * d);
  return SylowElem::from_blocks(UniTriMat::identity(*spec, n), std::move(a));
}

PthPowerTarget PthPowerTarget::with_d(std::uint32_t dd) const {
  return make_target(*spec, j, dd);
}

PthPowerTarget make_target(const FieldSpec& spec, unsigned j, std::uint32_t d) {
  const std::uint32_t p = spec.p();
  if (d == 0 || d >= p) throw DomainError("d must lie in [1, p)");
  if (j < 1) throw DomainError("j must be >= 1");
  const auto pj = checked_pow(p, j);
  if (!pj || *pj > 199) throw DomainError("p^j too large for a block-form target");
  return {&spec, j, d, static_cast<std::size_t>((*pj + 1) / 2),
          sign_pow(static_cast<std::uint64_t>(j) * (p - 1) / 2), *pj};
}

bool satisfies_characterization(const PthPowerTarget& t, const SylowElem& x) {
  const FieldSpec& f = *t.spec;
  return f.mul(x.a().at(0, 0), upsilon(x.l(), t.j).code()) == t.d;
}

SylowElem solve_pth_power(const PthPowerTarget& t, const FieldElem& x) {
  const FieldSpec& f = *t.spec;
  if (&x.spec() != &f) throw DomainError("x lies in a different field");
  if (x.is_zero()) throw DomainError("A_{1,1} = 0 gives no p^j-th root of g");
  const Code ratio = f.mul(t.d, f.inv(x.code()));
  if (f.legendre(ratio) != 1)
    throw DomainError("legendre(x) != legendre(d): Upsilon(L,j) = d/x must be a nonzero square");
  Code r = 1;
  while (f.mul(r, r) != ratio) ++r;
  MatFq l = MatFq::identity(f, t.n);
  l.at(0, 1) = r;
  for (std::size_t i = 1; i + 1 < t.n; ++i) l.at(i, i + 1) = 1;
  std::vector<Code> lower(t.n * (t.n + 1) / 2, 0);
  lower[0] = x.code();
  SylowElem out = SylowElem::from_free(UniTriMat::from_matrix(std::move(l)), lower);
  if (!(sylow_pow(out, t.m) == t.element())) throw std::logic_error("constructed root fails X^{p^j} = g");
  return out;
}

mpz_class solution_count(const PthPowerTarget& t) {
  const FieldSpec& f = *t.spec;
  std::uint64_t good = 0;
  for_each_tuple(f, t.n - 1, [&](std::span<const Code> s) {
    if (upsilon_of(f, s) != 0) ++good;
  });
  return mpz_class(std::to_string(good)) * free_factor(f, t.n);
}

SylowElem witness_u(const FieldSpec& spec, std::size_t n) {
  if (n < 2) throw DomainError("the witness needs n >= 2");
  MatFq l = MatFq::identity(spec, n);
  l.at(0, 1) = 1;
  MatFq a(spec, n, n);
  a.at(0, 0) = 1;
  a.at(0, 1) = spec.neg(1);
  return SylowElem::from_blocks(UniTriMat::from_matrix(std::move(l)), std::move(a));
}

mpz_class gm_count_fast(const SylowElem& u, const PthPowerTarget& t) {
  const FieldSpec& f = *t.spec;
  if (&u.spec() != &f || u.n() != t.n) throw DomainError("u is not in the target's group");
  std::vector<Code> m(t.n - 1);
  for (std::size_t i = 0; i + 1 < t.n; ++i) m[i] = u.l().superdiag(i);
  const Code b11 = u.a().at(0, 0);
  std::vector<Code> shifted(t.n - 1);
  std::uint64_t good = 0;
  for_each_tuple(f, t.n - 1, [&](std::span<const Code> s) {
    const Code u1 = upsilon_of(f, s);
    if (u1 == 0) return;
    for (std::size_t i = 0; i < s.size(); ++i) shifted[i] = f.add(s[i], m[i]);
    const Code u2 = upsilon_of(f, shifted);
    if (u2 == 0) return;
    const Code a11 = f.mul(t.d, f.inv(u1));
    if (f.mul(f.add(a11, b11), u2) == t.d) ++good;
  });
  return mpz_class(std::to_string(good)) * free_factor(f, t.n);
}

// ---- brute-force scans ------------------------------------------------------------

void PowerScan::merge(PowerScan&& o) {
  auto add = [](std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.empty()) a.assign(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  };
  elements += o.elements;
  add(solutions, o.solutions);
  add(characterized, o.characterized);
  power_formula_failures += o.power_formula_failures;
  membership_mismatches += o.membership_mismatches;
  if (a11_histogram.empty()) a11_histogram.resize(o.a11_histogram.size());
  for (std::size_t i = 0; i < o.a11_histogram.size(); ++i) add(a11_histogram[i], o.a11_histogram[i]);
  if (gm.empty()) gm.resize(o.gm.size());
  for (std::size_t i = 0; i < o.gm.size(); ++i) add(gm[i], o.gm[i]);
}

PowerScan scan_powers_range(const PthPowerTarget& t, std::span<const SylowElem> us, std::uint64_t begin,
                            std::uint64_t end) {
  const FieldSpec& f = *t.spec;
  const std::uint32_t p = t.p();
  const auto targets = all_targets(t);
  PowerScan r;
  r.solutions.assign(p, 0);
  r.characterized.assign(p, 0);
  r.a11_histogram.assign(p, std::vector<std::uint64_t>(f.q(), 0));
  r.gm.assign(us.size(), std::vector<std::uint64_t>(p, 0));
  enumerate_sylow_range(t.n, f, begin, end, [&](std::uint64_t, const SylowElem& x) {
    ++r.elements;
    const SylowElem xm = sylow_pow(x, t.m);
    const Code v = f.mul(x.a().at(0, 0), upsilon(x.l(), t.j).code());
    if (!matches_power_formula(xm, t, v)) ++r.power_formula_failures;
    const auto dp = target_exponent(xm, t, targets);
    const std::optional<std::uint32_t> dv = v < p ? std::optional<std::uint32_t>(v) : std::nullopt;
    if (dv) ++r.characterized[*dv];
    if ((dp && *dp != 0) || (dv && *dv != 0)) {
      if (dp != dv) ++r.membership_mismatches;
    }
    if (!dp) return;
    ++r.solutions[*dp];
    ++r.a11_histogram[*dp][x.a().at(0, 0)];
    for (std::size_t k = 0; k < us.size(); ++k) {
      const auto dy = target_exponent(sylow_pow(sylow_mul(x, us[k]), t.m), t, targets);
      if (dy && *dy == *dp) ++r.gm[k][*dp];
    }
  });
  return r;
}

PowerScan scan_powers(const PthPowerTarget& t, std::span<const SylowElem> us, std::uint64_t budget,
                      unsigned threads) {
  for (const auto& u : us)
    if (&u.spec() != t.spec || u.n() != t.n) throw DomainError("u is not in the target's group");
  const std::uint64_t total = group_size_checked(t.n, *t.spec, budget);
  return parallel_reduce(
      total, threads, PowerScan{},
      [&](std::uint64_t b, std::uint64_t e) { return scan_powers_range(t, us, b, e); },
      [](PowerScan& acc, PowerScan&& part) { acc.merge(std::move(part)); });
}

std::uint64_t gm_count_brute(const SylowElem& u, const PthPowerTarget& t, std::uint64_t budget,
                             unsigned threads) {
  const SylowElem us[] = {u};
  return scan_powers(t, us, budget, threads).gm[0][t.d];
}

// ---- FSZ reports ---------------------------------------------------------------------

std::string verdict_name(FszVerdict v, std::uint64_t m) {
  switch (v) {
    case FszVerdict::fsz:
      return "FSZ_" + std::to_string(m);
    case FszVerdict::non_fsz:
      return "non-FSZ_" + std::to_string(m);
    case FszVerdict::inconclusive:
      break;
  }
  return "inconclusive";
}

bool FszRow::equal() const {
  for (const auto& c : counts)
    if (c != counts.front()) return false;
  return true;
}

FszReport fsz_test_at(const PthPowerTarget& base, std::span<const LabeledElem> us, bool exhaustive,
                      GmMode mode, std::uint64_t budget, unsigned threads) {
  const FieldSpec& f = *base.spec;
  FszReport rep;
  rep.group = "P(Sp_" + std::to_string(2 * base.n) + "(" + std::to_string(f.q()) + "))";
  rep.m = base.m;
  rep.z = "g_" + std::to_string(base.j);
  rep.exhaustive = exhaustive;
  if (mode == GmMode::fast) {
    for (const auto& u : us) {
      FszRow row{u, {}};
      for (std::uint32_t d = 1; d < f.p(); ++d) row.counts.push_back(gm_count_fast(u.elem, base.with_d(d)));
      rep.rows.push_back(std::move(row));
    }
  } else {
    std::vector<SylowElem> elems;
    for (const auto& u : us) elems.push_back(u.elem);
    const PowerScan scan = scan_powers(base, elems, budget, threads);
    for (std::size_t k = 0; k < us.size(); ++k) {
      FszRow row{us[k], {}};
      for (std::uint32_t d = 1; d < f.p(); ++d) row.counts.emplace_back(std::to_string(scan.gm[k][d]));
      rep.rows.push_back(std::move(row));
    }
  }
  rep.verdict = exhaustive ? FszVerdict::fsz : FszVerdict::inconclusive;
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    if (!rep.rows[i].equal()) {
      rep.verdict = FszVerdict::non_fsz;
      rep.witness_row = i;
      break;
    }
  return rep;
}

// ---- beta values ---------------------------------------------------------------------

BetaValue beta_linear(const FieldElem& zparam, const PthPowerTarget& t) {
  const FieldSpec& f = *t.spec;
  if (&zparam.spec() != &f) throw DomainError("character parameter from a different field");
  if (zparam.is_zero()) throw DomainError("beta_linear needs zparam != 0");
  std::vector<std::uint64_t> mult(f.q(), 0);
  for_each_tuple(f, t.n - 1, [&](std::span<const Code> s) { ++mult[upsilon_of(f, s)]; });
  const mpz_class factor = free_factor(f, t.n);
  std::vector<mpz_class> counts(f.p(), 0);
  for (Code v = 1; v < f.q(); ++v) {
    if (mult[v] == 0) continue;
    const Code a11 = f.mul(t.d, f.inv(v));
    counts[f.trace(f.mul(zparam.code(), a11))] += mpz_class(std::to_string(mult[v])) * factor;
  }
  CycNum inner = CycNum::from_exponent_counts(f.p(), counts);
  CycNum value = norm_sq(inner);
  const bool rational = value.is_rational();
  return {std::move(value), rational, std::move(inner)};
}

BetaValue beta_from_histogram(const FieldElem& zparam, std::span<const std::uint64_t> a11_histogram) {
  const FieldSpec& f = zparam.spec();
  if (a11_histogram.size() != f.q()) throw DomainError("histogram must have q bins");
  std::vector<std::int64_t> counts(f.p(), 0);
  for (Code c = 0; c < f.q(); ++c)
    counts[f.trace(f.mul(zparam.code(), c))] += static_cast<std::int64_t>(a11_histogram[c]);
  CycNum inner = CycNum::from_exponent_counts(f.p(), counts);
  CycNum value = norm_sq(inner);
  const bool rational = value.is_rational();
  return {std::move(value), rational, std::move(inner)};
}

std::uint32_t KappaCharacter::exponent(const SylowElem& x) const {
  const FieldSpec& f = x.spec();
  if (coef.size() != x.n()) throw DomainError("character has the wrong length");
  Code s = f.mul(coef[0], x.a().at(0, 0));
  for (std::size_t i = 0; i + 1 < x.n(); ++i) s = f.add(s, f.mul(coef[i + 1], x.l().superdiag(i)));
  return f.trace(s);
}

std::vector<KappaCharacter> all_kappa_characters(std::size_t n, const FieldSpec& spec) {
  std::vector<KappaCharacter> out;
  for_each_tuple(spec, n, [&](std::span<const Code> s) { out.push_back({{s.begin(), s.end()}}); });
  return out;
}

std::vector<SylowElem> central_elements(std::size_t n, const FieldSpec& spec, std::uint64_t budget) {
  std::vector<SylowElem> out;
  enumerate_sylow(n, spec, budget, [&](std::uint64_t, const SylowElem& x) {
    if (is_central(x)) out.push_back(x);
  });
  return out;
}

CycNum beta_direct(const KappaCharacter& chi, std::size_t n, const FieldSpec& spec, std::uint64_t m,
                   const SylowElem& z, std::uint64_t budget) {
  std::vector<std::int64_t> counts(spec.p(), 0);
  enumerate_sylow(n, spec, budget, [&](std::uint64_t, const SylowElem& a) {
    if (sylow_pow(a, m) == z) ++counts[chi.exponent(a)];
  });
  return norm_sq(CycNum::from_exponent_counts(spec.p(), counts));
}

CycNum beta_via_counts(const KappaCharacter& chi, std::size_t n, const FieldSpec& spec, std::uint64_t m,
                       const SylowElem& z, std::uint64_t budget) {
  std::vector<SylowElem> roots, all;
  enumerate_sylow(n, spec, budget, [&](std::uint64_t, const SylowElem& a) {
    all.push_back(a);
    if (sylow_pow(a, m) == z) roots.push_back(a);
  });
  std::vector<std::int64_t> counts(spec.p(), 0);
  for (const auto& u : all) {
    std::int64_t g = 0;
    for (const auto& a : roots)
      if (sylow_pow(sylow_mul(a, u), m) == z) ++g;
    counts[chi.exponent(u)] += g;
  }
  return CycNum::from_exponent_counts(spec.p(), counts);
}

// ---- the combinatorial count -------------------------------------------------------------

std::uint64_t sec6_pair_count(const FieldSpec& f, std::uint32_t d, CountMode mode) {
  if (d == 0 || d >= f.p()) throw DomainError("d must lie in [1, p)");
  if (mode == CountMode::closed) {
    if (!f.minus_one_is_square()) throw DomainError("the closed count assumes -1 is a square in F_q");
    return f.legendre(d) == 1 ? (f.q() - 5) / 2 : (f.q() - 1) / 2;
  }
  const Code dinv = f.inv(d);
  std::uint64_t count = 0;
  for (Code a = 0; a < f.q(); ++a) {
    const Code a1 = f.add(a, 1);
    for (Code b = 0; b < f.q(); ++b) {
      const Code b1 = f.add(b, 1);
      const Code lhs = f.mul(a, f.mul(b, b));
      if (lhs == 0 || lhs != f.mul(a1, f.mul(b1, b1))) continue;
      if (f.legendre(f.mul(lhs, dinv)) == 1) ++count;
    }
  }
  return count;
}

WitnessSearch witness_order_search(const FszReport& report, const KappaCharacter& chi) {
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (row.equal()) continue;
    const std::uint64_t order = chi.exponent(row.u.elem) == 0 ? 1 : row.u.elem.spec().p();
    if (order != 1 && order != 2 && order != 3 && order != 4 && order != 6) return {i, false, order};
  }
  return {std::nullopt, true, 0};
}

// ---- small matrix groups ------------------------------------------------------------------

SmallFszResult fsz_brute_matrix_group(std::span<const MatFq> group, std::uint64_t m) {
  const std::size_t sz = group.size();
  std::map<std::vector<Code>, std::size_t> index;
  for (std::size_t i = 0; i < sz; ++i) index[{group[i].data().begin(), group[i].data().end()}] = i;
  if (index.size() != sz) throw DomainError("group elements must be distinct");
  auto idx = [&](const MatFq& x) {
    auto it = index.find({x.data().begin(), x.data().end()});
    if (it == index.end()) throw DomainError("element set is not closed under multiplication");
    return it->second;
  };
  std::vector<std::vector<std::size_t>> mul(sz, std::vector<std::size_t>(sz));
  for (std::size_t a = 0; a < sz; ++a)
    for (std::size_t b = 0; b < sz; ++b) mul[a][b] = idx(group[a] * group[b]);
  std::vector<std::size_t> power(sz);
  std::uint64_t expo = 1;
  for (std::size_t a = 0; a < sz; ++a) {
    power[a] = idx(group[a].pow(m));
    std::uint64_t o = 1;
    MatFq x = group[a];
    while (!x.is_identity()) {
      x = x * group[a];
      ++o;
    }
    expo = std::lcm(expo, o);
  }
  SmallFszResult res{true, 0};
  for (std::size_t z = 0; z < sz; ++z) {
    std::vector<std::uint64_t> count_z(sz, 0);
    for (std::size_t u = 0; u < sz; ++u)
      for (std::size_t a = 0; a < sz; ++a)
        if (power[a] == z && power[mul[a][u]] == z) ++count_z[u];
    for (std::uint64_t d = 2; d < expo; ++d) {
      if (std::gcd(d, static_cast<std::uint64_t>(sz)) != 1) continue;
      const std::size_t zd = idx(group[z].pow(d));
      for (std::size_t u = 0; u < sz; ++u) {
        std::uint64_t c = 0;
        for (std::size_t a = 0; a < sz; ++a)
          if (power[a] == zd && power[mul[a][u]] == zd) ++c;
        ++res.checked_pairs;
        if (c != count_z[u]) res.fsz = false;
      }
    }
  }
  return res;
}

}  // namespace fszlab
