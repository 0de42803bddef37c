#pragma once

// p^j-th roots of g_j^d in P(Sp_{2n}(q)) with 2n = p^j + 1, the counts
// |G_m(u, g)| = |{a : a^m = (au)^m = g}|, and the beta values of linear
// characters.
//
// With 2n = p^j + 1 every X = (L, A) satisfies
//   X^{p^j} = I + sigma_j A_{1,1} Upsilon(L, j) E_{n,2n},
// so X^{p^j} = g_j^d exactly when A_{1,1} Upsilon(L, j) = d.  The fast paths
// below count through this characterization; the brute paths compute powers.

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fszlab/cyclotomic.hpp"
#include "fszlab/residue.hpp"
#include "fszlab/sylow.hpp"

namespace fszlab {

struct PthPowerTarget {
  const FieldSpec* spec;
  unsigned j;
  std::uint32_t d;      // in [1, p)
  std::size_t n;        // (p^j + 1) / 2
  int sigma;            // (-1)^{j(p-1)/2}
  std::uint64_t m;      // p^j

  std::uint32_t p() const noexcept { return spec->p(); }
  // g_j^d = I + sigma d E_{n,2n}, as an element of P.
  SylowElem element() const;
  MatFq matrix() const { return element().embed(); }
  PthPowerTarget with_d(std::uint32_t d) const;
};

// Throws DomainError unless d is a unit mod p and p^j + 1 is small enough to enumerate over.
PthPowerTarget make_target(const FieldSpec& spec, unsigned j, std::uint32_t d);

// A_{1,1} Upsilon(L, j) == d.
bool satisfies_characterization(const PthPowerTarget& t, const SylowElem& x);

// X with X^{p^j} = g_j^d and A_{1,1} = x: superdiagonal (r, 1, ..., 1) with
// r^2 = d / x, all other L entries and free A entries zero.
SylowElem solve_pth_power(const PthPowerTarget& t, const FieldElem& x);

// Number of solutions, by counting superdiagonals with Upsilon != 0.
mpz_class solution_count(const PthPowerTarget& t);

// The corrected witness: L = I + E_{1,2}, A = E_{1,1} - E_{1,2}.
SylowElem witness_u(const FieldSpec& spec, std::size_t n);

// |G_{p^j}(u, g_j^d)| from the characterization of a and of au.  au has
// A_{1,1} + B_{1,1} in its corner and superdiagonal l + m.
mpz_class gm_count_fast(const SylowElem& u, const PthPowerTarget& t);

// One pass over all of P computing a^m for every a.
struct PowerScan {
  std::uint64_t elements = 0;
  // solutions[d]: a^m = g^d (d = 0 is the identity), by comparison with g^d.
  std::vector<std::uint64_t> solutions;
  // characterized[d]: A_{1,1} Upsilon = d among prime-subfield values.
  std::vector<std::uint64_t> characterized;
  // a^m differs from I + sigma A_{1,1} Upsilon E_{n,2n}.
  std::uint64_t power_formula_failures = 0;
  // a with (a^m = g^d) != (A_{1,1} Upsilon = d) for some d in [1, p).
  std::uint64_t membership_mismatches = 0;
  // a11_histogram[d][c]: solutions of a^m = g^d with A_{1,1} = c.
  std::vector<std::vector<std::uint64_t>> a11_histogram;
  // gm[k][d] = |{a : a^m = (a u_k)^m = g^d}|.
  std::vector<std::vector<std::uint64_t>> gm;

  void merge(PowerScan&& o);
};

// Throws BudgetExceeded when q^{n^2} > budget.
PowerScan scan_powers(const PthPowerTarget& t, std::span<const SylowElem> us, std::uint64_t budget,
                      unsigned threads);
PowerScan scan_powers_range(const PthPowerTarget& t, std::span<const SylowElem> us, std::uint64_t begin,
                            std::uint64_t end);

// |G_m(u, g^d)| by brute force over P.
std::uint64_t gm_count_brute(const SylowElem& u, const PthPowerTarget& t, std::uint64_t budget,
                             unsigned threads);

// ---- FSZ reports ------------------------------------------------------------

enum class GmMode { fast, brute };
enum class FszVerdict { fsz, non_fsz, inconclusive };
std::string verdict_name(FszVerdict v, std::uint64_t m);

struct LabeledElem {
  std::string label;
  SylowElem elem;
};

struct FszRow {
  LabeledElem u;
  std::vector<mpz_class> counts;  // counts[d - 1], d in [1, p)
  bool equal() const;
};

struct FszReport {
  std::string group;
  std::uint64_t m;
  std::string z;
  std::vector<FszRow> rows;
  bool exhaustive;  // rows cover every u in P
  FszVerdict verdict;
  std::optional<std::size_t> witness_row;
};

// Counts at g_j^d for every d in [1, p).  Unequal counts in any row give
// non-FSZ; equal counts give FSZ only when `exhaustive`, else inconclusive.
FszReport fsz_test_at(const PthPowerTarget& base, std::span<const LabeledElem> us, bool exhaustive,
                      GmMode mode, std::uint64_t budget, unsigned threads);

// ---- beta values --------------------------------------------------------------

struct BetaValue {
  CycNum value;
  bool rational;
  CycNum inner;  // the sum before taking norm_sq
};

// norm_sq(sum over solutions of xi_lambda), grouped over the achieved A_{1,1}
// values; the multiplicity of each Upsilon value is counted.
BetaValue beta_linear(const FieldElem& zparam, const PthPowerTarget& t);

// The same sum from the A_{1,1} histogram of a brute-force scan.
BetaValue beta_from_histogram(const FieldElem& zparam, std::span<const std::uint64_t> a11_histogram);

// A linear character of P through kappa: X -> zeta^{tr(<coef, kappa(X)>)}.
struct KappaCharacter {
  std::vector<Code> coef;  // length n
  std::uint32_t exponent(const SylowElem& x) const;
};

// Every kappa character of P(Sp_{2n}(q)): q^n of them.
std::vector<KappaCharacter> all_kappa_characters(std::size_t n, const FieldSpec& spec);

// All central elements of P by enumeration.
std::vector<SylowElem> central_elements(std::size_t n, const FieldSpec& spec, std::uint64_t budget);

// beta_m(chi, z) = norm_sq(sum_{a^m = z} chi(a)) over all of P.
CycNum beta_direct(const KappaCharacter& chi, std::size_t n, const FieldSpec& spec, std::uint64_t m,
                   const SylowElem& z, std::uint64_t budget);
// sum_u |G_m(u, z)| chi(u), every count by brute force.
CycNum beta_via_counts(const KappaCharacter& chi, std::size_t n, const FieldSpec& spec, std::uint64_t m,
                       const SylowElem& z, std::uint64_t budget);

// ---- the combinatorial count ---------------------------------------------------

// Pairs (a, b) in F_q^2 with a b^2 = (a+1)(b+1)^2 != 0 and a b^2 / d a nonzero
// square.  Closed mode needs -1 to be a square and returns (q-5)/2 for square
// d, (q-1)/2 otherwise.
std::uint64_t sec6_pair_count(const FieldSpec& spec, std::uint32_t d, CountMode mode);

struct WitnessSearch {
  std::optional<std::size_t> row;  // into report.rows
  bool exhausted;                  // every searched row failed
  std::uint64_t character_order = 0;
};

// A row with unequal counts whose u has o(chi(u)) outside {1, 2, 3, 4, 6}.
WitnessSearch witness_order_search(const FszReport& report, const KappaCharacter& chi);

// ---- small groups given by matrices -----------------------------------------

// FSZ_m of a finite matrix group by brute force: for every z and u, compares
// |G_m(u, z)| with |G_m(u, z^d)| for every d in [2, exp] coprime to the order.
struct SmallFszResult {
  bool fsz;
  std::uint64_t checked_pairs;
};
SmallFszResult fsz_brute_matrix_group(std::span<const MatFq> group, std::uint64_t m);

}  // namespace fszlab
