#pragma once

// The Sylow p-subgroup P of Sp_{2n}(q): matrices [[L^T, A], [0, L^{-1}]]
// with L upper unitriangular and AL symmetric.  Elements are stored as the
// pair (L, A); the 2n x 2n matrix is built only on request.
//
// A is parametrized by its lower triangle (diagonal included).  Given L,
// each strictly-upper entry A_{i,j} is solved from (AL)_{i,j} = (AL)_{j,i}
// row by row, left to right, so every choice of lower triangle gives exactly
// one element and |P| = q^{n(n-1)/2} * q^{n(n+1)/2} = q^{n^2}.

#include <cstdint>
#include <functional>
#include <gmpxx.h>
#include <span>
#include <vector>

#include "fszlab/cyclotomic.hpp"
#include "fszlab/matrix.hpp"

namespace fszlab {

class SylowElem {
 public:
  static SylowElem identity(const FieldSpec& spec, std::size_t n);
  // lower: A_{i,j} for i >= j in row-major order (A_{0,0}, A_{1,0}, A_{1,1}, ...).
  static SylowElem from_free(UniTriMat l, std::span<const Code> lower);
  // Throws DomainError unless AL is symmetric.
  static SylowElem from_blocks(UniTriMat l, MatFq a);
  // Reads the blocks of a 2n x 2n matrix; throws unless it lies in P.
  static SylowElem from_matrix(const MatFq& m);

  const FieldSpec& spec() const noexcept { return l_.spec(); }
  std::size_t n() const noexcept { return l_.n(); }
  const UniTriMat& l() const noexcept { return l_; }
  const MatFq& a() const noexcept { return a_; }
  std::vector<Code> free_entries() const;

  MatFq embed() const;
  bool is_identity() const noexcept { return l_.is_identity() && a_.is_zero(); }
  bool operator==(const SylowElem& o) const noexcept { return l_ == o.l_ && a_ == o.a_; }

 private:
  SylowElem(UniTriMat l, MatFq a) : l_(std::move(l)), a_(std::move(a)) {}
  UniTriMat l_;
  MatFq a_;
};

// Block product: (L, A)(M, B) = (ML, L^T B + A M^{-1}).
SylowElem sylow_mul(const SylowElem& x, const SylowElem& y);
SylowElem sylow_inv(const SylowElem& x);
// X^j via M^j = [[(L^j)^T, S_j L^{1-j}], [0, L^{-j}]] with
// S_j = sum_{m<j} (L^m)^T A L^m, evaluated by doubling.
SylowElem sylow_pow(const SylowElem& x, std::uint64_t j);
// X^j by j-1 block multiplications.
SylowElem sylow_pow_iterated(const SylowElem& x, std::uint64_t j);
// Order via repeated p-th powers.
std::uint64_t sylow_order(const SylowElem& x);

// (A_{0,0}, l_{0,1}, l_{1,2}, ..., l_{n-2,n-1}).
std::vector<FieldElem> kappa(const SylowElem& x);

// Exponent k with xi_lambda(X) = zeta^k, where lambda(x) = e_q(zparam x).
std::uint32_t xi_lambda_exponent(const FieldElem& zparam, const SylowElem& x);
CycNum xi_lambda(const FieldElem& zparam, const SylowElem& x);

// Y_{L,k}(A) = sum_{m=0}^{p^k-1} (L^m)^T A L^m.
MatFq y_map(const UniTriMat& l, unsigned k, const MatFq& a);

// prod_{i=1}^{(p^k-1)/2} l_{i,i+1}^2 (1-based superdiagonal); needs p^k <= 2n-1.
FieldElem upsilon(const UniTriMat& l, unsigned k);

// Checks every entry (a,b), 1 <= a,b <= (p^y+1)/2, of Y_{L,y}(E_{s,t}) against
// (-1)^{y(p-1)/2} [a=b=(p^y+1)/2] [s=t=1] Upsilon(L,y).  s, t are 1-based.
bool y_map_corner_delta_check(const UniTriMat& l, unsigned y, std::size_t s, std::size_t t);

// Generators of P: (I + c E_{i,j}, 0) for i < j and (I, c (E_{i,j} + E_{j,i})) for
// i <= j, with c running over the F_p-basis 1, x, ..., x^{n-1} of F_q.
std::vector<SylowElem> sylow_generators(std::size_t n, const FieldSpec& spec);
// Commutes with every generator.
bool is_central(const SylowElem& x);

// Pads L with an identity block and A with zeros.
SylowElem sylow_embed_small(const SylowElem& x, std::size_t n_target);

// ---- enumeration ----------------------------------------------------------

// Exact |P| = q^{n^2}, as a big integer.
mpz_class sylow_order_of_group(std::size_t n, const FieldSpec& spec);

// Throws BudgetExceeded unless q^{n^2} <= budget; returns q^{n^2}.
std::uint64_t sylow_check_budget(std::size_t n, const FieldSpec& spec, std::uint64_t budget);

// Element with the given index in enumeration order: the index is the
// lexicographic position of (upper entries of L, lower triangle of A), each
// read most-significant first.
SylowElem sylow_from_index(std::size_t n, const FieldSpec& spec, std::uint64_t index);
std::uint64_t sylow_index(const SylowElem& x);

// Visits indices [begin, end) in order.
void enumerate_sylow_range(std::size_t n, const FieldSpec& spec, std::uint64_t begin, std::uint64_t end,
                           const std::function<void(std::uint64_t, const SylowElem&)>& fn);

// Visits all q^{n^2} elements after checking the budget.
void enumerate_sylow(std::size_t n, const FieldSpec& spec, std::uint64_t budget,
                     const std::function<void(std::uint64_t, const SylowElem&)>& fn);

}  // namespace fszlab
