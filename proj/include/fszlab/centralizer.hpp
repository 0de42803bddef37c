#pragma once

// The centralizer of g_j = I + sigma d E_{n,2n} in Sp_{2n}(q), 2n = p^j + 1.
//
// With c = n and e = 2n (1-based), M commutes with g_j exactly when column c
// of M vanishes off the diagonal, row e vanishes off the diagonal, and
// M_{c,c} = M_{e,e} = Lambda.  Deleting rows and columns c and e leaves a
// symplectic matrix of size p^j - 1, which is pi(M).
//
// ker(pi) = { I + e_c r^T + (J r) e_e^T + a e_c e_e^T }, r supported off
// {c, e}.  N = K - I squares to zero, so K^s = I + s N and K^p = I.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fszlab/fsz.hpp"
#include "fszlab/matrix.hpp"

namespace fszlab {

class CentElem {
 public:
  // Throws DomainError unless m is symplectic and commutes with t.
  CentElem(const PthPowerTarget& t, MatFq m);

  const MatFq& matrix() const noexcept { return m_; }
  std::size_t n() const noexcept { return m_.rows() / 2; }
  Code lambda() const noexcept { return m_.at(n() - 1, n() - 1); }
  CentElem operator*(const CentElem& o) const;

 private:
  PthPowerTarget t_;
  MatFq m_;
};

// M g = g M.  Throws DomainError if m is not symplectic.
bool commutes_with_target(const MatFq& m, const PthPowerTarget& t);
// The zero pattern of column c and row e with M_{c,c} = M_{e,e}.  Throws
// DomainError if m is not symplectic.
bool has_centralizer_block_form(const MatFq& m, const PthPowerTarget& t);
// Both predicates; throws std::logic_error if they disagree.
bool is_in_centralizer(const MatFq& m, const PthPowerTarget& t);

// (S, Lambda) with S of size p^j - 1.
std::pair<MatFq, Code> pi(const CentElem& m);
// S in the complementary block, Lambda at (c,c) and (e,e).  Throws DomainError
// unless S is symplectic of size p^j - 1 and Lambda = ±1.
CentElem pi_section(const PthPowerTarget& t, const MatFq& s, Code lambda);

// r has length p^j - 1, indexed like the rows of pi's image.
CentElem kernel_element(const PthPowerTarget& t, std::span<const Code> r, Code a);
// Checks w = J' r (J' the form of size p^j - 1) before building
// I + e_c r^T + w e_e^T + a e_c e_e^T.
CentElem kernel_element_from_parts(const PthPowerTarget& t, std::span<const Code> r, std::span<const Code> w,
                                   Code a);
// pi(m) == (I, 1).
bool in_kernel(const CentElem& m);
// I + s (K - I).
MatFq kernel_power_closed(const CentElem& k, std::uint64_t s);

// A product of `word_length` random transvections I + c v v^T J of size 2k.
MatFq random_symplectic(const FieldSpec& spec, std::size_t k, std::uint64_t seed, unsigned word_length = 12);
// section(random S, random Lambda) times a random kernel element.
CentElem random_centralizer_elem(const PthPowerTarget& t, std::uint64_t seed);

}  // namespace fszlab
