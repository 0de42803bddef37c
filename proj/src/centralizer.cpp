#include "fszlab/centralizer.hpp"

#include <random>

#include "fszlab/error.hpp"

namespace fszlab {

namespace {

// Indices of pi's image, in order: 0..n-2 then n..2n-2.
std::vector<std::size_t> image_indices(std::size_t n) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i + 1 < n; ++i) idx.push_back(i);
  for (std::size_t i = n; i + 1 < 2 * n; ++i) idx.push_back(i);
  return idx;
}

void require_symplectic(const MatFq& m, const PthPowerTarget& t) {
  if (&m.spec() != t.spec || m.rows() != 2 * t.n || m.cols() != 2 * t.n)
    throw DomainError("matrix is not in Sp_{2n}(q) for this target");
  if (!is_symplectic(m)) throw DomainError("matrix is not symplectic");
}

}  // namespace

CentElem::CentElem(const PthPowerTarget& t, MatFq m) : t_(t), m_(std::move(m)) {
  if (!is_in_centralizer(m_, t_)) throw DomainError("matrix does not commute with g_j");
}

CentElem CentElem::operator*(const CentElem& o) const { return CentElem(t_, m_ * o.m_); }

bool commutes_with_target(const MatFq& m, const PthPowerTarget& t) {
  require_symplectic(m, t);
  const MatFq g = t.matrix();
  return m * g == g * m;
}

bool has_centralizer_block_form(const MatFq& m, const PthPowerTarget& t) {
  require_symplectic(m, t);
  const std::size_t c = t.n - 1, e = 2 * t.n - 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i != c && m.at(i, c) != 0) return false;
    if (i != e && m.at(e, i) != 0) return false;
  }
  return m.at(c, c) == m.at(e, e);
}

bool is_in_centralizer(const MatFq& m, const PthPowerTarget& t) {
  const bool a = commutes_with_target(m, t);
  if (a != has_centralizer_block_form(m, t)) throw std::logic_error("centralizer predicates disagree");
  return a;
}

std::pair<MatFq, Code> pi(const CentElem& m) {
  const auto idx = image_indices(m.n());
  MatFq s(m.matrix().spec(), idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s.at(i, j) = m.matrix().at(idx[i], idx[j]);
  return {std::move(s), m.lambda()};
}

CentElem pi_section(const PthPowerTarget& t, const MatFq& s, Code lambda) {
  const FieldSpec& f = *t.spec;
  if (&s.spec() != &f || s.rows() != 2 * t.n - 2 || !s.is_square())
    throw DomainError("S must be square of size p^j - 1 over the target field");
  if (!is_symplectic(s)) throw DomainError("S is not symplectic");
  if (lambda != 1 && lambda != f.neg(1)) throw DomainError("Lambda must be 1 or -1");
  const auto idx = image_indices(t.n);
  MatFq m(f, 2 * t.n, 2 * t.n);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m.at(idx[i], idx[j]) = s.at(i, j);
  m.at(t.n - 1, t.n - 1) = lambda;
  m.at(2 * t.n - 1, 2 * t.n - 1) = lambda;
  return CentElem(t, std::move(m));
}

CentElem kernel_element(const PthPowerTarget& t, std::span<const Code> r, Code a) {
  const std::size_t k = t.n - 1;
  if (r.size() != 2 * k) throw DomainError("r must have length p^j - 1");
  // w = J' r with J' = [[0, I], [-I, 0]]
  std::vector<Code> w(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = r[k + i];
    w[k + i] = t.spec->neg(r[i]);
  }
  return kernel_element_from_parts(t, r, w, a);
}

CentElem kernel_element_from_parts(const PthPowerTarget& t, std::span<const Code> r, std::span<const Code> w,
                                   Code a) {
  const FieldSpec& f = *t.spec;
  const std::size_t k = t.n - 1;
  if (r.size() != 2 * k || w.size() != 2 * k) throw DomainError("r and w must have length p^j - 1");
  for (std::size_t i = 0; i < k; ++i)
    if (w[i] != r[k + i] || w[k + i] != f.neg(r[i])) throw DomainError("kernel blocks violate w = J' r");
  const auto idx = image_indices(t.n);
  const std::size_t c = t.n - 1, e = 2 * t.n - 1;
  MatFq m = MatFq::identity(f, 2 * t.n);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    m.at(c, idx[i]) = r[i];
    m.at(idx[i], e) = w[i];
  }
  m.at(c, e) = a;
  return CentElem(t, std::move(m));
}

bool in_kernel(const CentElem& m) {
  const auto [s, lambda] = pi(m);
  return lambda == 1 && s.is_identity();
}

MatFq kernel_power_closed(const CentElem& k, std::uint64_t s) {
  if (!in_kernel(k)) throw DomainError("not a kernel element");
  const MatFq& m = k.matrix();
  const MatFq id = MatFq::identity(m.spec(), m.rows());
  return id + (m - id).scaled(m.spec().from_int(static_cast<std::int64_t>(s % m.spec().p())));
}

MatFq random_symplectic(const FieldSpec& spec, std::size_t k, std::uint64_t seed, unsigned word_length) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Code> pick(0, spec.q() - 1);
  const MatFq j = symplectic_form(spec, k);
  MatFq out = MatFq::identity(spec, 2 * k);
  for (unsigned w = 0; w < word_length; ++w) {
    MatFq v(spec, 2 * k, 1);
    for (std::size_t i = 0; i < 2 * k; ++i) v.at(i, 0) = pick(rng);
    out = out * (MatFq::identity(spec, 2 * k) + (v * v.transpose() * j).scaled(pick(rng)));
  }
  return out;
}

CentElem random_centralizer_elem(const PthPowerTarget& t, std::uint64_t seed) {
  const FieldSpec& f = *t.spec;
  std::mt19937_64 rng(seed);
  const MatFq s = random_symplectic(f, t.n - 1, rng());
  const Code lambda = (rng() & 1) ? 1 : f.neg(1);
  std::uniform_int_distribution<Code> pick(0, f.q() - 1);
  std::vector<Code> r(2 * t.n - 2);
  for (auto& c : r) c = pick(rng);
  const Code a = pick(rng);
  return pi_section(t, s, lambda) * kernel_element(t, r, a);
}

}  // namespace fszlab
