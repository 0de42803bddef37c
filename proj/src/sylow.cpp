#include "fszlab/sylow.hpp"

#include "fszlab/error.hpp"
#include "fszlab/numtheory.hpp"

namespace fszlab {

namespace {

// Fills the strictly-upper entries of a from its lower triangle so that AL is symmetric.
void solve_dependent(const UniTriMat& l, MatFq& a) {
  const FieldSpec& f = l.spec();
  const std::size_t n = l.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // (AL)_{j,i} = A_{j,i} + sum_{k<i} A_{j,k} L_{k,i}
      Code target = a.at(j, i);
      for (std::size_t k = 0; k < i; ++k) target = f.add(target, f.mul(a.at(j, k), l.entry(k, i)));
      // (AL)_{i,j} = A_{i,j} + sum_{k<j} A_{i,k} L_{k,j}
      Code rest = 0;
      for (std::size_t k = 0; k < j; ++k) rest = f.add(rest, f.mul(a.at(i, k), l.entry(k, j)));
      a.at(i, j) = f.sub(target, rest);
    }
  }
}

bool is_symmetric(const MatFq& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m.at(i, j) != m.at(j, i)) return false;
  return true;
}

void require_same_group(const SylowElem& x, const SylowElem& y) {
  if (&x.spec() != &y.spec() || x.n() != y.n()) throw DomainError("Sylow elements from different groups");
}

// (sum_{m<j} (L^m)^T A L^m, L^j)
std::pair<MatFq, MatFq> conjugate_sum(const MatFq& l, const MatFq& a, std::uint64_t j) {
  const FieldSpec& f = l.spec();
  MatFq s(f, l.rows(), l.cols());
  MatFq lc = MatFq::identity(f, l.rows());
  if (j == 0) return {s, lc};
  int top = 63;
  while (!((j >> top) & 1)) --top;
  // c = 1
  s = a;
  lc = l;
  for (int bit = top - 1; bit >= 0; --bit) {
    s = s + lc.transpose() * s * lc;
    lc = lc * lc;
    if ((j >> bit) & 1) {
      s = s + lc.transpose() * a * lc;
      lc = lc * l;
    }
  }
  return {s, lc};
}

}  // namespace

SylowElem SylowElem::identity(const FieldSpec& spec, std::size_t n) {
  return SylowElem(UniTriMat::identity(spec, n), MatFq(spec, n, n));
}

SylowElem SylowElem::from_free(UniTriMat l, std::span<const Code> lower) {
  const std::size_t n = l.n();
  if (lower.size() != n * (n + 1) / 2) throw DomainError("wrong number of free A entries");
  MatFq a(l.spec(), n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      if (lower[k] >= l.spec().q()) throw DomainError("element code out of range");
      a.at(i, j) = lower[k++];
    }
  solve_dependent(l, a);
  return SylowElem(std::move(l), std::move(a));
}

SylowElem SylowElem::from_blocks(UniTriMat l, MatFq a) {
  if (&a.spec() != &l.spec() || a.rows() != l.n() || a.cols() != l.n())
    throw DomainError("A block must be n x n over the same field as L");
  if (!is_symmetric(a * l.matrix())) throw DomainError("AL is not symmetric; not an element of P");
  return SylowElem(std::move(l), std::move(a));
}

SylowElem SylowElem::from_matrix(const MatFq& m) {
  if (!m.is_square() || m.rows() % 2 != 0) throw DomainError("Sylow element must be 2n x 2n");
  const std::size_t n = m.rows() / 2;
  UniTriMat l = UniTriMat::from_matrix(m.block(0, 0, n, n).transpose());
  if (!m.block(n, 0, n, n).is_zero()) throw DomainError("lower-left block must vanish");
  if (!(m.block(n, n, n, n) == l.inverse().matrix())) throw DomainError("lower-right block must be L^{-1}");
  return from_blocks(std::move(l), m.block(0, n, n, n));
}

std::vector<Code> SylowElem::free_entries() const {
  std::vector<Code> out;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out.push_back(a_.at(i, j));
  return out;
}

MatFq SylowElem::embed() const {
  const std::size_t sz = n();
  MatFq m(spec(), 2 * sz, 2 * sz);
  m.set_block(0, 0, l_.matrix().transpose());
  m.set_block(0, sz, a_);
  m.set_block(sz, sz, l_.inverse().matrix());
  return m;
}

SylowElem sylow_mul(const SylowElem& x, const SylowElem& y) {
  require_same_group(x, y);
  UniTriMat l = y.l() * x.l();
  MatFq a = x.l().matrix().transpose() * y.a() + x.a() * y.l().inverse().matrix();
  return SylowElem::from_blocks(std::move(l), std::move(a));
}

SylowElem sylow_inv(const SylowElem& x) {
  UniTriMat linv = x.l().inverse();
  MatFq a = -(linv.matrix().transpose() * x.a() * x.l().matrix());
  return SylowElem::from_blocks(std::move(linv), std::move(a));
}

SylowElem sylow_pow(const SylowElem& x, std::uint64_t j) {
  if (j == 0) return SylowElem::identity(x.spec(), x.n());
  auto [s, lj] = conjugate_sum(x.l().matrix(), x.a(), j);
  UniTriMat l_pow = UniTriMat::from_matrix(std::move(lj));
  MatFq a = s * x.l().matrix() * l_pow.inverse().matrix();
  return SylowElem::from_blocks(std::move(l_pow), std::move(a));
}

SylowElem sylow_pow_iterated(const SylowElem& x, std::uint64_t j) {
  SylowElem r = SylowElem::identity(x.spec(), x.n());
  for (std::uint64_t i = 0; i < j; ++i) r = sylow_mul(r, x);
  return r;
}

std::uint64_t sylow_order(const SylowElem& x) {
  std::uint64_t ord = 1;
  SylowElem cur = x;
  while (!cur.is_identity()) {
    cur = sylow_pow(cur, x.spec().p());
    ord *= x.spec().p();
  }
  return ord;
}

std::vector<FieldElem> kappa(const SylowElem& x) {
  std::vector<FieldElem> out;
  out.emplace_back(x.spec(), x.a().at(0, 0));
  for (std::size_t i = 0; i + 1 < x.n(); ++i) out.emplace_back(x.spec(), x.l().superdiag(i));
  return out;
}

std::uint32_t xi_lambda_exponent(const FieldElem& zparam, const SylowElem& x) {
  if (&zparam.spec() != &x.spec()) throw DomainError("character parameter from a different field");
  if (zparam.is_zero()) throw DomainError("xi_lambda needs a nontrivial character (zparam != 0)");
  return x.spec().trace(x.spec().mul(zparam.code(), x.a().at(0, 0)));
}

CycNum xi_lambda(const FieldElem& zparam, const SylowElem& x) {
  return CycNum::zeta_pow(x.spec().p(), xi_lambda_exponent(zparam, x));
}

MatFq y_map(const UniTriMat& l, unsigned k, const MatFq& a) {
  const auto pk = checked_pow(l.spec().p(), k);
  if (!pk) throw DomainError("p^k overflows");
  return conjugate_sum(l.matrix(), a, *pk).first;
}

FieldElem upsilon(const UniTriMat& l, unsigned k) {
  const FieldSpec& f = l.spec();
  const auto pk = checked_pow(f.p(), k);
  if (k < 1 || !pk || *pk > 2 * l.n() - 1) throw DomainError("upsilon needs 1 <= k and p^k <= 2n-1");
  Code prod = 1;
  for (std::size_t i = 0; i < (*pk - 1) / 2; ++i) prod = f.mul(prod, f.mul(l.superdiag(i), l.superdiag(i)));
  return {f, prod};
}

bool y_map_corner_delta_check(const UniTriMat& l, unsigned y, std::size_t s, std::size_t t) {
  const FieldSpec& f = l.spec();
  const std::size_t n = l.n();
  const unsigned r = ceil_log(f.p(), 2 * n);
  if (r < 2) throw DomainError("needs ceil(log_p 2n) >= 2");
  if (y < 1 || y >= r) throw DomainError("needs 1 <= y < ceil(log_p 2n)");
  if (s < 1 || t < 1 || s > n || t > n) throw DomainError("s, t must lie in [1, n]");
  const std::uint64_t py = *checked_pow(f.p(), y);
  const std::size_t corner = (py + 1) / 2;  // 1-based
  const MatFq image = y_map(l, y, MatFq::elementary(f, n, n, s - 1, t - 1));
  Code expected_corner = 0;
  if (s == 1 && t == 1) {
    expected_corner = upsilon(l, y).code();
    if (sign_pow(static_cast<std::uint64_t>(y) * (f.p() - 1) / 2) < 0) expected_corner = f.neg(expected_corner);
  }
  for (std::size_t a = 1; a <= corner; ++a)
    for (std::size_t b = 1; b <= corner; ++b) {
      const Code expected = (a == corner && b == corner) ? expected_corner : 0;
      if (image.at(a - 1, b - 1) != expected) return false;
    }
  return true;
}

std::vector<SylowElem> sylow_generators(std::size_t n, const FieldSpec& spec) {
  std::vector<Code> basis;
  for (Code c = 1, k = 0; k < spec.n(); ++k, c *= spec.p()) basis.push_back(c);
  std::vector<SylowElem> gens;
  for (Code c : basis) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        MatFq l = MatFq::identity(spec, n);
        l.at(i, j) = c;
        gens.push_back(SylowElem::from_blocks(UniTriMat::from_matrix(std::move(l)), MatFq(spec, n, n)));
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        MatFq a(spec, n, n);
        a.at(i, j) = c;
        a.at(j, i) = c;
        gens.push_back(SylowElem::from_blocks(UniTriMat::identity(spec, n), std::move(a)));
      }
  }
  return gens;
}

bool is_central(const SylowElem& x) {
  for (const auto& g : sylow_generators(x.n(), x.spec()))
    if (!(sylow_mul(x, g) == sylow_mul(g, x))) return false;
  return true;
}

SylowElem sylow_embed_small(const SylowElem& x, std::size_t n_target) {
  const std::size_t n = x.n();
  if (n_target < n) throw DomainError("embedding cannot shrink the dimension");
  MatFq l = MatFq::identity(x.spec(), n_target);
  l.set_block(0, 0, x.l().matrix());
  MatFq a(x.spec(), n_target, n_target);
  a.set_block(0, 0, x.a());
  return SylowElem::from_blocks(UniTriMat::from_matrix(std::move(l)), std::move(a));
}

mpz_class sylow_order_of_group(std::size_t n, const FieldSpec& spec) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), spec.q(), n * n);
  return r;
}

std::uint64_t sylow_check_budget(std::size_t n, const FieldSpec& spec, std::uint64_t budget) {
  const mpz_class total = sylow_order_of_group(n, spec);
  if (total > mpz_class(std::to_string(budget))) {
    throw BudgetExceeded("|P| for Sp_" + std::to_string(2 * n) + "(" + std::to_string(spec.q()) + ")",
                         std::to_string(spec.q()) + "^" + std::to_string(n * n), total.get_str());
  }
  return std::stoull(total.get_str());
}

SylowElem sylow_from_index(std::size_t n, const FieldSpec& spec, std::uint64_t index) {
  const std::size_t nl = n * (n - 1) / 2, na = n * (n + 1) / 2;
  std::vector<Code> upper(nl), lower(na);
  const std::uint64_t q = spec.q();
  for (std::size_t i = na; i-- > 0;) {
    lower[i] = static_cast<Code>(index % q);
    index /= q;
  }
  for (std::size_t i = nl; i-- > 0;) {
    upper[i] = static_cast<Code>(index % q);
    index /= q;
  }
  if (index != 0) throw DomainError("Sylow element index out of range");
  return SylowElem::from_free(UniTriMat::from_upper(spec, n, upper), lower);
}

std::uint64_t sylow_index(const SylowElem& x) {
  std::uint64_t idx = 0;
  const std::uint64_t q = x.spec().q();
  for (auto c : x.l().upper_entries()) idx = idx * q + c;
  for (auto c : x.free_entries()) idx = idx * q + c;
  return idx;
}

void enumerate_sylow_range(std::size_t n, const FieldSpec& spec, std::uint64_t begin, std::uint64_t end,
                           const std::function<void(std::uint64_t, const SylowElem&)>& fn) {
  for (std::uint64_t i = begin; i < end; ++i) fn(i, sylow_from_index(n, spec, i));
}

void enumerate_sylow(std::size_t n, const FieldSpec& spec, std::uint64_t budget,
                     const std::function<void(std::uint64_t, const SylowElem&)>& fn) {
  const std::uint64_t total = sylow_check_budget(n, spec, budget);
  enumerate_sylow_range(n, spec, 0, total, fn);
}

}  // namespace fszlab
