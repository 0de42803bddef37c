#include "fszlab/matrix.hpp"

#include <sstream>

#include "fszlab/error.hpp"
#include "fszlab/numtheory.hpp"

namespace fszlab {

MatFq::MatFq(const FieldSpec& spec, std::size_t rows, std::size_t cols)
    : spec_(&spec), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

MatFq MatFq::identity(const FieldSpec& spec, std::size_t n) {
  MatFq m(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatFq MatFq::elementary(const FieldSpec& spec, std::size_t rows, std::size_t cols, std::size_t i,
                        std::size_t j) {
  if (i >= rows || j >= cols) throw DomainError("elementary matrix index out of range");
  MatFq m(spec, rows, cols);
  m.at(i, j) = 1;
  return m;
}

MatFq MatFq::from_rows(const FieldSpec& spec, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  MatFq m(spec, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (spec.n() == 1) {
        m.at(i, j) = spec.from_int(rows[i][j]);
      } else {
        if (rows[i][j] < 0 || rows[i][j] >= spec.q()) throw DomainError("element code out of range");
        m.at(i, j) = static_cast<Code>(rows[i][j]);
      }
    }
  }
  return m;
}

void MatFq::check_same_field(const MatFq& o) const {
  if (spec_ != o.spec_) throw DomainError("matrices over different fields");
}

MatFq MatFq::operator*(const MatFq& o) const {
  check_same_field(o);
  if (cols_ != o.rows_) throw DomainError("dimension mismatch in matrix product");
  MatFq r(*spec_, rows_, o.cols_);
  const FieldSpec& f = *spec_;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Code a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Code b = o.at(k, j);
        if (b == 0) continue;
        r.at(i, j) = f.add(r.at(i, j), f.mul(a, b));
      }
    }
  }
  return r;
}

MatFq MatFq::operator+(const MatFq& o) const {
  check_same_field(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("dimension mismatch in matrix sum");
  MatFq r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = spec_->add(data_[i], o.data_[i]);
  return r;
}

MatFq MatFq::operator-(const MatFq& o) const {
  check_same_field(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("dimension mismatch in matrix difference");
  MatFq r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = spec_->sub(data_[i], o.data_[i]);
  return r;
}

MatFq MatFq::operator-() const {
  MatFq r(*this);
  for (auto& v : r.data_) v = spec_->neg(v);
  return r;
}

MatFq MatFq::scaled(Code s) const {
  MatFq r(*this);
  for (auto& v : r.data_) v = spec_->mul(v, s);
  return r;
}

MatFq MatFq::transpose() const {
  MatFq r(*spec_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

MatFq MatFq::pow(std::uint64_t e) const {
  if (!is_square()) throw DomainError("power of a non-square matrix");
  MatFq result = identity(*spec_, rows_);
  MatFq base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MatFq MatFq::inverse() const {
  if (!is_square()) throw DomainError("inverse of a non-square matrix");
  const FieldSpec& f = *spec_;
  const std::size_t n = rows_;
  MatFq a(*this);
  MatFq inv = identity(f, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a.at(piv, col) == 0) ++piv;
    if (piv == n) throw DomainError("matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    const Code s = f.inv(a.at(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      a.at(col, j) = f.mul(a.at(col, j), s);
      inv.at(col, j) = f.mul(inv.at(col, j), s);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a.at(i, col) == 0) continue;
      const Code c = f.neg(a.at(i, col));
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) = f.add(a.at(i, j), f.mul(c, a.at(col, j)));
        inv.at(i, j) = f.add(inv.at(i, j), f.mul(c, inv.at(col, j)));
      }
    }
  }
  return inv;
}

MatFq MatFq::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DomainError("block out of range");
  MatFq b(*spec_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
  return b;
}

void MatFq::set_block(std::size_t r0, std::size_t c0, const MatFq& b) {
  check_same_field(b);
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DomainError("block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

bool MatFq::is_zero() const noexcept {
  for (auto v : data_)
    if (v != 0) return false;
  return true;
}

bool MatFq::is_identity() const noexcept {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

std::vector<std::vector<std::uint32_t>> MatFq::to_rows() const {
  std::vector<std::vector<std::uint32_t>> out(rows_, std::vector<std::uint32_t>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j);
  return out;
}

std::string MatFq::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

bool is_symplectic(const MatFq& m) {
  if (!m.is_square() || m.rows() % 2 != 0) throw DomainError("is_symplectic needs an even square matrix");
  const std::size_t n = m.rows() / 2;
  const MatFq x = m.block(0, 0, n, n), a = m.block(0, n, n, n);
  const MatFq b = m.block(n, 0, n, n), y = m.block(n, n, n, n);
  MatFq partner(m.spec(), 2 * n, 2 * n);
  partner.set_block(0, 0, y.transpose());
  partner.set_block(0, n, -a.transpose());
  partner.set_block(n, 0, -b.transpose());
  partner.set_block(n, n, x.transpose());
  return (m * partner).is_identity();
}

MatFq symplectic_form(const FieldSpec& spec, std::size_t n) {
  MatFq j(spec, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j.at(i, n + i) = 1;
    j.at(n + i, i) = spec.neg(1);
  }
  return j;
}

UniTriMat UniTriMat::identity(const FieldSpec& spec, std::size_t n) {
  return UniTriMat(MatFq::identity(spec, n));
}

UniTriMat UniTriMat::from_upper(const FieldSpec& spec, std::size_t n, std::span<const Code> upper) {
  if (upper.size() != n * (n - 1) / 2) throw DomainError("wrong number of strictly-upper entries");
  MatFq m = MatFq::identity(spec, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (upper[k] >= spec.q()) throw DomainError("element code out of range");
      m.at(i, j) = upper[k++];
    }
  return UniTriMat(std::move(m));
}

UniTriMat UniTriMat::from_matrix(MatFq m) {
  if (!m.is_square()) throw DomainError("unitriangular matrix must be square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m.at(i, j) != (i == j ? 1u : 0u)) throw DomainError("matrix is not upper unitriangular");
  return UniTriMat(std::move(m));
}

UniTriMat UniTriMat::jordan_block(const FieldSpec& spec, std::size_t n) {
  MatFq m = MatFq::identity(spec, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m.at(i, i + 1) = 1;
  return UniTriMat(std::move(m));
}

std::vector<Code> UniTriMat::upper_entries() const {
  std::vector<Code> out;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = i + 1; j < n(); ++j) out.push_back(m_.at(i, j));
  return out;
}

UniTriMat UniTriMat::inverse() const {
  // Back substitution; the result is again unitriangular.
  const FieldSpec& f = spec();
  const std::size_t sz = n();
  MatFq inv = MatFq::identity(f, sz);
  for (std::size_t j = 0; j < sz; ++j) {
    for (std::size_t ii = j; ii-- > 0;) {
      Code s = 0;
      for (std::size_t k = ii + 1; k <= j; ++k) s = f.add(s, f.mul(m_.at(ii, k), inv.at(k, j)));
      inv.at(ii, j) = f.neg(s);
    }
  }
  return UniTriMat(std::move(inv));
}

std::uint64_t UniTriMat::order() const {
  std::uint64_t ord = 1;
  MatFq cur = m_;
  const std::uint32_t p = spec().p();
  while (!cur.is_identity()) {
    cur = cur.pow(p);
    ord *= p;
  }
  return ord;
}

namespace {

Code paths_from(const UniTriMat& l, unsigned steps_left, std::size_t at, std::size_t target) {
  const FieldSpec& f = l.spec();
  if (steps_left == 0) return at == target ? 1 : 0;
  Code sum = 0;
  for (std::size_t next = at; next <= target; ++next) {
    const Code w = l.entry(at, next);
    if (w == 0) continue;
    sum = f.add(sum, f.mul(w, paths_from(l, steps_left - 1, next, target)));
  }
  return sum;
}

}  // namespace

Code unitri_power_entry_by_paths(const UniTriMat& l, unsigned m, std::size_t i, std::size_t j) {
  if (i >= l.n() || j >= l.n()) throw DomainError("entry index out of range");
  if (i > j) return 0;
  return paths_from(l, m, i, j);
}

std::uint64_t ut_exponent(std::size_t n, const FieldSpec& spec) {
  if (n < 1) throw DomainError("ut_exponent needs n >= 1");
  const unsigned t = ceil_log(spec.p(), n);
  return *checked_pow(spec.p(), t);
}

void for_each_unitriangular(const FieldSpec& spec, std::size_t n,
                            const std::function<void(const UniTriMat&)>& fn) {
  const std::size_t k = n * (n - 1) / 2;
  std::vector<Code> digits(k, 0);
  for (;;) {
    fn(UniTriMat::from_upper(spec, n, digits));
    std::size_t i = k;
    while (i > 0 && digits[i - 1] == spec.q() - 1) digits[--i] = 0;
    if (i == 0) return;
    ++digits[i - 1];
  }
}

}  // namespace fszlab
