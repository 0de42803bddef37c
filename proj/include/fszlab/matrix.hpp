#pragma once

// Dense matrices over F_q and unitriangular matrices.  Indices are 0-based.

#include <cstddef>
#include <functional>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fszlab/field.hpp"

namespace fszlab {

class MatFq {
 public:
  MatFq(const FieldSpec& spec, std::size_t rows, std::size_t cols);  // zero matrix
  static MatFq identity(const FieldSpec& spec, std::size_t n);
  // E_{i,j} of size rows x cols.
  static MatFq elementary(const FieldSpec& spec, std::size_t rows, std::size_t cols, std::size_t i,
                          std::size_t j);
  static MatFq from_rows(const FieldSpec& spec, const std::vector<std::vector<std::int64_t>>& rows);

  const FieldSpec& spec() const noexcept { return *spec_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Code at(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  Code& at(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  FieldElem elem(std::size_t i, std::size_t j) const { return {*spec_, at(i, j)}; }
  std::span<const Code> data() const noexcept { return data_; }

  MatFq operator*(const MatFq& o) const;
  MatFq operator+(const MatFq& o) const;
  MatFq operator-(const MatFq& o) const;
  MatFq operator-() const;
  MatFq scaled(Code s) const;
  MatFq transpose() const;
  MatFq pow(std::uint64_t e) const;
  // Throws DomainError if singular.
  MatFq inverse() const;

  MatFq block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const MatFq& b);

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;
  bool operator==(const MatFq& o) const noexcept {
    return spec_ == o.spec_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  // Rows of prime-field integers (element codes for extension fields).
  std::vector<std::vector<std::uint32_t>> to_rows() const;
  std::string to_string() const;

 private:
  void check_same_field(const MatFq& o) const;
  const FieldSpec* spec_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Code> data_;
};

// 2n x 2n matrix [[X, A], [B, Y]] with
// [[X, A], [B, Y]] [[Y^T, -A^T], [-B^T, X^T]] = I_{2n}.
// Throws DomainError on odd or non-square dimension.
bool is_symplectic(const MatFq& m);

// The standard form J = [[0, I], [-I, 0]] of size 2n; M is symplectic iff M J M^T = J.
MatFq symplectic_form(const FieldSpec& spec, std::size_t n);

// Upper unitriangular n x n matrix (ones on the diagonal, zeros below).
class UniTriMat {
 public:
  static UniTriMat identity(const FieldSpec& spec, std::size_t n);
  // Strictly-upper entries in row-major order: (0,1), (0,2), ..., (n-2,n-1).
  static UniTriMat from_upper(const FieldSpec& spec, std::size_t n, std::span<const Code> upper);
  // Throws DomainError unless m is unitriangular.
  static UniTriMat from_matrix(MatFq m);
  // Single Jordan block: ones on the superdiagonal.
  static UniTriMat jordan_block(const FieldSpec& spec, std::size_t n);

  const FieldSpec& spec() const noexcept { return m_.spec(); }
  std::size_t n() const noexcept { return m_.rows(); }
  const MatFq& matrix() const noexcept { return m_; }
  Code entry(std::size_t i, std::size_t j) const noexcept { return m_.at(i, j); }
  // l_{i,i+1}
  Code superdiag(std::size_t i) const noexcept { return m_.at(i, i + 1); }
  std::vector<Code> upper_entries() const;

  UniTriMat operator*(const UniTriMat& o) const { return UniTriMat(m_ * o.m_); }
  UniTriMat inverse() const;
  UniTriMat pow(std::uint64_t e) const { return UniTriMat(m_.pow(e)); }
  // Order, found by repeated p-th powers.
  std::uint64_t order() const;
  bool is_identity() const noexcept { return m_.is_identity(); }
  bool operator==(const UniTriMat& o) const noexcept { return m_ == o.m_; }

 private:
  explicit UniTriMat(MatFq m) : m_(std::move(m)) {}
  MatFq m_;
};

// (L^m)_{i,j} as the sum over non-decreasing index paths i = i_0 <= ... <= i_m = j
// of prod_a l_{i_{a-1}, i_a}.  Independent of matrix multiplication.
Code unitri_power_entry_by_paths(const UniTriMat& l, unsigned m, std::size_t i, std::size_t j);

// exp(UT(n,q)) = p^{ceil(log_p n)}.
std::uint64_t ut_exponent(std::size_t n, const FieldSpec& spec);

// q^{n(n-1)/2} unitriangular matrices, lexicographic in upper_entries().
void for_each_unitriangular(const FieldSpec& spec, std::size_t n,
                            const std::function<void(const UniTriMat&)>& fn);

}  // namespace fszlab
