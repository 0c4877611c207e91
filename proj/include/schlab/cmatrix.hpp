#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace schlab {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. The carrier for every operator in the
// library: convolution matrices, factor stages, Kronecker products.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> d);
  static CMatrix diagonal(std::span<const double> d);
  static CMatrix column(std::span<const cplx> v);
  static CMatrix row(std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }
  std::span<const cplx> row_span(std::size_t r) const {
    return std::span<const cplx>(data_).subspan(r * cols_, cols_);
  }

  std::vector<cplx> col(std::size_t c) const;
  std::vector<cplx> diag() const;

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  double max_abs() const;
  double frobenius() const;
  cplx trace() const;
  bool all_finite() const;
  bool is_diagonal(double tol = 0.0) const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
std::vector<cplx> operator*(const CMatrix& a, std::span<const cplx> x);

// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

double norm2(std::span<const cplx> v);

}  // namespace schlab
