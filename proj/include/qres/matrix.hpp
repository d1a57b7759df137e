#ifndef QRES_MATRIX_HPP
#define QRES_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qres {

using cplx = std::complex<double>;

// Dense row-major complex matrix.  The single carrier for states, operators,
// superoperators and column vectors (k x 1) throughout the library.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Takes ownership of row-major entries; length must be rows*cols and every
  // entry must be finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  // Column vector from an entry list.
  static ComplexMatrix column(std::vector<cplx> entries);
  // The canonical basis matrix of M_{rows,cols} whose res-index is k,
  // i.e. a single 1 at (k / cols, k % cols).
  static ComplexMatrix basis(std::size_t rows, std::size_t cols, std::size_t k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool is_square() const { return rows_ == cols_; }
  bool is_column() const { return cols_ == 1; }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  // Flat row-major access, handy for vectors.
  cplx& operator[](std::size_t k) { return entries_[k]; }
  const cplx& operator[](std::size_t k) const { return entries_[k]; }

  const std::vector<cplx>& entries() const { return entries_; }

 private:
  std::size_t rows_, cols_;
  std::vector<cplx> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// Entrywise (Hadamard) product; shapes must match.
ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);
cplx trace(const ComplexMatrix& a);

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest entry magnitude (the max norm used by every tolerance here).
double max_abs(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
// max norm of a - b; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// ||a - a^dagger||_max for square a.
double hermiticity_defect(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

}  // namespace qres

#endif  // QRES_MATRIX_HPP
