#include "qres/reorderings.hpp"

#include <cmath>
#include <string>

#include "qres/errors.hpp"

namespace qres {

namespace {

void require_positive(DimPair dims, const char* where) {
  if (dims.m == 0 || dims.n == 0) {
    throw ContractViolation(std::string(where) + ": dimensions must be positive, got (" +
                            std::to_string(dims.m) + ", " + std::to_string(dims.n) + ")");
  }
}

void require_split(const ComplexMatrix& a, DimPair dims, const char* where) {
  require_positive(dims, where);
  if (!a.is_square() || a.rows() != dims.product()) {
    throw ContractViolation(std::string(where) + ": matrix must be square of side " +
                            std::to_string(dims.product()) + ", got " + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()));
  }
}

}  // namespace

ComplexMatrix res(const ComplexMatrix& a) {
  ComplexMatrix out(a.size(), 1);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k];
  return out;
}

ComplexMatrix vec(const ComplexMatrix& a) {
  ComplexMatrix out(a.size(), 1);
  std::size_t k = 0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out[k++] = a(i, j);
  return out;
}

ComplexMatrix unres(const ComplexMatrix& v, DimPair dims) {
  require_positive(dims, "unres");
  if (!v.is_column() || v.rows() != dims.product()) {
    throw ContractViolation("unres: need a " + std::to_string(dims.product()) +
                            "-entry column, got " + std::to_string(v.rows()) + "x" +
                            std::to_string(v.cols()));
  }
  ComplexMatrix out(dims.m, dims.n);
  for (std::size_t k = 0; k < v.rows(); ++k) out[k] = v[k];
  return out;
}

ComplexMatrix unvec(const ComplexMatrix& v, DimPair dims) {
  require_positive(dims, "unvec");
  if (!v.is_column() || v.rows() != dims.product()) {
    throw ContractViolation("unvec: need a " + std::to_string(dims.product()) +
                            "-entry column, got " + std::to_string(v.rows()) + "x" +
                            std::to_string(v.cols()));
  }
  ComplexMatrix out(dims.m, dims.n);
  std::size_t k = 0;
  for (std::size_t j = 0; j < dims.n; ++j)
    for (std::size_t i = 0; i < dims.m; ++i) out(i, j) = v[k++];
  return out;
}

ComplexMatrix reshuffle(const ComplexMatrix& a, DimPair dims) {
  require_split(a, dims, "reshuffle");
  const std::size_t m = dims.m, n = dims.n;
  ComplexMatrix out(m * m, n * n);
  for (std::size_t ai = 0; ai < m; ++ai)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          out(ai * m + b, c * n + d) = a(ai * n + c, b * n + d);
  return out;
}

ComplexMatrix reshuffle_alt(const ComplexMatrix& a, DimPair dims) {
  require_split(a, dims, "reshuffle_alt");
  const std::size_t m = dims.m, n = dims.n;
  ComplexMatrix out(n * n, m * m);
  for (std::size_t ai = 0; ai < m; ++ai)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          out(c * n + d, ai * m + b) = a(b * n + d, ai * n + c);
  return out;
}

ComplexMatrix reshuffle_permutation(DimPair dims_out, DimPair dims_in) {
  require_positive(dims_out, "reshuffle_permutation");
  require_positive(dims_in, "reshuffle_permutation");
  const std::size_t r1 = dims_out.m, r2 = dims_out.n;
  const std::size_t c1 = dims_in.m, c2 = dims_in.n;
  const std::size_t side = r1 * r2 * c1 * c2;
  ComplexMatrix out(side, side);
  for (std::size_t a = 0; a < r1; ++a)
    for (std::size_t c = 0; c < r2; ++c)
      for (std::size_t b = 0; b < c1; ++b)
        for (std::size_t d = 0; d < c2; ++d) {
          const std::size_t from = (a * r2 + c) * (c1 * c2) + (b * c2 + d);
          const std::size_t to = (a * c1 + b) * (r2 * c2) + (c * c2 + d);
          out(to, from) = 1.0;
        }
  return out;
}

ComplexMatrix transpose_permutation(DimPair dims) {
  require_positive(dims, "transpose_permutation");
  const std::size_t m = dims.m, n = dims.n;
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j * m + i, i * n + j) = 1.0;
  return out;
}

ComplexMatrix swap_matrix(std::size_t d) {
  const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d))));
  if (d == 0 || k * k != d) {
    throw ContractViolation("swap_matrix: dimension " + std::to_string(d) +
                            " is not a perfect square");
  }
  return transpose_permutation({k, k});
}

}  // namespace qres
