// Dense row-major matrices over F_q with the handful of exact operations the
// schemes need: multiplication, Gaussian-elimination inverse and rank, and the
// Vandermonde/symmetric constructions.  Matrices are tiny (dimension <= ~8),
// so clarity beats asymptotics throughout.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "keycast/field.hpp"

namespace keycast {

struct Mat {
  int rows = 0, cols = 0;
  std::vector<std::uint32_t> a;  // row-major, rows*cols entries

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  std::uint32_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::uint32_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

Mat mat_mul(const Field& F, const Mat& A, const Mat& B);
std::vector<std::uint32_t> mat_vec(const Field& F, const Mat& A,
                                   const std::vector<std::uint32_t>& x);

// Gauss-Jordan inverse; nullopt when singular.
std::optional<Mat> try_inverse(const Field& F, const Mat& A);

// Throwing variant; `site` names the construction that built the matrix so a
// failure identifies the node/scheme responsible.
Mat mat_inverse(const Field& F, const Mat& A, const std::string& site = "mat_inverse");

int mat_rank(const Field& F, const Mat& A);

Mat mat_transpose(const Mat& A);

// (1, alpha, alpha^2, ..., alpha^{d-1}) as a d x 1 column.
Mat vandermonde_vector(const Field& F, std::uint32_t alpha, int d);
std::vector<std::uint32_t> vandermonde_column(const Field& F, std::uint32_t alpha, int d);

// d x k matrix whose j-th column is vandermonde_column(alphas[j], d).
Mat vandermonde_cols(const Field& F, const std::vector<std::uint32_t>& alphas, int d);

// Symmetric d x d matrix from its upper triangle listed row-major:
// (0,0),(0,1),...,(0,d-1),(1,1),...  Exactly d(d+1)/2 values.
Mat sym_from_upper(const Field& F, int d, const std::vector<std::uint32_t>& upper);

inline int sym_upper_count(int d) { return d * (d + 1) / 2; }

}  // namespace keycast
