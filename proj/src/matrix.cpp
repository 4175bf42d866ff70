#include "keycast/matrix.hpp"

#include "keycast/errors.hpp"

namespace keycast {

Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
  if (A.cols != B.rows)
    throw_error(ErrorKind::Internal, "BadParams", "mat_mul dimension mismatch");
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      std::uint32_t aik = A.at(i, k);
      if (!aik) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
    }
  return C;
}

std::vector<std::uint32_t> mat_vec(const Field& F, const Mat& A,
                                   const std::vector<std::uint32_t>& x) {
  if (A.cols != static_cast<int>(x.size()))
    throw_error(ErrorKind::Internal, "BadParams", "mat_vec dimension mismatch");
  std::vector<std::uint32_t> y(A.rows, 0);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      y[i] = F.add(y[i], F.mul(A.at(i, j), x[j]));
  return y;
}

std::optional<Mat> try_inverse(const Field& F, const Mat& A) {
  if (A.rows != A.cols) return std::nullopt;
  int n = A.rows;
  Mat M = A, I = Mat::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M.at(r, c)) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(M.at(piv, j), M.at(c, j));
        std::swap(I.at(piv, j), I.at(c, j));
      }
    std::uint32_t inv = F.inv(M.at(c, c));
    for (int j = 0; j < n; ++j) {
      M.at(c, j) = F.mul(M.at(c, j), inv);
      I.at(c, j) = F.mul(I.at(c, j), inv);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      std::uint32_t f = M.at(r, c);
      if (!f) continue;
      for (int j = 0; j < n; ++j) {
        M.at(r, j) = F.sub(M.at(r, j), F.mul(f, M.at(c, j)));
        I.at(r, j) = F.sub(I.at(r, j), F.mul(f, I.at(c, j)));
      }
    }
  }
  return I;
}

Mat mat_inverse(const Field& F, const Mat& A, const std::string& site) {
  if (A.rows != A.cols)
    throw_error(ErrorKind::Feasibility, "SingularSubmatrix", site + ": matrix not square");
  auto inv = try_inverse(F, A);
  if (!inv)
    throw_error(ErrorKind::Feasibility, "SingularSubmatrix",
                site + ": " + std::to_string(A.rows) + "x" + std::to_string(A.cols) +
                    " system is singular");
  return *inv;
}

int mat_rank(const Field& F, const Mat& A) {
  Mat M = A;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int piv = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, c)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(r, j));
    std::uint32_t inv = F.inv(M.at(r, c));
    for (int j = 0; j < M.cols; ++j) M.at(r, j) = F.mul(M.at(r, j), inv);
    for (int i = 0; i < M.rows; ++i) {
      if (i == r || !M.at(i, c)) continue;
      std::uint32_t f = M.at(i, c);
      for (int j = 0; j < M.cols; ++j)
        M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(r, j)));
    }
    ++r;
  }
  return r;
}

Mat mat_transpose(const Mat& A) {
  Mat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

Mat vandermonde_vector(const Field& F, std::uint32_t alpha, int d) {
  Mat v(d, 1);
  std::uint32_t p = 1 % F.q;
  for (int i = 0; i < d; ++i) {
    v.at(i, 0) = p;
    p = F.mul(p, alpha);
  }
  return v;
}

std::vector<std::uint32_t> vandermonde_column(const Field& F, std::uint32_t alpha, int d) {
  std::vector<std::uint32_t> v(d);
  std::uint32_t p = 1 % F.q;
  for (int i = 0; i < d; ++i) {
    v[i] = p;
    p = F.mul(p, alpha);
  }
  return v;
}

Mat vandermonde_cols(const Field& F, const std::vector<std::uint32_t>& alphas, int d) {
  Mat M(d, static_cast<int>(alphas.size()));
  for (int j = 0; j < M.cols; ++j) {
    auto col = vandermonde_column(F, alphas[j], d);
    for (int i = 0; i < d; ++i) M.at(i, j) = col[i];
  }
  return M;
}

Mat sym_from_upper(const Field& F, int d, const std::vector<std::uint32_t>& upper) {
  if (static_cast<int>(upper.size()) != sym_upper_count(d))
    throw_error(ErrorKind::Internal, "BadParams", "sym_from_upper: wrong entry count");
  Mat M(d, d);
  std::size_t k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j, ++k) {
      std::uint32_t v = upper[k] % F.q;
      M.at(i, j) = v;
      M.at(j, i) = v;
    }
  return M;
}

}  // namespace keycast
