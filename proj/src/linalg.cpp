#include "wrank/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <utility>

#include "wrank/errors.hpp"

namespace wrank {

ExactMatrix ExactMatrix::identity(int d) {
  ExactMatrix m(d, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = CRational(1);
  return m;
}

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (int k = 0; k < b.rows; ++k)
        for (int l = 0; l < b.cols; ++l)
          out.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
    }
  return out;
}

ExactVector kron(const ExactVector& a, const ExactVector& b) {
  ExactVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

namespace {

void clear_row_denominators(ExactMatrix& m) {
  for (int i = 0; i < m.rows; ++i) {
    Integer lcm = 1;
    for (int j = 0; j < m.cols; ++j) {
      const CRational& z = m.at(i, j);
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), z.re.get_den().get_mpz_t());
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), z.im.get_den().get_mpz_t());
    }
    if (lcm == 1) continue;
    const CRational scale{Rational(lcm)};
    for (int j = 0; j < m.cols; ++j) m.at(i, j) *= scale;
  }
}

}  // namespace

int exact_matrix_rank(ExactMatrix m) {
  clear_row_denominators(m);
  CRational prev(1);
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i) {
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    }
    const CRational& piv = m.at(r, c);
    const bool unit_step = piv == prev;
    for (int i = r + 1; i < m.rows; ++i) {
      if (m.at(i, c).is_zero()) {
        if (unit_step) continue;
        for (int j = c + 1; j < m.cols; ++j) {
          if (m.at(i, j).is_zero()) continue;
          m.at(i, j) = piv * m.at(i, j) / prev;
        }
        continue;
      }
      for (int j = c + 1; j < m.cols; ++j) {
        if (m.at(i, j).is_zero() && m.at(r, j).is_zero()) continue;
        m.at(i, j) = (piv * m.at(i, j) - m.at(i, c) * m.at(r, j)) / prev;
      }
      m.at(i, c) = CRational();
    }
    prev = m.at(r, c);
    ++r;
  }
  return r;
}

std::vector<int> rref_in_place(ExactMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i) {
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    }
    const CRational inv = CRational(1) / m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      const CRational f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

LinearSolve solve_exact(const ExactMatrix& a, const ExactVector& rhs) {
  if (int(rhs.size()) != a.rows) {
    throw contract_error("solve_exact: rhs length does not match row count");
  }
  ExactMatrix aug(a.rows, a.cols + 1);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols) = rhs[i];
  }
  const std::vector<int> pivots = rref_in_place(aug);
  LinearSolve out;
  out.consistent =
      pivots.empty() || pivots.back() < a.cols;
  if (!out.consistent) return out;
  out.solution.assign(a.cols, CRational());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    out.solution[pivots[k]] = aug.at(int(k), a.cols);
  }
  return out;
}

int numeric_matrix_rank(const std::vector<std::complex<double>>& row_major,
                        int rows, int cols) {
  if (rows == 0 || cols == 0) return 0;
  if (row_major.size() != std::size_t(rows) * cols) {
    throw contract_error("numeric_matrix_rank: data size mismatch");
  }
  using RowMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                               Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> m(row_major.data(), rows, cols);
  const double max_col_norm = m.colwise().norm().maxCoeff();
  if (max_col_norm == 0.0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  const auto diag = qr.matrixQR().diagonal();
  const double threshold = 1e-9 * max_col_norm;
  int rank = 0;
  for (int i = 0; i < std::min(rows, cols); ++i) {
    if (std::abs(diag(i)) > threshold) ++rank;
  }
  return rank;
}

}  // namespace wrank
