#pragma once

#include <complex>
#include <vector>

#include "wrank/rational.hpp"

namespace wrank {

using ExactVector = std::vector<CRational>;

// Dense row-major matrix over the Gaussian rationals.
struct ExactMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<CRational> data;

  ExactMatrix() = default;
  ExactMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c) {}

  CRational& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
  const CRational& at(int r, int c) const {
    return data[std::size_t(r) * cols + c];
  }

  static ExactMatrix identity(int d);

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);
ExactVector kron(const ExactVector& a, const ExactVector& b);

// Exact rank by fraction-free (Bareiss) elimination after clearing row
// denominators. Pivoting is lexicographic: columns are scanned left to
// right and the first remaining row with a nonzero entry pivots, so the
// run is deterministic. The input is consumed.
int exact_matrix_rank(ExactMatrix m);

// In-place reduced row echelon form over the Gaussian rationals with the
// same lexicographic pivot rule. Returns the pivot column indices in order.
std::vector<int> rref_in_place(ExactMatrix& m);

struct LinearSolve {
  bool consistent = false;
  // The least-index-pivot solution: free variables are set to zero.
  ExactVector solution;
};

// Solves a * x = rhs exactly. rhs.size() must equal a.rows.
LinearSolve solve_exact(const ExactMatrix& a, const ExactVector& rhs);

// Floating-point rank via column-pivoted QR, counting diagonal entries of R
// above 1e-9 times the largest column norm of the input. Diagnostic only:
// never feeds a certificate.
int numeric_matrix_rank(const std::vector<std::complex<double>>& row_major,
                        int rows, int cols);

}  // namespace wrank
