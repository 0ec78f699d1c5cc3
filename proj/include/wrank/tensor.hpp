#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "wrank/linalg.hpp"
#include "wrank/rational.hpp"

namespace wrank {

// A bipartition of the three parties is named by the party it separates
// from the other two.
enum class Party : int { A = 0, B = 1, C = 2 };

constexpr int party_index(Party p) { return static_cast<int>(p); }
const char* party_name(Party p);
Party party_from_string(const std::string& s);  // "A"|"B"|"C", input_error

using Shape = std::array<int, 3>;

// Entry-count cap for tensor allocation; exceeding it raises resource_error.
// Defaults to 2^24 and may be overridden by the WRANK_SIZE_CAP environment
// variable or set_size_cap.
std::size_t size_cap();
void set_size_cap(std::size_t cap);

// Order-3 tensor with exact Gaussian-rational entries, stored dense in
// row-major order ((a * dB + b) * dC + c). Immutable by convention once
// built: every operation below returns a fresh value.
class Tensor {
 public:
  explicit Tensor(Shape shape);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  CRational& at(int a, int b, int c);
  const CRational& at(int a, int b, int c) const;

  const std::vector<CRational>& data() const { return data_; }
  std::vector<CRational>& data() { return data_; }

  Rational norm2() const;  // sum of squared entry magnitudes, exact
  std::size_t nonzero_count() const;

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  Shape shape_;
  std::vector<CRational> data_;
};

struct FloatTensor {
  Shape shape{0, 0, 0};
  std::vector<std::complex<double>> data;

  explicit FloatTensor(Shape s);
  FloatTensor() = default;

  std::complex<double>& at(int a, int b, int c);
  std::complex<double> at(int a, int b, int c) const;
  double frobenius_norm() const;
};

// Unnormalized states on 2x2x2: |100> + |010> + |001> and |000> + |111>.
Tensor w_state();
Tensor ghz_state();

// n-fold tensor power with indices of the n copies regrouped per party into
// one base-d digit string, copy 1 most significant. For a 2x2x2 input, party
// indices of the power are the integers whose base-2 digits are the per-copy
// indices: |0>|0> -> |0>, |0>|1> -> |1>, |1>|0> -> |2>, |1>|1> -> |3>.
Tensor tensor_power(const Tensor& t, int n);

// Matricization conventions (joint column index of the two remaining parties
// keeps them in A-before-B-before-C order):
//   cut A: dA x (dB*dC), column b*dC + c
//   cut B: dB x (dA*dC), column a*dC + c
//   cut C: dC x (dA*dB), column a*dB + b
ExactMatrix unfold(const Tensor& t, Party cut);

// Row i of the unfolding: the two-party state induced by basis index i of the
// separated party.
std::vector<ExactVector> slice_states(const Tensor& t, Party cut);

int schmidt_rank(const Tensor& t, Party cut);

// Applies m (new_dim x old_dim) to the given party's index.
Tensor apply_local(const Tensor& t, Party party, const ExactMatrix& m);

FloatTensor to_float(const Tensor& t);

// Mixed-radix digit string with a fixed base, copy 1 most significant.
struct DigitEncoding {
  int base = 2;
  int copies = 1;

  long combine(const std::vector<int>& digits) const;
  std::vector<int> split(long value) const;
};

}  // namespace wrank
