#include "wrank/tensor.hpp"

#include <cmath>
#include <cstdlib>

#include "wrank/errors.hpp"

namespace wrank {

const char* party_name(Party p) {
  switch (p) {
    case Party::A: return "A";
    case Party::B: return "B";
    case Party::C: return "C";
  }
  return "?";
}

Party party_from_string(const std::string& s) {
  if (s == "A" || s == "a") return Party::A;
  if (s == "B" || s == "b") return Party::B;
  if (s == "C" || s == "c") return Party::C;
  throw input_error("bad party \"" + s + "\": expected A, B, or C");
}

namespace {

std::size_t& size_cap_ref() {
  static std::size_t cap = [] {
    std::size_t v = std::size_t(1) << 24;
    if (const char* env = std::getenv("WRANK_SIZE_CAP")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && parsed > 0) v = std::size_t(parsed);
    }
    return v;
  }();
  return cap;
}

std::size_t checked_entry_count(const Shape& s) {
  for (int d : s) {
    if (d <= 0) throw input_error("tensor dimensions must be positive");
  }
  const Integer total = Integer(s[0]) * Integer(s[1]) * Integer(s[2]);
  if (total > Integer(static_cast<unsigned long>(size_cap()))) {
    throw resource_error("tensor with " + total.get_str() +
                         " entries exceeds size cap " +
                         std::to_string(size_cap()));
  }
  return std::size_t(total.get_ui());
}

}  // namespace

std::size_t size_cap() { return size_cap_ref(); }

void set_size_cap(std::size_t cap) {
  if (cap == 0) throw input_error("size cap must be positive");
  size_cap_ref() = cap;
}

Tensor::Tensor(Shape shape) : shape_(shape), data_(checked_entry_count(shape)) {}

CRational& Tensor::at(int a, int b, int c) {
  return data_[(std::size_t(a) * shape_[1] + b) * shape_[2] + c];
}

const CRational& Tensor::at(int a, int b, int c) const {
  return data_[(std::size_t(a) * shape_[1] + b) * shape_[2] + c];
}

Rational Tensor::norm2() const {
  Rational total = 0;
  for (const CRational& z : data_) {
    if (!z.is_zero()) total += z.norm2();
  }
  return total;
}

std::size_t Tensor::nonzero_count() const {
  std::size_t n = 0;
  for (const CRational& z : data_) {
    if (!z.is_zero()) ++n;
  }
  return n;
}

FloatTensor::FloatTensor(Shape s)
    : shape(s), data(checked_entry_count(s)) {}

std::complex<double>& FloatTensor::at(int a, int b, int c) {
  return data[(std::size_t(a) * shape[1] + b) * shape[2] + c];
}

std::complex<double> FloatTensor::at(int a, int b, int c) const {
  return data[(std::size_t(a) * shape[1] + b) * shape[2] + c];
}

double FloatTensor::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data) s += std::norm(z);
  return std::sqrt(s);
}

Tensor w_state() {
  Tensor t({2, 2, 2});
  t.at(1, 0, 0) = CRational(1);
  t.at(0, 1, 0) = CRational(1);
  t.at(0, 0, 1) = CRational(1);
  return t;
}

Tensor ghz_state() {
  Tensor t({2, 2, 2});
  t.at(0, 0, 0) = CRational(1);
  t.at(1, 1, 1) = CRational(1);
  return t;
}

Tensor tensor_power(const Tensor& t, int n) {
  if (n < 1) throw input_error("tensor power requires n >= 1");
  const Shape base = t.shape();
  Shape target;
  for (int k = 0; k < 3; ++k) {
    const Integer dim = integer_pow(Integer(base[k]), (unsigned long)n);
    if (!dim.fits_sint_p()) {
      throw resource_error("tensor power dimension overflow");
    }
    target[k] = int(dim.get_si());
  }
  checked_entry_count(target);

  Tensor acc = t;
  for (int step = 1; step < n; ++step) {
    const Shape ps = acc.shape();
    Tensor next({ps[0] * base[0], ps[1] * base[1], ps[2] * base[2]});
    for (int a = 0; a < ps[0]; ++a)
      for (int b = 0; b < ps[1]; ++b)
        for (int c = 0; c < ps[2]; ++c) {
          const CRational& v = acc.at(a, b, c);
          if (v.is_zero()) continue;
          for (int x = 0; x < base[0]; ++x)
            for (int y = 0; y < base[1]; ++y)
              for (int z = 0; z < base[2]; ++z) {
                const CRational& w = t.at(x, y, z);
                if (w.is_zero()) continue;
                next.at(a * base[0] + x, b * base[1] + y, c * base[2] + z) =
                    v * w;
              }
        }
    acc = std::move(next);
  }
  return acc;
}

ExactMatrix unfold(const Tensor& t, Party cut) {
  const Shape& s = t.shape();
  const int dA = s[0], dB = s[1], dC = s[2];
  ExactMatrix m;
  switch (cut) {
    case Party::A:
      m = ExactMatrix(dA, dB * dC);
      for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dB; ++b)
          for (int c = 0; c < dC; ++c) m.at(a, b * dC + c) = t.at(a, b, c);
      break;
    case Party::B:
      m = ExactMatrix(dB, dA * dC);
      for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dB; ++b)
          for (int c = 0; c < dC; ++c) m.at(b, a * dC + c) = t.at(a, b, c);
      break;
    case Party::C:
      m = ExactMatrix(dC, dA * dB);
      for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dB; ++b)
          for (int c = 0; c < dC; ++c) m.at(c, a * dB + b) = t.at(a, b, c);
      break;
  }
  return m;
}

std::vector<ExactVector> slice_states(const Tensor& t, Party cut) {
  const ExactMatrix m = unfold(t, cut);
  std::vector<ExactVector> out(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    out[i].assign(m.data.begin() + std::size_t(i) * m.cols,
                  m.data.begin() + std::size_t(i + 1) * m.cols);
  }
  return out;
}

int schmidt_rank(const Tensor& t, Party cut) {
  return exact_matrix_rank(unfold(t, cut));
}

Tensor apply_local(const Tensor& t, Party party, const ExactMatrix& m) {
  const Shape& s = t.shape();
  const int p = party_index(party);
  if (m.cols != s[p]) {
    throw contract_error("apply_local: matrix columns must match party dim");
  }
  Shape ns = s;
  ns[p] = m.rows;
  Tensor out(ns);
  for (int a = 0; a < s[0]; ++a)
    for (int b = 0; b < s[1]; ++b)
      for (int c = 0; c < s[2]; ++c) {
        const CRational& v = t.at(a, b, c);
        if (v.is_zero()) continue;
        const int old_idx = (p == 0) ? a : (p == 1) ? b : c;
        for (int i = 0; i < m.rows; ++i) {
          const CRational& f = m.at(i, old_idx);
          if (f.is_zero()) continue;
          const int na = (p == 0) ? i : a;
          const int nb = (p == 1) ? i : b;
          const int nc = (p == 2) ? i : c;
          out.at(na, nb, nc) += f * v;
        }
      }
  return out;
}

FloatTensor to_float(const Tensor& t) {
  FloatTensor f(t.shape());
  for (std::size_t i = 0; i < t.data().size(); ++i) {
    const CRational& z = t.data()[i];
    f.data[i] = {z.re.get_d(), z.im.get_d()};
  }
  return f;
}

long DigitEncoding::combine(const std::vector<int>& digits) const {
  if (int(digits.size()) != copies) {
    throw contract_error("digit string length must equal copy count");
  }
  long v = 0;
  for (int d : digits) {
    if (d < 0 || d >= base) throw contract_error("digit out of range");
    v = v * base + d;
  }
  return v;
}

std::vector<int> DigitEncoding::split(long value) const {
  std::vector<int> digits(copies, 0);
  for (int k = copies - 1; k >= 0; --k) {
    digits[k] = int(value % base);
    value /= base;
  }
  if (value != 0) throw contract_error("value out of range for digit string");
  return digits;
}

}  // namespace wrank
