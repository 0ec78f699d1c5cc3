#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace wrank {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p" or "p/q" in base 10 with optional leading sign on p (and on q).
// Throws input_error on anything else, including a zero denominator.
Rational parse_rational(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 0 and
// gcd(p, q) = 1.
std::string rational_str(const Rational& q);

Integer integer_pow(const Integer& base, unsigned long exp);

// Complex number with exact rational real and imaginary parts. A field:
// closed under +, -, *, and / by nonzero values.
struct CRational {
  Rational re{0};
  Rational im{0};

  CRational() = default;
  CRational(long value) : re(value) {}  // NOLINT: implicit by design
  CRational(Rational real) : re(std::move(real)) {}
  CRational(Rational real, Rational imag)
      : re(std::move(real)), im(std::move(imag)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  CRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  CRational& operator+=(const CRational& o);
  CRational& operator-=(const CRational& o);
  CRational& operator*=(const CRational& o);
  CRational& operator/=(const CRational& o);

  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(CRational a, const CRational& b) { return a *= b; }
  friend CRational operator/(CRational a, const CRational& b) { return a /= b; }
  friend CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const CRational& a, const CRational& b) {
    return !(a == b);
  }
};

// "re" or "re + im*i" / "re - im*i"; diagnostics and text output only.
std::string crational_str(const CRational& z);

std::ostream& operator<<(std::ostream& os, const CRational& z);

}  // namespace wrank
