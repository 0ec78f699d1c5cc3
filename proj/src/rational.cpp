#include "wrank/rational.hpp"

#include <cctype>
#include <ostream>

#include "wrank/errors.hpp"

namespace wrank {

namespace {

bool is_plain_decimal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// GMP accepts "-" but not "+".
std::string strip_plus(const std::string& s) {
  return !s.empty() && s[0] == '+' ? s.substr(1) : s;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  if (!is_plain_decimal(num)) {
    throw input_error("bad rational \"" + text + "\": expected \"p\" or \"p/q\"");
  }
  std::string normalized = strip_plus(num);
  if (slash != std::string::npos) {
    const std::string den = text.substr(slash + 1);
    if (!is_plain_decimal(den)) {
      throw input_error("bad rational \"" + text +
                        "\": expected \"p\" or \"p/q\"");
    }
    const std::string den_normalized = strip_plus(den);
    if (Integer(den_normalized) == 0) {
      throw input_error("bad rational \"" + text + "\": zero denominator");
    }
    normalized += "/" + den_normalized;
  }
  Rational q;
  if (q.set_str(normalized, 10) != 0) {
    throw input_error("bad rational \"" + text + "\"");
  }
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

Integer integer_pow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

CRational& CRational::operator+=(const CRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

CRational& CRational::operator-=(const CRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

CRational& CRational::operator*=(const CRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CRational& CRational::operator/=(const CRational& o) {
  const Rational d = o.norm2();
  if (d == 0) throw contract_error("division by zero CRational");
  Rational r = (re * o.re + im * o.im) / d;
  Rational i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string crational_str(const CRational& z) {
  if (z.im == 0) return rational_str(z.re);
  const std::string imag = rational_str(abs(z.im)) + "*i";
  const char* sign = z.im < 0 ? " - " : " + ";
  return rational_str(z.re) + sign + imag;
}

std::ostream& operator<<(std::ostream& os, const CRational& z) {
  return os << crational_str(z);
}

}  // namespace wrank
