#include "sigcount/types.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "sigcount/error.hpp"

namespace sigcount {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

double to_double(const Rational& q) { return q.convert_to<double>(); }

cplx GaussianRational::to_complex() const { return {to_double(re), to_double(im)}; }

std::string GaussianRational::to_string() const {
  std::ostringstream os;
  os << re;
  if (im >= 0) os << '+';
  os << im << 'i';
  return os.str();
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  Rational n = b.norm();
  if (n == 0) fail(Errc::InvalidArgument, "division by zero Gaussian rational");
  GaussianRational p = a * b.conj();
  return {p.re / n, p.im / n};
}

std::int64_t floor_to_int64(const Rational& q) {
  BigInt num = numerator(q);
  BigInt den = denominator(q);
  BigInt f = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) f -= 1;
  if (f > std::numeric_limits<std::int64_t>::max() || f < std::numeric_limits<std::int64_t>::min())
    fail(Errc::InvalidArgument, "integer part out of range");
  return f.convert_to<std::int64_t>();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() -> Rational { fail(Errc::InvalidArgument, "malformed number '" + s + "'"); };
  if (s.empty()) return bad();
  bool neg = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  if (body.empty()) return bad();
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string a = body.substr(0, slash), b = body.substr(slash + 1);
    if (a.empty() || b.empty()) return bad();
    for (char ch : a + b)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return bad();
    BigInt den(b);
    if (den == 0) fail(Errc::InvalidArgument, "zero denominator in '" + s + "'");
    value = Rational(BigInt(a), den);
  } else {
    auto dot = body.find('.');
    std::string ip = dot == std::string::npos ? body : body.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : body.substr(dot + 1);
    if (ip.empty() && fp.empty()) return bad();
    for (char ch : ip + fp)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return bad();
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt digits((ip.empty() ? "0" : ip) + fp);
    value = Rational(digits, scale);
  }
  return neg ? Rational(-value) : value;
}

GaussianRational parse_gaussian(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) fail(Errc::InvalidArgument, "empty complex literal");
  if (s.back() != 'i') return {parse_rational(s), Rational(0)};

  s.pop_back();
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  Rational im;
  if (im_part.empty() || im_part == "+")
    im = 1;
  else if (im_part == "-")
    im = -1;
  else
    im = parse_rational(im_part);
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return {re, im};
}

}  // namespace sigcount
