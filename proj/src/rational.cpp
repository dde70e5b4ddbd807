#include "mems/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace mems {

double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(int e) {
  cpp_int p = 1;
  for (int i = 0; i < e; ++i) p *= 10;
  return p;
}

Rational parse_decimal(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  bool neg = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  cpp_int digits = 0;
  int frac = 0;
  bool seen_digit = false;
  bool seen_dot = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      if (seen_dot) ++frac;
      seen_digit = true;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number: " + std::string(s));
  int exp10 = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("malformed number: " + std::string(s));
    const std::string tail(s.substr(i + 1));
    size_t used = 0;
    exp10 = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("malformed number: " + std::string(s));
  }
  exp10 -= frac;
  Rational q = exp10 >= 0 ? Rational(digits * pow10(exp10)) : Rational(digits, pow10(-exp10));
  return neg ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return parse_decimal(text.substr(0, slash)) / den;
}

Rational lambda_bar_exact(int N) {
  return Rational(8, 9) * (Rational(N) - Rational(2, 3)) * (Rational(N) - Rational(8, 3));
}

double lambda_bar(int N) { return to_double(lambda_bar_exact(N)); }

Rational hardy_constant_exact(int N) {
  const Rational n(N);
  return n * n * (n - 4) * (n - 4) / 16;
}

double hardy_constant(int N) { return to_double(hardy_constant_exact(N)); }

}  // namespace mems
