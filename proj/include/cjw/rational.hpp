#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cjw {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p/q", integers, and plain decimals ("-2.5"). Decimals map to exact
// rationals (25/10 reduced), so CLI inputs stay exact through the recurrences.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(BigInt(s));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  BigInt num(digits);
  BigInt den = 1;
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Rational(num, den);
}

// Exact decimal string when the reduced denominator is 2^a 5^b, else "p/q".
inline std::string rational_to_string(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  int twos = 0, fives = 0;
  BigInt d = den;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return num.str() + "/" + den.str();
  int shift = twos > fives ? twos : fives;
  for (int i = 0; i < shift - fives; ++i) num *= 5;
  for (int i = 0; i < shift - twos; ++i) num *= 2;
  std::string body = num.str();
  bool neg = !body.empty() && body[0] == '-';
  if (neg) body.erase(body.begin());
  while (static_cast<int>(body.size()) <= shift) body.insert(body.begin(), '0');
  if (shift > 0) {
    body.insert(body.size() - shift, ".");
    while (body.back() == '0') body.pop_back();
    if (body.back() == '.') body.pop_back();
  }
  return neg ? "-" + body : body;
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

}  // namespace cjw
