#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "condsets/errors.hpp"

namespace condsets {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long long p, long long q) { return Rat(Int(p), Int(q)); }

// Accepts "p", "p/q", optional leading '-'. Denominator must be positive.
inline Rat parse_rat(const std::string& s) {
  auto bad = [&]() { fail(Errc::ParseError, "bad rational '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q <= 0) bad();
    return Rat(p, q);
  } catch (const std::exception&) {
    bad();
  }
  return Rat();
}

inline std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline Int floor_rat(const Rat& r) {
  Int q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q;
}

// Largest n with n*n <= v; v must be non-negative.
inline Int isqrt(const Int& v) {
  if (v < 0) fail(Errc::MalformedProblem, "isqrt of negative");
  return boost::multiprecision::sqrt(v);
}

inline Int pow10(int d) {
  Int p = 1;
  for (int i = 0; i < d; i++) p *= 10;
  return p;
}

// Decimal string of r truncated toward zero to `digits` fractional digits.
inline std::string dec_str(const Rat& r, int digits) {
  bool neg = r < 0;
  Rat a = neg ? Rat(-r) : r;
  Int scaled = numerator(a) * pow10(digits) / denominator(a);
  Int ip = scaled / pow10(digits);
  Int fp = scaled % pow10(digits);
  std::string out = (neg && scaled != 0) ? "-" : "";
  out += ip.str();
  if (digits > 0) {
    std::string f = fp.str();
    out += "." + std::string(digits - f.size(), '0') + f;
  }
  return out;
}

// Decimal string of sqrt(r) truncated to `digits` fractional digits; r >= 0.
inline std::string dec_sqrt_str(const Rat& r, int digits) {
  if (r < 0) fail(Errc::MalformedProblem, "sqrt of negative");
  Int scale = pow10(digits);
  // floor(sqrt(r) * 10^d) = isqrt(floor(r * 10^(2d))) when r = p/q:
  // isqrt(p * 10^(2d) / q) can undershoot by rounding of the inner division,
  // so compute isqrt(p * 10^(2d) * q) / q ... simpler exact route:
  // n = floor(sqrt(p/q) * 10^d)  <=>  n^2 <= p*10^(2d)/q < (n+1)^2.
  Int num = numerator(r) * scale * scale;
  Int den = denominator(r);
  Int n = isqrt(num / den);
  // fix possible off-by-one from the floor division
  while ((n + 1) * (n + 1) * den <= num) n += 1;
  while (n > 0 && n * n * den > num) n -= 1;
  Int ip = n / scale, fp = n % scale;
  std::string out = ip.str();
  if (digits > 0) {
    std::string f = fp.str();
    out += "." + std::string(digits - f.size(), '0') + f;
  }
  return out;
}

// Exact test sqrt(c2) <= sqrt(a2) + sqrt(b2) using only rational arithmetic.
// All inputs are squared quantities (non-negative).
inline bool sqrt_leq_sum(const Rat& c2, const Rat& a2, const Rat& b2) {
  Rat t = c2 - a2 - b2;
  if (t <= 0) return true;
  return t * t <= 4 * a2 * b2;
}

}  // namespace condsets
