#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normcert/errors.hpp"

namespace normcert {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (q > 0) into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t digits = 0;
  bool slash = false;
  std::size_t den_digits = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      (slash ? den_digits : digits)++;
    } else if (c == '/' && !slash) {
      slash = true;
    } else {
      throw usage_error("malformed rational: '" + std::string(text) + "'");
    }
  }
  if (digits == 0 || (slash && den_digits == 0)) {
    throw usage_error("malformed rational: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw usage_error("malformed rational: '" + s + "'");
  if (r.get_den() == 0) throw usage_error("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

/// p/q in lowest terms; mpq_class(p, q) alone does not reduce.
inline Rational ratio(long p, long q) {
  if (q == 0) throw usage_error("zero denominator");
  Rational r(p, q < 0 ? -q : q);
  if (q < 0) r = -r;
  r.canonicalize();
  return r;
}

/// Lowest-terms "p/q" string, or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline std::string to_string(const Integer& z) { return z.get_str(10); }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;  // already canonical: gcd(p,q)=1 implies gcd(p^k,q^k)=1
}

inline int sign(const Rational& r) { return sgn(r); }

inline Rational abs(const Rational& r) { return ::abs(r); }

/// Powers base^0..base^max_exponent.
inline std::vector<Rational> power_table(const Rational& base, unsigned max_exponent) {
  std::vector<Rational> out(max_exponent + 1);
  out[0] = 1;
  for (unsigned e = 1; e <= max_exponent; ++e) out[e] = out[e - 1] * base;
  return out;
}

/// Bracket [lo, hi] of the nonnegative real root value^(1/degree) with
/// hi - lo = 10^-digits, computed with integer roots only.
inline std::pair<Rational, Rational> root_bracket(const Rational& value, unsigned degree,
                                                  unsigned digits = 12) {
  if (value < 0) throw usage_error("root_bracket of a negative value");
  if (degree == 0) throw usage_error("root_bracket of degree zero");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // floor(value * scale^degree) then integer degree-th root.
  Integer scaled_pow;
  mpz_pow_ui(scaled_pow.get_mpz_t(), scale.get_mpz_t(), degree);
  Integer num = value.get_num() * scaled_pow;
  Integer floor_val;
  mpz_fdiv_q(floor_val.get_mpz_t(), num.get_mpz_t(), value.get_den_mpz_t());
  Integer root;
  mpz_root(root.get_mpz_t(), floor_val.get_mpz_t(), degree);
  Rational lo(root, scale);
  Rational hi(root + 1, scale);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace normcert
