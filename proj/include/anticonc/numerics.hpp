// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "anticonc/errors.hpp"

namespace anticonc {

using ExactInt = mpz_class;
using ExactRat = mpq_class;

using Int128 = __int128;
using UInt128 = unsigned __int128;

inline ExactInt to_exact(std::int64_t v) { return ExactInt(static_cast<long>(v)); }

inline ExactInt to_exact(std::uint64_t v) { return ExactInt(static_cast<unsigned long>(v)); }

inline ExactInt to_exact(Int128 v) {
  const bool neg = v < 0;
  UInt128 mag = neg ? UInt128(0) - static_cast<UInt128>(v) : static_cast<UInt128>(v);
  ExactInt r(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<std::uint64_t>(mag));
  return neg ? ExactInt(-r) : r;
}

inline ExactInt to_exact(UInt128 v) {
  ExactInt r(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return r;
}

inline const ExactInt& to_exact(const ExactInt& v) { return v; }

/// 2^e as an exact integer.
inline ExactInt pow2(unsigned long e) {
  ExactInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline ExactInt pow_ui(const ExactInt& base, unsigned long e) {
  ExactInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline ExactRat pow_ui(const ExactRat& base, unsigned long e) {
  ExactInt num = pow_ui(ExactInt(base.get_num()), e);
  ExactInt den = pow_ui(ExactInt(base.get_den()), e);
  ExactRat r(num, den);
  r.canonicalize();
  return r;
}

inline ExactRat make_rat(const ExactInt& num, const ExactInt& den) {
  if (den == 0) throw BadParams("zero denominator");
  ExactRat r(num, den);
  r.canonicalize();
  return r;
}

/// Binomial coefficient C(k, x); zero outside 0 <= x <= k.
inline ExactInt binom(long k, long x) {
  if (k < 0) throw BadParams("binom: k must be non-negative");
  if (x < 0 || x > k) return 0;
  ExactInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(x));
  return r;
}

/// P[Bin(k, 1/2) = x] = C(k, x) / 2^k.
inline ExactRat binom_pmf(long k, long x) {
  if (k < 0) throw BadParams("binom_pmf: k must be non-negative");
  return make_rat(binom(k, x), pow2(static_cast<unsigned long>(k)));
}

/// Row k of Pascal's triangle, C(k, 0) .. C(k, k).
inline std::vector<ExactInt> binom_row(long k) {
  std::vector<ExactInt> row;
  row.reserve(static_cast<std::size_t>(k) + 1);
  for (long x = 0; x <= k; ++x) row.push_back(binom(k, x));
  return row;
}

/// "num/den" with the denominator always present, e.g. "1/1".
inline std::string to_string(const ExactRat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const ExactInt& z) { return z.get_str(); }

/// Parses "a", "a/b", or a decimal "x.y" (optionally signed) into an exact rational.
inline ExactRat parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw ParseError("empty number");

  auto parse_int = [&](const std::string& t) {
    std::string digits = t;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) digits = digits.substr(1);
    if (digits.empty()) throw ParseError("malformed number '" + s + "'");
    for (char c : digits)
      if (c < '0' || c > '9') throw ParseError("malformed number '" + s + "'");
    ExactInt z;
    z.set_str(t[0] == '+' ? t.substr(1) : t, 10);
    return z;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    ExactInt num = parse_int(s.substr(0, slash));
    ExactInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return make_rat(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
    if (frac.empty()) frac = "0";
    ExactInt w = parse_int(whole);
    ExactInt f = parse_int(frac);
    if (frac[0] == '+' || frac[0] == '-') throw ParseError("malformed number '" + s + "'");
    ExactInt scale = pow_ui(ExactInt(10), frac.size());
    ExactInt mag = abs(w) * scale + f;
    return make_rat(neg ? ExactInt(-mag) : mag, scale);
  }
  return ExactRat(parse_int(s));
}

/// Natural log of a positive integer, accurate for values far beyond double range.
inline double ln(const ExactInt& z) {
  if (z <= 0) return -std::numeric_limits<double>::infinity();
  if (mpz_sizeinbase(z.get_mpz_t(), 2) < 1000) return std::log(z.get_d());
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

/// Natural log of a positive rational.
inline double ln(const ExactRat& q) {
  if (q <= 0) return -std::numeric_limits<double>::infinity();
  // Small operands go through a single division so equal ratios give equal logs.
  if (mpz_sizeinbase(q.get_num_mpz_t(), 2) < 1000 && mpz_sizeinbase(q.get_den_mpz_t(), 2) < 1000)
    return std::log(q.get_d());
  return ln(ExactInt(q.get_num())) - ln(ExactInt(q.get_den()));
}

/// True iff z fits in a signed 64-bit integer.
inline bool fits_int64(const ExactInt& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

inline std::int64_t to_int64(const ExactInt& z) {
  if (!fits_int64(z)) throw BadParams("integer does not fit in 64 bits");
  return static_cast<std::int64_t>(z.get_si());
}

}  // namespace anticonc
