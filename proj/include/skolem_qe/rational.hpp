/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "skolem_qe/error.hpp"

namespace skolem_qe {

/// Arbitrary-precision rational, always kept canonical (gcd 1, positive denominator).
using Rational = mpq_class;

namespace detail {

inline bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace detail

/// Parses `n`, `-n`, `n/d` or a finite decimal `n.m` exactly.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::is_digits(num) || !detail::is_digits(den))
      throw Error(ErrorCode::ParseError, "malformed rational literal '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !detail::is_digits(whole)) ||
        (!frac.empty() && !detail::is_digits(frac)))
      throw Error(ErrorCode::ParseError, "malformed decimal literal '" + std::string(text) + "'");
    mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = Rational(num, den);
  } else {
    if (!detail::is_digits(s))
      throw Error(ErrorCode::ParseError, "malformed numeral '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(s), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

inline bool looks_numeric(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && (std::isdigit(static_cast<unsigned char>(s.front())) || s.front() == '.');
}

/// `n` or `n/d`; the sign is part of the numerator.
inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace skolem_qe
