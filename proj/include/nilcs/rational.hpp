#pragma once

// Exact rational scalars. Backed by GMP's mpq_class, which keeps every value
// in lowest terms with a positive denominator.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilcs {

using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

/// Parses "p", "p/q", "-p/q". A leading U+2212 MINUS SIGN is accepted as well.
/// Rejects a zero denominator and anything that is not plain decimal digits.
inline Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (body.starts_with('-')) {
    negative = true;
    body.remove_prefix(1);
  } else if (body.starts_with("−")) {
    negative = true;
    body.remove_prefix(std::string_view("−").size());
  }

  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!detail::all_digits(num) || !detail::all_digits(den))
    throw ParseError("malformed rational \"" + std::string(text) + "\"");

  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0)
    throw ParseError("zero denominator in rational \"" + std::string(text) + "\"");
  Rational q(negative ? mpz_class(-n) : n, d);
  q.canonicalize();
  return q;
}

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace nilcs
