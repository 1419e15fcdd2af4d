#ifndef MRB_RATIONAL_HPP
#define MRB_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace mrb {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q" (also accepts a leading '+'). Returns nullopt on
/// malformed input or a zero denominator. The result is canonicalized.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!digits(num) || !digits(den)) return std::nullopt;
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  if (negative) n = -n;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Canonical text form: "p/q", or "p" when q = 1; the sign sits on p.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace mrb

#endif  // MRB_RATIONAL_HPP
