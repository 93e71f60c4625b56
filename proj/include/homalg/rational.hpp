#ifndef HOMALG_RATIONAL_HPP
#define HOMALG_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace homalg {

// Exact arithmetic over Q.  mpq_class keeps values canonical (positive
// denominator, gcd(num, den) = 1) after every operation.
using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct BudgetError : Error {
  using Error::Error;
};

// Parses "p", "-p" or "p/q".  Rejects q = 0 and malformed input.
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw ValidationError("empty rational literal");
  try {
    Rational r(s);
    if (r.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ValidationError("malformed rational literal '" + s + "'");
  }
}

inline std::string rational_to_string(const Rational& r) {
  return r.get_str();
}

}  // namespace homalg

#endif
