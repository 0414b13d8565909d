#pragma once

#include <gmpxx.h>

#include <string>

#include "sigbasis/errors.hpp"

namespace sigbasis {

// Exact arithmetic: arbitrary-precision integers for shuffle coefficients and
// elimination, rationals (canonical reduced form, positive denominator --
// maintained by mpq_class) only where a k!/T^k style scaling forces them.
using Int = mpz_class;
using Rat = mpq_class;

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// "p" when the denominator is 1, otherwise "p/q".
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& text) {
  Rat r;
  if (r.set_str(text, 10) != 0) {
    throw InvalidInput("cannot parse rational '" + text + "'");
  }
  if (r.get_den() == 0) {
    throw InvalidInput("rational '" + text + "' has zero denominator");
  }
  r.canonicalize();  // reduced form, positive denominator
  return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

}  // namespace sigbasis
