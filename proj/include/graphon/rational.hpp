#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace graphon {

// Exact rational arithmetic everywhere in the core. Floating point only
// appears in the finite-difference derivative estimator.
using Rat = mpq_class;

// Canonical text form: "p/q" in lowest terms, integers without "/1".
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational string");
  mpq_class r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// mpq_class(p, q) does not reduce, and GMP arithmetic assumes canonical
// operands; every fraction built from computed parts goes through here.
inline Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// r^e for integer e; e < 0 requires r != 0.
inline Rat rat_pow(const Rat& r, long e) {
  if (e < 0) {
    if (r == 0) throw std::domain_error("rat_pow: 0 to a negative power");
    return rat_pow(Rat(1) / r, -e);
  }
  Rat acc(1), base(r);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline long rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("rat_ceil: out of range");
  return q.get_si();
}

}  // namespace graphon
