#pragma once
#include <gmpxx.h>
#include <cmath>
#include <string>

#include "qbps/errors.hpp"

namespace qbps {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) throw internal_error("zero raised to a negative power");
    return Rat(0);
  }
  Rat b = base;
  long k = e;
  if (k < 0) {
    b = Rat(1) / b;
    k = -k;
  }
  Rat r(1);
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

inline long mobius(long n) {
  if (n <= 0) throw internal_error("mobius of nonpositive argument");
  long result = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// q = p^k with p prime; false when q is not a prime power
inline bool prime_power(long q, long& p, int& k) {
  if (q < 2) return false;
  for (long c = 2; c * c <= q; ++c) {
    if (q % c == 0) {
      p = c;
      k = 0;
      long m = q;
      while (m % c == 0) {
        m /= c;
        ++k;
      }
      return m == 1;
    }
  }
  p = q;
  k = 1;
  return true;
}

inline bool is_square(long q) {
  if (q < 0) return false;
  long r = static_cast<long>(std::sqrt(static_cast<double>(q)));
  for (long c = (r > 1 ? r - 1 : 0); c <= r + 1; ++c)
    if (c * c == q) return true;
  return false;
}

// q^n as long with overflow guard
inline long pow_checked(long q, int n) {
  long r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > (1L << 62) / q) throw budget_error("field size power overflows the sampling range");
    r *= q;
  }
  return r;
}

} // namespace qbps
