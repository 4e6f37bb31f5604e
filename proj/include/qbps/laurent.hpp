#pragma once
#include <map>
#include <string>

#include "qbps/carrier.hpp"
#include "qbps/rational.hpp"

namespace qbps {

// Laurent polynomial in the line element s = -q^{1/2}; no zero coefficients stored.
struct Laurent {
  std::map<long, Rat> c; // exponent -> coefficient

  static Laurent constant(const Rat& v) {
    Laurent r;
    if (v != 0) r.c[0] = v;
    return r;
  }
  static Laurent monomial(const Rat& v, long e) {
    Laurent r;
    if (v != 0) r.c[e] = v;
    return r;
  }

  bool is_zero() const { return c.empty(); }

  void set(long e, const Rat& v) {
    if (v == 0)
      c.erase(e);
    else
      c[e] = v;
  }
  Rat get(long e) const {
    auto it = c.find(e);
    return it == c.end() ? Rat(0) : it->second;
  }

  Laurent adams(long n) const { // s -> s^n
    Laurent r;
    for (const auto& [e, v] : c) r.c[e * n] = v;
    return r;
  }

  Rat eval_one() const {
    Rat s(0);
    for (const auto& [e, v] : c) s += v;
    return s;
  }

  QNum eval_neg_sqrt(long q) const { // s = -q^{1/2}
    QNum r(q);
    Rat qr(q);
    for (const auto& [e, v] : c) {
      if (e % 2 == 0)
        r.a += v * rat_pow(qr, e / 2);
      else
        r.b -= v * rat_pow(qr, (e - 1) / 2);
    }
    return r;
  }

  bool palindromic() const {
    for (const auto& [e, v] : c)
      if (get(-e) != v) return false;
    return true;
  }
  bool nonnegative() const {
    for (const auto& [e, v] : c) {
      (void)e;
      if (v < 0) return false;
    }
    return true;
  }
  bool integral() const {
    for (const auto& [e, v] : c) {
      (void)e;
      if (!is_integer(v)) return false;
    }
    return true;
  }

  std::string str() const {
    if (c.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, v] : c) {
      Rat mag = v;
      if (first) {
        if (v < 0) {
          out += "-";
          mag = -v;
        }
        first = false;
      } else {
        if (v < 0) {
          out += " - ";
          mag = -v;
        } else {
          out += " + ";
        }
      }
      if (e == 0)
        out += rat_str(mag);
      else
        out += rat_str(mag) + "*s^" + std::to_string(e);
    }
    return out;
  }
};

inline Laurent operator+(const Laurent& x, const Laurent& y) {
  Laurent r = x;
  for (const auto& [e, v] : y.c) r.set(e, r.get(e) + v);
  return r;
}
inline Laurent operator-(const Laurent& x, const Laurent& y) {
  Laurent r = x;
  for (const auto& [e, v] : y.c) r.set(e, r.get(e) - v);
  return r;
}
inline Laurent operator-(const Laurent& x) {
  Laurent r;
  for (const auto& [e, v] : x.c) r.c[e] = -v;
  return r;
}
inline Laurent operator*(const Laurent& x, const Laurent& y) {
  Laurent r;
  for (const auto& [e1, v1] : x.c)
    for (const auto& [e2, v2] : y.c) r.set(e1 + e2, r.get(e1 + e2) + v1 * v2);
  return r;
}
inline Laurent operator*(const Laurent& x, const Rat& k) {
  Laurent r;
  if (k == 0) return r;
  for (const auto& [e, v] : x.c) r.c[e] = v * k;
  return r;
}
inline Laurent operator*(const Rat& k, const Laurent& x) { return x * k; }
inline bool operator==(const Laurent& x, const Laurent& y) { return x.c == y.c; }
inline bool operator!=(const Laurent& x, const Laurent& y) { return !(x == y); }

} // namespace qbps
