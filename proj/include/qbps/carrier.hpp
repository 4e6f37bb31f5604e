#pragma once
#include <string>
#include <utility>

#include "qbps/rational.hpp"

namespace qbps {

// Value a + b*h in the quadratic carrier Q[h]/(h^2 - q) attached to a declared
// base q, where h stands for the positive square root of q. The line element
// s = -q^{1/2} is the evaluation point -h. The two components are kept
// separate through the whole pipeline, even when q happens to be a square,
// because they track the even and odd halves of the weight grading.
struct QNum {
  long base = 0; // 0 means "unattached zero"
  Rat a, b;

  QNum() = default;
  explicit QNum(long q) : base(q) {}
  QNum(long q, Rat a0, Rat b0) : base(q), a(std::move(a0)), b(std::move(b0)) {}

  bool is_zero() const { return a == 0 && b == 0; }
};

inline long merged_base(const QNum& x, const QNum& y) {
  if (x.base == 0 || x.is_zero()) return y.base ? y.base : x.base;
  if (y.base == 0 || y.is_zero()) return x.base;
  if (x.base != y.base) throw internal_error("carrier base mismatch");
  return x.base;
}

inline QNum operator+(const QNum& x, const QNum& y) {
  return QNum(merged_base(x, y), x.a + y.a, x.b + y.b);
}
inline QNum operator-(const QNum& x, const QNum& y) {
  return QNum(merged_base(x, y), x.a - y.a, x.b - y.b);
}
inline QNum operator-(const QNum& x) { return QNum(x.base, -x.a, -x.b); }
inline QNum operator*(const QNum& x, const QNum& y) {
  long q = merged_base(x, y);
  if (x.is_zero() || y.is_zero()) return QNum(q);
  Rat qr(q);
  return QNum(q, x.a * y.a + x.b * y.b * qr, x.a * y.b + x.b * y.a);
}
inline QNum operator*(const QNum& x, const Rat& c) { return QNum(x.base, x.a * c, x.b * c); }
inline QNum operator*(const Rat& c, const QNum& x) { return x * c; }
inline QNum operator/(const QNum& x, const Rat& c) {
  if (c == 0) throw internal_error("carrier division by zero scalar");
  return QNum(x.base, x.a / c, x.b / c);
}
inline bool operator==(const QNum& x, const QNum& y) {
  if (x.is_zero() && y.is_zero()) return true;
  return x.base == y.base && x.a == y.a && x.b == y.b;
}
inline bool operator!=(const QNum& x, const QNum& y) { return !(x == y); }

// h^e at base q, any integer e (h^{-1} = h/q)
inline QNum h_pow(long q, long e) {
  Rat qr(q);
  if (e % 2 == 0) return QNum(q, rat_pow(qr, e / 2), 0);
  return QNum(q, 0, rat_pow(qr, (e - 1) / 2)); // e odd: e - 1 even, division exact
}

// v / h = b + (a/q) h
inline QNum div_by_h(const QNum& v) {
  if (v.base == 0) {
    if (!v.is_zero()) throw internal_error("carrier without base");
    return v;
  }
  return QNum(v.base, v.b, v.a / Rat(v.base));
}

// A value computed at base q^n, re-expressed in the carrier at base q.
// For even n the odd component folds into the rational part with a sign flip
// (the line element at base q^n embeds as -(q^{n/2})); for odd n it stays odd.
inline QNum embed_power_base(const QNum& v, int n, long q) {
  Rat qr(q);
  if (n % 2 == 0) return QNum(q, v.a - v.b * rat_pow(qr, n / 2), 0);
  return QNum(q, v.a, v.b * rat_pow(qr, (n - 1) / 2));
}

inline std::string qnum_str(const QNum& v) {
  std::string s = "(" + rat_str(v.a);
  Rat b = v.b;
  if (b >= 0)
    s += "+" + rat_str(b) + "h)";
  else
    s += "-" + rat_str(-b) + "h)";
  return s;
}

} // namespace qbps
