#pragma once
#include <cstdint>
#include <vector>

#include "qbps/errors.hpp"
#include "qbps/quiver.hpp"
#include "qbps/rational.hpp"

namespace qbps {

// Finite field with q = p^k <= 4096 on Zech logarithms. Element encoding:
// 0 is the zero element, and e >= 1 stands for g^{e-1} for a fixed generator g.
struct FiniteField {
  long p = 0;
  int k = 1;
  long q = 0;
  static constexpr uint16_t SENT = 0xFFFF;

  std::vector<uint16_t> zech;    // zech[a]: exponent of 1 + g^a, SENT when it is zero
  std::vector<uint16_t> residue; // residue[r] = element of the integer r, 0 <= r < p
  std::vector<long> poly_rep;    // element -> packed coefficient vector (canonical form)
  long neg_one_exp = 0;          // exponent of -1

  uint16_t zero() const { return 0; }
  uint16_t one() const { return 1; }
  bool is_zero(uint16_t x) const { return x == 0; }

  uint16_t add(uint16_t x, uint16_t y) const {
    if (x == 0) return y;
    if (y == 0) return x;
    long A = x - 1, B = y - 1;
    long d = B - A;
    if (d < 0) d += q - 1;
    uint16_t z = zech[d];
    if (z == SENT) return 0;
    long e = A + z;
    if (e >= q - 1) e -= q - 1;
    return static_cast<uint16_t>(e + 1);
  }
  uint16_t neg(uint16_t x) const {
    if (x == 0 || p == 2) return x;
    long e = (x - 1) + neg_one_exp;
    if (e >= q - 1) e -= q - 1;
    return static_cast<uint16_t>(e + 1);
  }
  uint16_t sub(uint16_t x, uint16_t y) const { return add(x, neg(y)); }
  uint16_t mul(uint16_t x, uint16_t y) const {
    if (x == 0 || y == 0) return 0;
    long e = (x - 1) + (y - 1);
    if (e >= q - 1) e -= q - 1;
    return static_cast<uint16_t>(e + 1);
  }
  uint16_t inv(uint16_t x) const {
    if (x == 0) throw internal_error("inverse of zero field element");
    long e = (q - 1 - (x - 1)) % (q - 1);
    return static_cast<uint16_t>(e + 1);
  }
  uint16_t pow(uint16_t x, long e) const {
    if (x == 0) {
      if (e < 0) throw internal_error("negative power of zero field element");
      return e == 0 ? one() : zero();
    }
    long ee = ((x - 1) * (e % (q - 1))) % (q - 1);
    if (ee < 0) ee += q - 1;
    return static_cast<uint16_t>(ee + 1);
  }
  uint16_t from_int(long n) const {
    long r = n % p;
    if (r < 0) r += p;
    return residue[r];
  }
  uint16_t from_rat(const Rat& r) const;
  uint16_t element(long idx) const { return static_cast<uint16_t>(idx); }
};

FiniteField field_make(long p, int k);
FiniteField field_make_q(long q); // factors q; rejects non prime powers and q > 4096

Int gl_order(const DimVector& gamma, long q);

struct FqCtx {
  const FiniteField* F = nullptr;
  using Elem = uint16_t;
  Elem zero() const { return 0; }
  Elem add(Elem x, Elem y) const { return F->add(x, y); }
  Elem mul(Elem x, Elem y) const { return F->mul(x, y); }
  Elem from_rat(const Rat& r) const { return F->from_rat(r); }
};

} // namespace qbps
