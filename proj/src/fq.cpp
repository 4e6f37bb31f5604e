#include "qbps/fq.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace qbps {
namespace {

// dense polynomials over the prime field, least degree first, trimmed
using Poly = std::vector<long>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, long p) {
  trim(a);
  long df = static_cast<long>(f.size()) - 1;
  while (static_cast<long>(a.size()) - 1 >= df) {
    long sh = static_cast<long>(a.size()) - 1 - df;
    long c = a.back(); // f is monic
    for (long i = 0; i <= df; ++i) {
      a[sh + i] = (a[sh + i] - c * f[i]) % p;
      if (a[sh + i] < 0) a[sh + i] += p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, long p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(c), f, p);
}

Poly poly_powmod(Poly base, long e, const Poly& f, long p) {
  Poly r = {1};
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

bool poly_irreducible(const Poly& f, long p) {
  long k = static_cast<long>(f.size()) - 1;
  for (long d = 1; d <= k / 2; ++d) {
    long count = 1;
    for (long i = 0; i < d; ++i) count *= p;
    for (long m = 0; m < count; ++m) {
      Poly g(d + 1, 0);
      long t = m;
      for (long i = 0; i < d; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

long pack(const Poly& a, long p, int k) {
  long v = 0;
  for (int i = k - 1; i >= 0; --i)
    v = v * p + (i < static_cast<int>(a.size()) ? a[i] : 0);
  return v;
}

Poly unpack(long v, long p, int k) {
  Poly a(k, 0);
  for (int i = 0; i < k; ++i) {
    a[i] = v % p;
    v /= p;
  }
  trim(a);
  return a;
}

} // namespace

FiniteField field_make(long p, int k) {
  if (!is_prime(p)) throw input_error("field characteristic must be prime");
  if (k < 1) throw input_error("field extension degree must be positive");
  long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > 4096) throw budget_error("field size exceeds the supported table limit of 4096");
  }

  FiniteField F;
  F.p = p;
  F.k = k;
  F.q = q;

  // modulus polynomial: least irreducible monic of degree k by packed value
  Poly f;
  if (k == 1) {
    f = {0, 1};
  } else {
    for (long m = 0; m < q; ++m) {
      Poly cand(k + 1, 0);
      long t = m;
      for (int i = 0; i < k; ++i) {
        cand[i] = t % p;
        t /= p;
      }
      cand[k] = 1;
      if (poly_irreducible(cand, p)) {
        f = cand;
        break;
      }
    }
    if (f.empty()) throw internal_error("no irreducible modulus polynomial found");
  }

  std::vector<long> order_primes;
  {
    long n = q - 1;
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        order_primes.push_back(d);
        while (n % d == 0) n /= d;
      }
    if (n > 1) order_primes.push_back(n);
  }

  // least multiplicative generator by packed value
  Poly g;
  for (long v = 1; v < q; ++v) {
    Poly cand = unpack(v, p, k);
    bool ok = true;
    for (long r : order_primes) {
      Poly t = poly_powmod(cand, (q - 1) / r, f, p);
      if (t.size() == 1 && t[0] == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  if (g.empty() && q > 2) throw internal_error("no field generator found");
  if (q == 2) g = {1};

  std::vector<long> pow_packed(q - 1, 0);
  std::map<long, long> dlog;
  {
    Poly cur = {1};
    for (long e = 0; e < q - 1; ++e) {
      long pv = pack(cur, p, k);
      pow_packed[e] = pv;
      dlog[pv] = e;
      cur = poly_mulmod(cur, g, f, p);
    }
    if (static_cast<long>(dlog.size()) != q - 1)
      throw internal_error("generator order check failed while building field tables");
  }

  F.zech.assign(q - 1, FiniteField::SENT);
  for (long a = 0; a < q - 1; ++a) {
    Poly t = unpack(pow_packed[a], p, k);
    if (t.empty()) t = {0};
    t[0] = (t[0] + 1) % p;
    trim(t);
    if (!t.empty()) F.zech[a] = static_cast<uint16_t>(dlog.at(pack(t, p, k)));
  }

  F.residue.assign(p, 0);
  for (long r = 1; r < p; ++r) F.residue[r] = static_cast<uint16_t>(dlog.at(r) + 1);

  F.poly_rep.assign(q, 0);
  for (long e = 0; e < q - 1; ++e) F.poly_rep[e + 1] = pow_packed[e];

  F.neg_one_exp = (p == 2) ? 0 : dlog.at(p - 1);
  return F;
}

FiniteField field_make_q(long q) {
  long p = 0;
  int k = 0;
  if (!prime_power(q, p, k)) throw input_error("field size must be a prime power");
  return field_make(p, k);
}

uint16_t FiniteField::from_rat(const Rat& r) const {
  long num = static_cast<long>(mpz_fdiv_ui(r.get_num().get_mpz_t(), p));
  long den = static_cast<long>(mpz_fdiv_ui(r.get_den().get_mpz_t(), p));
  if (den == 0)
    throw input_error("rational coefficient has a denominator divisible by the field characteristic");
  return mul(from_int(num), inv(from_int(den)));
}

Int gl_order(const DimVector& gamma, long q) {
  Int total(1);
  for (long n : gamma) {
    if (n < 0) throw input_error("dimension vector has a negative entry");
    if (n == 0) continue;
    Int f = int_pow(Int(q), static_cast<unsigned long>(n * (n - 1) / 2));
    for (long i = 1; i <= n; ++i) f *= int_pow(Int(q), static_cast<unsigned long>(i)) - 1;
    total *= f;
  }
  return total;
}

} // namespace qbps
