#pragma once
#include <functional>
#include <map>
#include <vector>

#include "qbps/carrier.hpp"
#include "qbps/laurent.hpp"
#include "qbps/quiver.hpp"

namespace qbps {

// Truncated series graded by dimension vector; the coefficient ring C is
// either the symbolic Laurent ring in s or the numeric quadratic carrier.
template <class C>
struct GradedSeries {
  int G = 0;
  int nv = 0;                   // dimension-vector length
  std::map<DimVector, C> coeff; // zero coefficients may be omitted

  C get(const DimVector& g) const {
    auto it = coeff.find(g);
    return it == coeff.end() ? C() : it->second;
  }
  void set(const DimVector& g, const C& v) {
    if (v.is_zero())
      coeff.erase(g);
    else
      coeff[g] = v;
  }
};

using SeriesS = GradedSeries<Laurent>;
using SeriesQ = GradedSeries<QNum>;

template <class C>
GradedSeries<C> series_mul(const GradedSeries<C>& f, const GradedSeries<C>& g) {
  GradedSeries<C> r;
  r.G = f.G;
  r.nv = f.nv;
  for (const auto& [g1, v1] : f.coeff)
    for (const auto& [g2, v2] : g.coeff) {
      long tot = 0;
      DimVector s(g1.size());
      for (size_t i = 0; i < g1.size(); ++i) {
        s[i] = g1[i] + g2[i];
        tot += s[i];
      }
      if (tot > r.G) continue;
      r.set(s, r.get(s) + v1 * v2);
    }
  return r;
}

// classical log of a series with constant coefficient 1
template <class C>
GradedSeries<C> classical_log(const GradedSeries<C>& g, const C& one) {
  GradedSeries<C> u = g;
  DimVector z(g.nv, 0);
  if (!(u.get(z) == one)) throw input_error("series constant term is not 1");
  u.set(z, C()); // u = g - 1
  GradedSeries<C> acc = u, power = u;
  // log(1+u) = sum (-1)^{k+1} u^k / k
  for (int k = 2; k <= g.G; ++k) {
    power = series_mul(power, u);
    if (power.coeff.empty()) break;
    Rat c = Rat((k % 2 == 0) ? -1 : 1) / Rat(k);
    for (const auto& [gm, v] : power.coeff) acc.set(gm, acc.get(gm) + v * c);
  }
  return acc;
}

// classical exp of a series with zero constant coefficient
template <class C>
GradedSeries<C> classical_exp(const GradedSeries<C>& f, const C& one) {
  DimVector z(f.nv, 0);
  if (!f.get(z).is_zero()) throw input_error("series constant term is not 0");
  GradedSeries<C> r;
  r.G = f.G;
  r.nv = f.nv;
  r.set(z, one);
  GradedSeries<C> power;
  power.G = f.G;
  power.nv = f.nv;
  power.set(z, one);
  Rat fact(1);
  for (int k = 1; k <= f.G; ++k) {
    power = series_mul(power, f);
    if (power.coeff.empty()) break;
    fact *= k;
    Rat c = Rat(1) / fact;
    for (const auto& [gm, v] : power.coeff) r.set(gm, r.get(gm) + v * c);
  }
  return r;
}

// symbolic Adams operation: t^gamma -> t^{n gamma}, s -> s^n
SeriesS adams(const SeriesS& f, long n);
// plethystic Exp and Log on symbolic series
SeriesS exp_series(const SeriesS& f);
SeriesS log_series(const SeriesS& g);

// numeric carriers: the n-th Adams operation resamples the underlying counts
// at base q^n; the provider returns the series at base q^n truncated to G/n
using SeriesProvider = std::function<SeriesQ(int)>;

SeriesQ adams_numeric(const SeriesProvider& provider, int n, int G, long q);
SeriesQ log_series_numeric(const SeriesProvider& provider, int G, long q);
// numeric Exp of an argument series with no constant term; the provider
// returns the argument resampled at base q^k and truncated to G/k
SeriesQ exp_series_numeric(const SeriesProvider& provider, int G, long q);

// Laurent reconstruction from values at s_j = -sqrt(q_j). Per parity class the
// solver uses the full exponent window in [-B, B] when the sample count allows
// it, and otherwise falls back to palindromically paired unknowns c_e = c_{-e};
// force_paired always uses the paired form, so extra samples act as
// consistency checks. Exact solvability and integrality are asserted.
Laurent interpolate_laurent(const std::vector<std::pair<long, QNum>>& samples, long B,
                            bool force_paired = false);

} // namespace qbps
