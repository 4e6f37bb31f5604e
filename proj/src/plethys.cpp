#include "qbps/plethys.hpp"

#include <optional>
#include <set>

#include "qbps/errors.hpp"

namespace qbps {

SeriesS adams(const SeriesS& f, long n) {
  SeriesS r;
  r.G = f.G;
  r.nv = f.nv;
  for (const auto& [g, v] : f.coeff) {
    DimVector s(g.size());
    long tot = 0;
    for (size_t i = 0; i < g.size(); ++i) {
      s[i] = g[i] * n;
      tot += s[i];
    }
    if (tot > f.G) continue;
    r.set(s, v.adams(n));
  }
  return r;
}

SeriesS exp_series(const SeriesS& f) {
  DimVector z(f.nv, 0);
  if (!f.get(z).is_zero()) throw input_error("series constant term is not 0");
  SeriesS u;
  u.G = f.G;
  u.nv = f.nv;
  for (long n = 1; n <= f.G; ++n) {
    SeriesS pf = adams(f, n);
    Rat c(1, n);
    for (const auto& [g, v] : pf.coeff) u.set(g, u.get(g) + v * c);
  }
  return classical_exp(u, Laurent::constant(Rat(1)));
}

SeriesS log_series(const SeriesS& g) {
  SeriesS l = classical_log(g, Laurent::constant(Rat(1)));
  SeriesS r;
  r.G = g.G;
  r.nv = g.nv;
  for (long n = 1; n <= g.G; ++n) {
    long mu = mobius(n);
    if (mu == 0) continue;
    SeriesS pl = adams(l, n);
    Rat c(mu, n);
    for (const auto& [gm, v] : pl.coeff) r.set(gm, r.get(gm) + v * c);
  }
  return r;
}

SeriesQ adams_numeric(const SeriesProvider& provider, int n, int G, long q) {
  SeriesQ gn = provider(n);
  SeriesQ r;
  r.G = G;
  r.nv = gn.nv;
  for (const auto& [g, v] : gn.coeff) {
    DimVector s(g.size());
    long tot = 0;
    for (size_t i = 0; i < g.size(); ++i) {
      s[i] = g[i] * n;
      tot += s[i];
    }
    if (tot > G) continue;
    QNum e = embed_power_base(v, n, q);
    if (!e.is_zero()) r.set(s, e);
  }
  return r;
}

SeriesQ log_series_numeric(const SeriesProvider& provider, int G, long q) {
  SeriesQ r;
  r.G = G;
  r.nv = 0;
  bool have_nv = false;
  for (int n = 1; n <= G; ++n) {
    long mu = mobius(n);
    if (mu == 0) continue;
    SeriesQ gn = provider(n);
    if (!have_nv) {
      r.nv = gn.nv;
      have_nv = true;
    }
    long qn = pow_checked(q, n);
    QNum one(qn, Rat(1), Rat(0));
    SeriesQ ln = classical_log(gn, one);
    Rat c(mu, n);
    for (const auto& [gm, v] : ln.coeff) {
      DimVector s(gm.size());
      long tot = 0;
      for (size_t i = 0; i < gm.size(); ++i) {
        s[i] = gm[i] * n;
        tot += s[i];
      }
      if (tot > G) continue;
      QNum e = embed_power_base(v, n, q) * c;
      if (e.is_zero()) continue;
      r.set(s, r.get(s) + e);
    }
  }
  return r;
}

SeriesQ exp_series_numeric(const SeriesProvider& provider, int G, long q) {
  SeriesQ u;
  u.G = G;
  u.nv = 0;
  bool have_nv = false;
  for (int n = 1; n <= G; ++n) {
    SeriesQ fn = provider(n);
    if (!have_nv) {
      u.nv = fn.nv;
      have_nv = true;
    }
    Rat c(1, n);
    for (const auto& [gm, v] : fn.coeff) {
      DimVector s(gm.size());
      long tot = 0;
      for (size_t i = 0; i < gm.size(); ++i) {
        s[i] = gm[i] * n;
        tot += s[i];
      }
      if (tot > G) continue;
      QNum e = embed_power_base(v, n, q) * c;
      if (e.is_zero()) continue;
      u.set(s, u.get(s) + e);
    }
  }
  return classical_exp(u, QNum(q, Rat(1), Rat(0)));
}

namespace {

// reduced row echelon solve; nullopt when the system is inconsistent, free
// variables (only possible with repeated sample fields) are set to zero
std::optional<std::vector<Rat>> solve_consistent(std::vector<std::vector<Rat>> A,
                                                 std::vector<Rat> b, int cols) {
  int rows = static_cast<int>(A.size());
  std::vector<int> pivot_row(cols, -1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (A[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(A[r], A[sel]);
    std::swap(b[r], b[sel]);
    Rat inv = 1 / A[r][c];
    for (int j = c; j < cols; ++j) A[r][j] *= inv;
    b[r] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rat f = A[i][c];
      for (int j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivot_row[c] = r;
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (int c = 0; c < cols; ++c)
    if (pivot_row[c] >= 0) x[c] = b[pivot_row[c]];
  return x;
}

} // namespace

Laurent interpolate_laurent(const std::vector<std::pair<long, QNum>>& samples, long B,
                            bool force_paired) {
  if (samples.empty()) throw input_error("interpolation needs at least one sampled field");
  if (B < 0) throw input_error("interpolation window bound must be nonnegative");
  {
    std::set<long> qs;
    for (const auto& [q, v] : samples) {
      if (q < 2) throw input_error("sampled field size must be at least 2");
      if (!qs.insert(q).second) throw input_error("sampled fields must be distinct");
    }
  }
  int S = static_cast<int>(samples.size());
  Laurent out;
  for (int parity = 0; parity <= 1; ++parity) {
    std::vector<long> full;
    for (long e = -B; e <= B; ++e)
      if (((e % 2) + 2) % 2 == parity) full.push_back(e);
    std::vector<Rat> rhs;
    for (const auto& [q, v] : samples) rhs.push_back(parity == 0 ? v.a : v.b);
    if (full.empty()) {
      for (const auto& t : rhs)
        if (t != 0)
          throw budget_error(
              "sampled values fall outside the interpolation window; "
              "enlarging the congruence modulus may help");
      continue;
    }
    std::vector<long> exps;
    bool paired = force_paired || S < static_cast<int>(full.size());
    if (paired) {
      for (long e : full)
        if (e >= 0) exps.push_back(e);
      if (S < static_cast<int>(exps.size()))
        throw budget_error("not enough sampled fields for the interpolation window");
    } else {
      exps = full;
    }
    std::vector<std::vector<Rat>> A;
    for (const auto& [q, v] : samples) {
      std::vector<Rat> row;
      Rat qr(q);
      for (long e : exps) {
        Rat cell;
        if (parity == 0) {
          cell = rat_pow(qr, e / 2);
          if (paired && e > 0) cell += rat_pow(qr, -e / 2);
        } else {
          cell = -rat_pow(qr, (e - 1) / 2);
          if (paired) cell += -rat_pow(qr, (-e - 1) / 2);
        }
        row.push_back(cell);
      }
      A.push_back(std::move(row));
    }
    auto sol = solve_consistent(std::move(A), std::move(rhs), static_cast<int>(exps.size()));
    if (!sol)
      throw budget_error(
          "sampled counts are not polynomial across the fields; "
          "enlarging the congruence modulus may help");
    for (size_t i = 0; i < exps.size(); ++i) {
      Rat c = (*sol)[i];
      if (c == 0) continue;
      if (!is_integer(c))
        throw budget_error(
            "interpolated coefficients are not integers; "
            "enlarging the congruence modulus may help");
      out.set(exps[i], out.get(exps[i]) + c);
      if (paired && exps[i] != 0) out.set(-exps[i], c);
    }
  }
  return out;
}

} // namespace qbps
