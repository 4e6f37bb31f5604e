#include "qbps/dtbps.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qbps {

long effective_modulus(const Quiver& Q, const Potential& W) {
  if (W.zero()) return 1;
  auto qh = qh_weights(Q, W);
  if (!qh) throw input_error("the congruence modulus needs a quasi-homogeneous potential");
  long M = qh->degree;
  if (M == 2) return 4;
  return M;
}

std::vector<long> auto_fields(long M, int count) {
  if (M < 1) throw input_error("the congruence modulus must be positive");
  if (count < 1) throw input_error("at least one sample field is required");
  std::vector<long> out;
  for (long q = 2; static_cast<int>(out.size()) < count; ++q) {
    if (q > 2000000) throw budget_error("no suitable sample fields below 2000000");
    if ((q - 1) % M != 0) continue;
    if (is_square(q)) continue;
    long p;
    int k;
    if (!prime_power(q, p, k)) continue;
    out.push_back(q);
  }
  return out;
}

long interpolation_bound(const Quiver& Q, const DimVector& gamma) {
  long b = 2 - euler_form(Q, gamma, gamma);
  return b > 0 ? b : 0;
}

namespace {

// a potential word contributes nothing on gamma when some arrow endpoint has
// dimension zero
bool words_all_dead(const Quiver& Q, const Potential& W, const DimVector& g) {
  for (const auto& [w, c] : W.terms) {
    bool alive = true;
    for (int a : w) {
      if (g[Q.arrows[a].source] == 0 || g[Q.arrows[a].target] == 0) {
        alive = false;
        break;
      }
    }
    if (alive) return false;
  }
  return true;
}

void congruence_gate(const Quiver& Q, const Potential& W, long q) {
  long M = effective_modulus(Q, W);
  if ((q - 1) % M != 0)
    throw budget_error("field size " + std::to_string(q) +
                       " violates the congruence requirement q = 1 mod " + std::to_string(M));
}

QNum stack_coefficient(const Quiver& Q, const Potential& W, const DimVector& g, long q,
                       std::optional<FiniteField>& F, const CountOptions& co) {
  long D = rep_dim(Q, g);
  long chi = euler_form(Q, g, g);
  QNum emon(q);
  if (D == 0) {
    emon = QNum(q, Rat(1), Rat(0));
  } else if (W.zero() || words_all_dead(Q, W, g)) {
    emon = QNum(q, rat_pow(Rat(q), D), Rat(0));
  } else {
    if (!F) F.emplace(field_make_q(q));
    emon = count_carrier(exp_sum_count(Q, W, g, *F, co));
  }
  return (emon * h_pow(q, chi)) / Rat(gl_order(g, q));
}

// memoizes per-sector stack coefficients so staged extraction and resampling at
// prime powers never count the same sector twice
struct StackCache {
  const Quiver& Q;
  const Potential& W;
  CountOptions co;
  std::map<long, std::optional<FiniteField>> field_of;
  std::map<std::pair<long, DimVector>, QNum> memo;

  QNum coeff(long q, const DimVector& g) {
    auto key = std::make_pair(q, g);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    QNum v = stack_coefficient(Q, W, g, q, field_of[q], co);
    memo.emplace(std::move(key), v);
    return v;
  }

  SeriesQ series(int G, long q) {
    SeriesQ r;
    r.G = G;
    r.nv = Q.vertex_count;
    r.set(DimVector(Q.vertex_count, 0), QNum(q, Rat(1), Rat(0)));
    for (const auto& g : sectors_up_to(Q.vertex_count, G)) r.set(g, coeff(q, g));
    return r;
  }
};

} // namespace

SeriesQ stack_series(const Quiver& Q, const Potential& W, int G, long q,
                     const PipelineOptions& opt) {
  Q.validate();
  if (G < 0) throw input_error("the truncation order must be nonnegative");
  if (q < 2) throw input_error("sample fields must have at least two elements");
  congruence_gate(Q, W, q);
  SeriesQ r;
  r.G = G;
  r.nv = Q.vertex_count;
  r.set(DimVector(Q.vertex_count, 0), QNum(q, Rat(1), Rat(0)));
  std::optional<FiniteField> F;
  CountOptions co;
  co.jobs = opt.jobs;
  co.budget = opt.budget;
  for (const auto& g : sectors_up_to(Q.vertex_count, G))
    r.set(g, stack_coefficient(Q, W, g, q, F, co));
  return r;
}

SeriesQ framed_series(const Quiver& Q, const Potential& W, int m, int G, long q,
                      const PipelineOptions& opt) {
  Q.validate();
  if (m < 1) throw input_error("the framing rank must be positive");
  if (G < 0) throw input_error("the truncation order must be nonnegative");
  if (q < 2) throw input_error("sample fields must have at least two elements");
  congruence_gate(Q, W, q);
  SeriesQ r;
  r.G = G;
  r.nv = Q.vertex_count;
  r.set(DimVector(Q.vertex_count, 0), QNum(q, Rat(1), Rat(0)));
  std::optional<FiniteField> F;
  CountOptions co;
  co.jobs = opt.jobs;
  co.budget = opt.budget;
  for (const auto& g : sectors_up_to(Q.vertex_count, G)) {
    long chi = euler_form(Q, g, g);
    if (!F) F.emplace(field_make_q(q));
    CountReport rep = framed_exp_sum_count(Q, W, g, m, *F, co);
    QNum emon = count_carrier(rep);
    QNum v = (emon * h_pow(q, chi - static_cast<long>(m) * total(g))) / Rat(gl_order(g, q));
    r.set(g, v);
  }
  return r;
}

std::map<DimVector, QNum> omega_samples(const Quiver& Q, const Potential& W, int G, long q,
                                        const PipelineOptions& opt) {
  SeriesProvider provider = [&](int n) {
    long qn = pow_checked(q, n);
    return stack_series(Q, W, G / n, qn, opt);
  };
  SeriesQ L = log_series_numeric(provider, G, q);
  std::map<DimVector, QNum> out;
  Rat qm1(q - 1);
  for (const auto& g : sectors_up_to(Q.vertex_count, G)) {
    QNum v = L.get(g) * qm1;
    out[g] = div_by_h(v);
  }
  return out;
}

const BpsEntry* BpsTable::find(const DimVector& gamma) const {
  for (const auto& e : entries)
    if (e.gamma == gamma) return &e;
  return nullptr;
}

BpsTable bps_extract(const Quiver& Q, const Potential& W, int G,
                     const std::vector<long>& fields, const PipelineOptions& opt) {
  Q.validate();
  if (!Q.symmetric()) throw input_error("refined invariants need a symmetric quiver");
  if (G < 1) throw input_error("the truncation order must be at least 1");
  if (fields.empty()) throw input_error("at least one sample field is required");
  BpsTable T;
  T.fields = fields;
  T.G = G;
  T.modulus = effective_modulus(Q, W);
  for (long q : fields) congruence_gate(Q, W, q);
  CountOptions co;
  co.jobs = opt.jobs;
  co.budget = opt.budget;
  StackCache cache{Q, W, co, {}, {}};
  // staged by total degree, so a violated vanishing assertion in a small sector
  // aborts the run before larger sectors are counted
  for (int L = 1; L <= G; ++L) {
    std::vector<std::map<DimVector, QNum>> samples;
    for (long q : fields) {
      SeriesProvider provider = [&](int n) { return cache.series(L / n, pow_checked(q, n)); };
      SeriesQ lg = log_series_numeric(provider, L, q);
      std::map<DimVector, QNum> out;
      Rat qm1(q - 1);
      for (const auto& g : sectors_up_to(Q.vertex_count, L))
        if (total(g) == L) out[g] = div_by_h(lg.get(g) * qm1);
      samples.push_back(std::move(out));
    }
    for (const auto& g : sectors_up_to(Q.vertex_count, L)) {
      if (total(g) != L) continue;
      BpsEntry e;
      e.gamma = g;
      e.simple_sector = simple_exists(Q, g);
      if (e.simple_sector) {
        std::vector<std::pair<long, QNum>> pts;
        for (size_t j = 0; j < fields.size(); ++j) pts.push_back({fields[j], samples[j].at(g)});
        e.omega = interpolate_laurent(pts, interpolation_bound(Q, g));
        Rat v = e.omega.eval_one();
        if (!is_integer(v)) throw internal_error("interpolated invariant is not integral");
        e.omega_num = Int(v.get_num());
      } else if (opt.window_only) {
        e.vanishing_by_criterion = true;
        e.omega_num = 0;
      } else {
        for (size_t j = 0; j < fields.size(); ++j) {
          const QNum& v = samples[j].at(g);
          if (!v.is_zero())
            throw budget_error("sector " + dim_str(g) +
                               " admits no simple representation but measured values are nonzero (" +
                               qnum_str(v) + " at q=" + std::to_string(fields[j]) +
                               "); enlarging the congruence modulus may help");
        }
        e.omega_num = 0;
      }
      e.positive = e.omega.nonnegative();
      e.palindromic = e.omega.palindromic();
      if (opt.certified_finite && e.simple_sector && (!e.positive || !e.palindromic))
        throw theorem_error("sector " + dim_str(g) +
                            " of a certified run has a negative or non-palindromic invariant: " +
                            e.omega.str());
      T.entries.push_back(std::move(e));
    }
  }
  std::sort(T.entries.begin(), T.entries.end(),
            [](const BpsEntry& a, const BpsEntry& b) { return a.gamma < b.gamma; });
  return T;
}

bool Report::passed() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

Report verify_theoremB(const Quiver& Q, const Potential& W, const BpsTable& bps,
                       const FinitenessCertificate& cert) {
  (void)Q;
  (void)W;
  Report rep;
  {
    ReportEntry e;
    e.check = "nonnegative coefficients";
    std::string bad;
    for (const auto& en : bps.entries) {
      if (en.omega.nonnegative()) continue;
      if (!bad.empty()) bad += ", ";
      bad += dim_str(en.gamma) + ": " + en.omega.str();
    }
    e.pass = bad.empty();
    e.lhs = e.pass ? "all sectors" : bad;
    e.rhs = "coefficients >= 0";
    rep.entries.push_back(e);
  }
  {
    ReportEntry e;
    e.check = "palindromic invariants";
    std::string bad;
    for (const auto& en : bps.entries) {
      if (en.omega.palindromic()) continue;
      if (!bad.empty()) bad += ", ";
      bad += dim_str(en.gamma) + ": " + en.omega.str();
    }
    e.pass = bad.empty();
    e.lhs = e.pass ? "all sectors" : bad;
    e.rhs = "omega(s) = omega(1/s)";
    rep.entries.push_back(e);
  }
  {
    ReportEntry e;
    e.check = "support in the simple window";
    std::string bad;
    for (const auto& en : bps.entries) {
      if (en.simple_sector || en.omega.is_zero()) continue;
      if (!bad.empty()) bad += ", ";
      bad += dim_str(en.gamma) + ": " + en.omega.str();
    }
    e.pass = bad.empty();
    e.lhs = e.pass ? "all sectors outside the window vanish" : bad;
    e.rhs = "0";
    rep.entries.push_back(e);
  }
  {
    ReportEntry e;
    e.check = "dimension sum rule";
    Int sum(0);
    for (const auto& en : bps.entries) {
      Int t(total(en.gamma));
      sum += en.omega_num * t * t;
    }
    e.lhs = sum.get_str();
    if (!cert.certified) {
      e.pass = false;
      e.rhs = "uncertified quotient dimension";
    } else {
      e.pass = sum == Int(cert.dim_total);
      e.rhs = std::to_string(cert.dim_total);
    }
    rep.entries.push_back(e);
  }
  return rep;
}

Laurent framing_factor(long N) {
  if (N < 1) throw input_error("the framing rank must be positive");
  Rat sign((N % 2 == 0) ? -1 : 1);
  Laurent r;
  for (long j = 0; j < N; ++j) r.set(2 * j - N + 1, sign);
  return r;
}

std::vector<Int> framed_product(const std::vector<Int>& omega_by_rank, int m, int G) {
  if (m < 1) throw input_error("the framing rank must be positive");
  if (G < 0) throw input_error("the truncation order must be nonnegative");
  // factor for rank i: (1 + sigma t^i)^k with sigma = -(-1)^m and k = m i w_i
  long sigma = (m % 2 == 0) ? -1 : 1;
  std::vector<Int> c(G + 1, Int(0));
  c[0] = 1;
  for (int i = 1; i <= G; ++i) {
    Int w = (i < static_cast<int>(omega_by_rank.size())) ? omega_by_rank[i] : Int(0);
    Int k = Int(m) * i * w;
    if (k == 0) continue;
    std::vector<Int> f(G + 1, Int(0));
    f[0] = 1;
    Int bin(1);
    for (int j = 1; static_cast<long>(j) * i <= G; ++j) {
      // binomial recurrence C(k, j) = C(k, j-1) (k - j + 1) / j, exact for any
      // integer k, including negative exponents
      bin = bin * (k - (j - 1)) / j;
      Int term = bin;
      if (sigma < 0 && j % 2 == 1) term = -term;
      f[static_cast<size_t>(j) * i] = term;
    }
    std::vector<Int> nc(G + 1, Int(0));
    for (int a = 0; a <= G; ++a) {
      if (c[a] == 0) continue;
      for (int b = 0; a + b <= G; ++b) {
        if (f[b] == 0) continue;
        nc[a + b] += c[a] * f[b];
      }
    }
    c = std::move(nc);
  }
  return c;
}

Report framed_exp_check(const Quiver& Q, const Potential& W, int m, int G,
                        const std::vector<long>& fields, const BpsTable& bps,
                        const PipelineOptions& opt) {
  Q.validate();
  if (Q.vertex_count != 1) throw input_error("the framed product check needs a one-vertex quiver");
  if (m < 1) throw input_error("the framing rank must be positive");
  if (G < 1) throw input_error("the truncation order must be at least 1");
  if (fields.empty()) throw input_error("at least one sample field is required");
  if (bps.G < G) throw input_error("the invariant table does not cover the requested truncation");
  Report rep;
  std::vector<Int> om(G + 1, Int(0));
  for (int r = 1; r <= G; ++r) {
    const BpsEntry* e = bps.find({static_cast<long>(r)});
    if (e) om[r] = e->omega_num;
  }
  std::vector<Int> prod = framed_product(om, m, G);
  std::vector<SeriesQ> lhs;
  for (long q : fields) lhs.push_back(framed_series(Q, W, m, G, q, opt));
  bool even = (m % 2 == 0);
  for (int n = 1; n <= G; ++n) {
    DimVector g{static_cast<long>(n)};
    if (!even) {
      // measured carrier values evaluated at s = 1 are read off componentwise
      ReportEntry e;
      e.check = "chi shadow t^" + std::to_string(n);
      bool ok = true;
      std::string ls;
      for (size_t j = 0; j < fields.size(); ++j) {
        QNum v = lhs[j].get(g);
        Rat chi = v.a + v.b;
        if (!ls.empty()) ls += ", ";
        ls += rat_str(chi) + " at q=" + std::to_string(fields[j]);
        if (chi != Rat(prod[n])) ok = false;
      }
      e.pass = ok;
      e.lhs = ls;
      e.rhs = prod[n].get_str();
      rep.entries.push_back(e);
    } else {
      // reconstruct the coefficient as a Laurent polynomial in s across the
      // sampled fields, then specialize s = 1
      ReportEntry e;
      e.check = "interpolated chi t^" + std::to_string(n);
      std::vector<std::pair<long, QNum>> pts;
      for (size_t j = 0; j < fields.size(); ++j) pts.push_back({fields[j], lhs[j].get(g)});
      long Bfr = 2 * (static_cast<long>(fields.size()) - 1);
      try {
        Laurent P = interpolate_laurent(pts, Bfr, true);
        Rat v = P.eval_one();
        e.pass = v == Rat(prod[n]);
        e.lhs = rat_str(v) + " from " + P.str();
      } catch (const budget_error& ex) {
        e.pass = false;
        e.lhs = std::string("interpolation failed: ") + ex.what();
      }
      e.rhs = prod[n].get_str();
      rep.entries.push_back(e);
    }
  }
  if (even) {
    SeriesS arg;
    arg.G = G;
    arg.nv = 1;
    for (int r = 1; r <= G; ++r) {
      const BpsEntry* e = bps.find({static_cast<long>(r)});
      if (!e || e->omega.is_zero()) continue;
      arg.set({static_cast<long>(r)}, e->omega * framing_factor(static_cast<long>(m) * r));
    }
    SeriesS rhs = exp_series(arg);
    for (int n = 1; n <= G; ++n) {
      ReportEntry e;
      e.check = "structural chi t^" + std::to_string(n);
      Rat v = rhs.get({static_cast<long>(n)}).eval_one();
      e.pass = v == Rat(prod[n]);
      e.lhs = rat_str(v);
      e.rhs = prod[n].get_str();
      rep.entries.push_back(e);
    }
    for (size_t j = 0; j < fields.size(); ++j) {
      long q = fields[j];
      SeriesProvider provider = [&](int k) {
        long qk = pow_checked(q, k);
        int Gk = G / k;
        std::map<DimVector, QNum> oms = omega_samples(Q, W, Gk, qk, opt);
        SeriesQ f;
        f.G = Gk;
        f.nv = 1;
        for (const auto& [gm, v] : oms) {
          if (v.is_zero()) continue;
          QNum c = framing_factor(static_cast<long>(m) * total(gm)).eval_neg_sqrt(qk);
          f.set(gm, v * c);
        }
        return f;
      };
      SeriesQ rq = exp_series_numeric(provider, G, q);
      for (int n = 1; n <= G; ++n) {
        DimVector g{static_cast<long>(n)};
        ReportEntry e;
        e.check = "numeric t^" + std::to_string(n) + " at q=" + std::to_string(q);
        QNum l = lhs[j].get(g);
        QNum r = rq.get(g);
        e.pass = l == r;
        e.lhs = qnum_str(l);
        e.rhs = qnum_str(r);
        rep.entries.push_back(e);
      }
    }
  }
  return rep;
}

std::vector<GvRow> gv_table(const Quiver& Q, const Potential& W, int r_max,
                            std::optional<long> length_bound, const std::vector<long>& fields,
                            const PipelineOptions& opt) {
  Q.validate();
  if (Q.vertex_count != 1) throw input_error("the curve-counting table needs a one-vertex quiver");
  if (r_max < 1) throw input_error("the rank bound must be at least 1");
  FinitenessCertificate cert;
  for (int n_max : {8, 16, 32, 64}) {
    try {
      cert = finiteness_certificate(truncated_dim_profile(Q, W, n_max));
    } catch (const budget_error&) {
      // a workspace refusal only gets worse at larger truncations
      break;
    }
    if (cert.certified) break;
  }
  if (!cert.certified)
    throw input_error("the quotient algebra did not certify finite dimension within truncation 64");
  BpsTable bps = bps_extract(Q, W, r_max, fields, opt);
  std::vector<GvRow> rows;
  for (int r = 1; r <= r_max; ++r) {
    GvRow row;
    row.r = r;
    const BpsEntry* e = bps.find({static_cast<long>(r)});
    if (e) {
      row.gv_num = e->omega_num;
      row.gv_refined = e->omega;
    } else {
      row.gv_num = 0;
    }
    if (length_bound && r > *length_bound && row.gv_num != 0)
      throw theorem_error("nonzero invariant in rank " + std::to_string(r) +
                          " beyond the length bound " + std::to_string(*length_bound));
    if (r == 1) {
      auto qh = qh_weights(Q, W);
      if (qh) {
        try {
          CommPoly f = abelianize(Q, W, DimVector(Q.vertex_count, 1));
          if (!f.vars.empty() && f.vars.size() <= 2) {
            std::vector<long> w;
            for (const auto& vn : f.vars) w.push_back(qh->weights[Q.arrow_index(vn)]);
            SpectrumTable S = steenbrink_spectrum(w, qh->degree);
            BivariatePoly P = refined_gv_poly(S);
            row.gv_bivariate = P;
            row.gv_wtm = specialize_wtm(P);
            row.gv_chi = specialize_chi(P);
            if (Int(*row.gv_chi) != row.gv_num)
              throw theorem_error("the spectrum Euler number " + std::to_string(*row.gv_chi) +
                                  " disagrees with the measured rank-1 invariant " +
                                  row.gv_num.get_str());
          }
        } catch (const input_error&) {
          // no diagonal singularity model in this shape; the numeric column
          // stands on its own
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace qbps
