#include "qbps/count.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "qbps/errors.hpp"

namespace qbps {
namespace {

struct PlanWord {
  std::vector<int> arrows;
  Rat coeff;
};

// shared evaluation layout for one (quiver, potential, dimension vector)
struct Plan {
  std::vector<PlanWord> words; // words whose path stays in positive dimensions
  std::vector<long> rows, cols;
  long maxcells = 0; // scratch size bound
  std::vector<std::pair<int, long>> cells; // (arrow, flat offset), enumeration order
};

Plan make_plan(const Quiver& Q, const Potential& W, const DimVector& g) {
  Plan P;
  long maxdim = 0;
  for (long x : g) maxdim = std::max(maxdim, x);
  P.maxcells = maxdim * maxdim;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    P.rows.push_back(g[Q.arrows[a].target]);
    P.cols.push_back(g[Q.arrows[a].source]);
    for (long o = 0; o < P.rows[a] * P.cols[a]; ++o)
      P.cells.push_back({static_cast<int>(a), o});
  }
  for (const auto& [word, coeff] : W.terms) {
    bool alive = true;
    for (int a : word)
      if (P.rows[a] == 0 || P.cols[a] == 0) alive = false;
    if (alive) P.words.push_back({word, coeff});
  }
  return P;
}

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long qt = r / nr;
    t -= qt * nt;
    std::swap(t, nt);
    r -= qt * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw internal_error("non invertible residue");
  return t < 0 ? t + p : t;
}

// trace evaluation over integers mod p with preallocated scratch
struct ModPEval {
  const Plan* plan;
  long p;
  std::vector<long> coeff_mod;
  std::vector<long> sa, sb;

  ModPEval(const Plan& pl, long p_) : plan(&pl), p(p_), sa(pl.maxcells), sb(pl.maxcells) {
    for (const auto& w : pl.words) {
      long num = static_cast<long>(mpz_fdiv_ui(w.coeff.get_num().get_mpz_t(), p));
      long den = static_cast<long>(mpz_fdiv_ui(w.coeff.get_den().get_mpz_t(), p));
      if (den == 0)
        throw input_error("potential coefficient has a denominator divisible by the field characteristic");
      coeff_mod.push_back(num * inv_mod(den, p) % p);
    }
  }

  long eval(const std::vector<std::vector<long>>& mats) {
    long acc = 0;
    for (size_t wi = 0; wi < plan->words.size(); ++wi) {
      const auto& word = plan->words[wi].arrows;
      int a0 = word[0];
      long r = plan->rows[a0], c = plan->cols[a0];
      const long* cur = mats[a0].data();
      long* buf = sa.data();
      long* nxt = sb.data();
      for (size_t i = 1; i < word.size(); ++i) {
        int a = word[i];
        long r2 = plan->rows[a], mid = plan->cols[a];
        const long* M = mats[a].data();
        for (long rr = 0; rr < r2; ++rr)
          for (long cc = 0; cc < c; ++cc) {
            long s = 0;
            for (long k = 0; k < mid; ++k) s += M[rr * mid + k] * cur[k * c + cc];
            nxt[rr * c + cc] = s % p;
          }
        cur = nxt;
        std::swap(buf, nxt);
        r = r2;
      }
      long tr = 0;
      for (long i = 0; i < r; ++i) tr += cur[i * c + i];
      acc = (acc + coeff_mod[wi] * (tr % p)) % p;
    }
    return acc;
  }
};

// trace evaluation over a log-table field
struct FqEval {
  const Plan* plan;
  const FiniteField* F;
  std::vector<uint16_t> coeff_el;
  std::vector<uint16_t> sa, sb;

  FqEval(const Plan& pl, const FiniteField& f)
      : plan(&pl), F(&f), sa(pl.maxcells), sb(pl.maxcells) {
    for (const auto& w : pl.words) coeff_el.push_back(F->from_rat(w.coeff));
  }

  uint16_t eval(const std::vector<std::vector<uint16_t>>& mats) {
    uint16_t acc = 0;
    for (size_t wi = 0; wi < plan->words.size(); ++wi) {
      const auto& word = plan->words[wi].arrows;
      int a0 = word[0];
      long r = plan->rows[a0], c = plan->cols[a0];
      const uint16_t* cur = mats[a0].data();
      uint16_t* buf = sa.data();
      uint16_t* nxt = sb.data();
      for (size_t i = 1; i < word.size(); ++i) {
        int a = word[i];
        long r2 = plan->rows[a], mid = plan->cols[a];
        const uint16_t* M = mats[a].data();
        for (long rr = 0; rr < r2; ++rr)
          for (long cc = 0; cc < c; ++cc) {
            uint16_t s = 0;
            for (long k = 0; k < mid; ++k) s = F->add(s, F->mul(M[rr * mid + k], cur[k * c + cc]));
            nxt[rr * c + cc] = s;
          }
        cur = nxt;
        std::swap(buf, nxt);
        r = r2;
      }
      uint16_t tr = 0;
      for (long i = 0; i < r; ++i) tr = F->add(tr, cur[i * c + i]);
      acc = F->add(acc, F->mul(coeff_el[wi], tr));
    }
    return acc;
  }
};

struct Tally {
  unsigned long long n0 = 0, n1 = 0, s = 0;
};

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// runs fn(lo, hi, tally) over contiguous chunks; exact integer tallies make the
// result independent of the chunk layout
template <class Fn>
Tally run_chunked(long outer, int jobs, const Fn& fn) {
  int n = static_cast<int>(std::max<long>(1, std::min<long>(jobs, outer == 0 ? 1 : outer)));
  std::vector<Tally> parts(n);
  std::vector<std::exception_ptr> errs(n);
  std::vector<std::thread> threads;
  for (int t = 0; t < n; ++t) {
    long lo = outer * t / n, hi = outer * (t + 1) / n;
    threads.emplace_back([&, t, lo, hi]() {
      try {
        fn(lo, hi, parts[t]);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  Tally total;
  for (const auto& p : parts) {
    total.n0 += p.n0;
    total.n1 += p.n1;
    total.s += p.s;
  }
  return total;
}

// quadratic character of a nonzero element: the generator is a non-square, so
// the sign is the parity of the discrete logarithm
int fq_chi(const FiniteField& F, uint16_t x) {
  (void)F;
  return ((x - 1) % 2 == 0) ? 1 : -1;
}

// Fiber sizes of a quadratic trace form (every alive word has length two) by
// symmetric diagonalization: with rank r and discriminant d the counts are
//   r even: N_v = q^{D-r} (q^{r-1} + chi((-1)^{r/2} d) (q^{r/2} [v=0] - q^{r/2-1}))
//   r odd:  N_0 = q^{D-1},  N_1 = q^{D-r} (q^{r-1} + chi((-1)^{(r-1)/2} d) q^{(r-1)/2})
// Odd characteristic only; no points are enumerated.
void quadratic_form_tally(const Quiver& Q, const Plan& plan, const FiniteField& F, long D,
                          Int& n0, Int& n1) {
  std::vector<char> used(Q.arrows.size(), 0);
  for (const auto& w : plan.words) {
    used[w.arrows[0]] = 1;
    used[w.arrows[1]] = 1;
  }
  std::vector<long> base(Q.arrows.size(), -1);
  long nv = 0;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    if (!used[a]) continue;
    base[a] = nv;
    nv += plan.rows[a] * plan.cols[a];
  }
  uint16_t inv2 = F.inv(F.from_int(2));
  std::vector<uint16_t> S(static_cast<size_t>(nv) * nv, 0);
  auto at = [&](long i, long j) -> uint16_t& { return S[static_cast<size_t>(i) * nv + j]; };
  for (const auto& w : plan.words) {
    int a = w.arrows[0], b = w.arrows[1];
    uint16_t c = F.mul(F.from_rat(w.coeff), inv2); // symmetrized contribution
    long rb = plan.rows[b], cb = plan.cols[b];
    long ca = plan.cols[a];
    for (long i = 0; i < rb; ++i) {
      for (long k = 0; k < cb; ++k) {
        long u = base[b] + i * cb + k;
        long v = base[a] + k * ca + i;
        at(u, v) = F.add(at(u, v), c);
        at(v, u) = F.add(at(v, u), c);
      }
    }
  }
  long rank = 0;
  int chi_delta = 1;
  for (long t = 0; t < nv; ++t) {
    if (at(t, t) == 0) {
      long pr = -1;
      for (long j = t + 1; j < nv && pr < 0; ++j)
        if (at(j, j) != 0) pr = j;
      if (pr >= 0) {
        for (long j = 0; j < nv; ++j) std::swap(at(t, j), at(pr, j));
        for (long i = 0; i < nv; ++i) std::swap(at(i, t), at(i, pr));
      } else {
        long pi = -1, pj = -1;
        for (long i2 = t; i2 < nv && pi < 0; ++i2)
          for (long j2 = i2 + 1; j2 < nv; ++j2)
            if (at(i2, j2) != 0) {
              pi = i2;
              pj = j2;
              break;
            }
        if (pi < 0) break; // the remaining block vanishes
        if (pi != t) {
          for (long j = 0; j < nv; ++j) std::swap(at(t, j), at(pi, j));
          for (long i = 0; i < nv; ++i) std::swap(at(i, t), at(i, pi));
        }
        for (long j = 0; j < nv; ++j) at(t, j) = F.add(at(t, j), at(pj, j));
        for (long i = 0; i < nv; ++i) at(i, t) = F.add(at(i, t), at(i, pj));
      }
    }
    uint16_t piv = at(t, t);
    if (piv == 0) throw internal_error("symmetric reduction lost its pivot");
    ++rank;
    chi_delta *= fq_chi(F, piv);
    uint16_t pinv = F.inv(piv);
    std::vector<uint16_t> fct(nv, 0);
    for (long i2 = t + 1; i2 < nv; ++i2) fct[i2] = F.mul(at(i2, t), pinv);
    for (long i2 = t + 1; i2 < nv; ++i2) {
      if (fct[i2] == 0) continue;
      uint16_t nf = F.neg(fct[i2]);
      for (long j2 = 0; j2 < nv; ++j2) at(i2, j2) = F.add(at(i2, j2), F.mul(nf, at(t, j2)));
    }
    for (long j2 = t + 1; j2 < nv; ++j2) {
      if (fct[j2] == 0) continue;
      uint16_t nf = F.neg(fct[j2]);
      for (long i2 = 0; i2 < nv; ++i2) at(i2, j2) = F.add(at(i2, j2), F.mul(nf, at(i2, t)));
    }
  }
  long q = F.q;
  Int qI(q);
  if (rank == 0) {
    n0 = int_pow(qI, static_cast<unsigned long>(D));
    n1 = 0;
    return;
  }
  int chi_m1 = (F.neg_one_exp % 2 == 0) ? 1 : -1;
  Int qDmr = int_pow(qI, static_cast<unsigned long>(D - rank));
  Int qr1 = int_pow(qI, static_cast<unsigned long>(rank - 1));
  if (rank % 2 == 0) {
    int eps = chi_delta * ((rank / 2) % 2 == 1 ? chi_m1 : 1);
    Int qh = int_pow(qI, static_cast<unsigned long>(rank / 2));
    Int qhm = int_pow(qI, static_cast<unsigned long>(rank / 2 - 1));
    n0 = qDmr * (qr1 + Int(eps) * (qh - qhm));
    n1 = qDmr * (qr1 - Int(eps) * qhm);
  } else {
    int eps = chi_delta * (((rank - 1) / 2) % 2 == 1 ? chi_m1 : 1);
    Int qh = int_pow(qI, static_cast<unsigned long>((rank - 1) / 2));
    n0 = qDmr * qr1;
    n1 = qDmr * (qr1 + Int(eps) * qh);
  }
}

void decode_digits(long idx, long q, std::vector<long>& digits) {
  for (long i = static_cast<long>(digits.size()) - 1; i >= 0; --i) {
    digits[i] = idx % q;
    idx /= q;
  }
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

CountReport exp_sum_count(const Quiver& Q, const Potential& W, const DimVector& gamma,
                          const FiniteField& F, const CountOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Q.validate();
  if (static_cast<int>(gamma.size()) != Q.vertex_count)
    throw input_error("dimension vector length does not match the quiver");
  for (long x : gamma)
    if (x < 0) throw input_error("dimension vector has a negative entry");

  long D = rep_dim(Q, gamma);
  long q = F.q;
  Int points = int_pow(Int(q), static_cast<unsigned long>(D));

  CountReport R;
  R.gamma = gamma;
  R.q = q;
  R.total = points;

  Plan plan = make_plan(Q, W, gamma);
  if (plan.words.empty() || D == 0) {
    // the trace form vanishes identically on this sector
    R.n0 = points;
    R.n1 = 0;
    R.e = R.n0 - R.n1;
    R.elapsed_ms = ms_since(t0);
    return R;
  }

  bool quadratic = !opt.force_table_mode && F.p != 2;
  for (const auto& w : plan.words)
    if (w.arrows.size() != 2) quadratic = false;
  if (quadratic) {
    quadratic_form_tally(Q, plan, F, D, R.n0, R.n1);
    R.e = R.n0 - R.n1;
    R.elapsed_ms = ms_since(t0);
    return R;
  }

  if (points > opt.budget)
    throw budget_error("enumeration of " + points.get_str() + " points exceeds the budget");

  long points_l = pow_checked(q, static_cast<int>(D));
  int jobs = resolve_jobs(opt.jobs);

  int inner_arrow = plan.cells.back().first;
  long deg = 0;
  for (const auto& w : plan.words) {
    long mult = static_cast<long>(std::count(w.arrows.begin(), w.arrows.end(), inner_arrow));
    deg = std::max(deg, mult);
  }

  Tally tally;
  if (F.k == 1 && !opt.force_table_mode && deg + 1 <= F.p) {
    // prime field: the trace is a polynomial of degree <= deg in the innermost
    // coordinate, stepped by forward differences
    long outer = points_l / q;
    long p = F.p;
    tally = run_chunked(outer, jobs, [&](long lo, long hi, Tally& T) {
      ModPEval ev(plan, p);
      std::vector<std::vector<long>> mats(Q.arrows.size());
      for (size_t a = 0; a < Q.arrows.size(); ++a) mats[a].assign(plan.rows[a] * plan.cols[a], 0);
      std::vector<long> digits(plan.cells.size() - 1, 0);
      std::vector<long> f(deg + 1, 0);
      auto [in_a, in_o] = plan.cells.back();
      for (long idx = lo; idx < hi; ++idx) {
        if (idx == lo) {
          decode_digits(idx, q, digits);
          for (size_t i = 0; i < digits.size(); ++i)
            mats[plan.cells[i].first][plan.cells[i].second] = digits[i];
        } else {
          long i = static_cast<long>(digits.size()) - 1;
          while (true) {
            if (++digits[i] < q) {
              mats[plan.cells[i].first][plan.cells[i].second] = digits[i];
              break;
            }
            digits[i] = 0;
            mats[plan.cells[i].first][plan.cells[i].second] = 0;
            --i;
          }
        }
        for (long t = 0; t <= deg; ++t) {
          mats[in_a][in_o] = t;
          f[t] = ev.eval(mats);
        }
        mats[in_a][in_o] = 0;
        for (long j = 1; j <= deg; ++j)
          for (long i = deg; i >= j; --i) {
            f[i] -= f[i - 1];
            if (f[i] < 0) f[i] += p;
          }
        for (long t = 0; t < p; ++t) {
          if (f[0] == 0)
            ++T.n0;
          else if (f[0] == 1)
            ++T.n1;
          for (long j = 0; j < deg; ++j) {
            f[j] += f[j + 1];
            if (f[j] >= p) f[j] -= p;
          }
        }
      }
    });
  } else {
    tally = run_chunked(points_l, jobs, [&](long lo, long hi, Tally& T) {
      FqEval ev(plan, F);
      std::vector<std::vector<uint16_t>> mats(Q.arrows.size());
      for (size_t a = 0; a < Q.arrows.size(); ++a) mats[a].assign(plan.rows[a] * plan.cols[a], 0);
      std::vector<long> digits(plan.cells.size(), 0);
      uint16_t one = F.one();
      for (long idx = lo; idx < hi; ++idx) {
        if (idx == lo) {
          decode_digits(idx, q, digits);
          for (size_t i = 0; i < digits.size(); ++i)
            mats[plan.cells[i].first][plan.cells[i].second] = static_cast<uint16_t>(digits[i]);
        } else {
          long i = static_cast<long>(digits.size()) - 1;
          while (true) {
            if (++digits[i] < q) {
              mats[plan.cells[i].first][plan.cells[i].second] = static_cast<uint16_t>(digits[i]);
              break;
            }
            digits[i] = 0;
            mats[plan.cells[i].first][plan.cells[i].second] = 0;
            --i;
          }
        }
        uint16_t v = ev.eval(mats);
        if (v == 0)
          ++T.n0;
        else if (v == one)
          ++T.n1;
      }
    });
  }

  R.n0 = Int(static_cast<unsigned long>(tally.n0));
  R.n1 = Int(static_cast<unsigned long>(tally.n1));
  R.e = R.n0 - R.n1;
  R.elapsed_ms = ms_since(t0);
  return R;
}

namespace {

// echelonized subspace bases over a log-table field, one per vertex
struct Spans {
  const FiniteField* F;
  std::vector<std::vector<std::vector<uint16_t>>> basis; // basis[v] = rows with pivot 1
  std::vector<std::vector<long>> lead;

  Spans(const FiniteField& f, const DimVector& g) : F(&f) {
    basis.resize(g.size());
    lead.resize(g.size());
  }
  void clear() {
    for (auto& b : basis) b.clear();
    for (auto& l : lead) l.clear();
  }
  // returns true when the vector enlarges the span at vertex v
  bool insert(int v, std::vector<uint16_t> vec) {
    for (size_t r = 0; r < basis[v].size(); ++r) {
      uint16_t c = vec[lead[v][r]];
      if (c == 0) continue;
      const auto& row = basis[v][r];
      for (size_t i = 0; i < vec.size(); ++i) vec[i] = F->sub(vec[i], F->mul(c, row[i]));
    }
    long pos = -1;
    for (size_t i = 0; i < vec.size(); ++i)
      if (vec[i] != 0) {
        pos = static_cast<long>(i);
        break;
      }
    if (pos < 0) return false;
    uint16_t inv = F->inv(vec[pos]);
    for (auto& x : vec) x = F->mul(x, inv);
    basis[v].push_back(std::move(vec));
    lead[v].push_back(pos);
    return true;
  }
  long rank(int v) const { return static_cast<long>(basis[v].size()); }
};

} // namespace

CountReport framed_exp_sum_count(const Quiver& Q, const Potential& W, const DimVector& gamma,
                                 int m, const FiniteField& F, const CountOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Q.validate();
  if (static_cast<int>(gamma.size()) != Q.vertex_count)
    throw input_error("dimension vector length does not match the quiver");
  for (long x : gamma)
    if (x < 0) throw input_error("dimension vector has a negative entry");
  if (m <= 0) throw input_error("framing multiplicity must be positive");

  long D = rep_dim(Q, gamma);
  long FD = m * total(gamma);
  long q = F.q;
  Int points = int_pow(Int(q), static_cast<unsigned long>(D + FD));
  if (points > opt.budget)
    throw budget_error("enumeration of " + points.get_str() + " points exceeds the budget");

  CountReport R;
  R.gamma = gamma;
  R.q = q;
  R.framed = true;
  R.m = m;

  Plan plan = make_plan(Q, W, gamma);
  long rho_count = pow_checked(q, static_cast<int>(D));
  long frame_count = pow_checked(q, static_cast<int>(FD));
  int jobs = resolve_jobs(opt.jobs);

  // framing layout: for each vertex with positive dimension, m vectors
  struct Slot {
    int vertex;
    long offset; // coordinate inside the vector
    long vec;    // which of the m vectors at this vertex
  };
  std::vector<Slot> slots;
  for (int v = 0; v < Q.vertex_count; ++v)
    for (long j = 0; j < m; ++j)
      for (long c = 0; c < gamma[v]; ++c) slots.push_back({v, c, j});

  bool wzero = plan.words.empty();

  Tally tally = run_chunked(rho_count, jobs, [&](long lo, long hi, Tally& T) {
    FqEval ev(plan, F);
    std::vector<std::vector<uint16_t>> mats(Q.arrows.size());
    for (size_t a = 0; a < Q.arrows.size(); ++a) mats[a].assign(plan.rows[a] * plan.cols[a], 0);
    std::vector<long> rdigits(plan.cells.size(), 0);
    std::vector<long> fdigits(slots.size(), 0);
    // per-vertex framing vectors, flattened as vecs[v][j * gamma[v] + c]
    std::vector<std::vector<uint16_t>> vecs(Q.vertex_count);
    for (int v = 0; v < Q.vertex_count; ++v) vecs[v].assign(m * gamma[v], 0);
    Spans spans(F, gamma);
    std::vector<std::pair<int, std::vector<uint16_t>>> work;

    auto stable = [&]() -> bool {
      // fast accept: framing vectors alone span every vertex space
      bool full = true;
      for (int v = 0; v < Q.vertex_count && full; ++v) {
        long n = gamma[v];
        if (n == 0) continue;
        if (n == 2 && m == 2) {
          const uint16_t* d = vecs[v].data();
          uint16_t det = F.sub(F.mul(d[0], d[3]), F.mul(d[1], d[2]));
          if (det == 0) full = false;
          continue;
        }
        if (n == 1) {
          bool nz = false;
          for (long j = 0; j < m; ++j)
            if (vecs[v][j] != 0) nz = true;
          if (!nz) full = false;
          continue;
        }
        spans.clear();
        for (long j = 0; j < m; ++j)
          spans.insert(v, std::vector<uint16_t>(vecs[v].begin() + j * n, vecs[v].begin() + (j + 1) * n));
        if (spans.rank(v) < n) full = false;
      }
      if (full) return true;

      // closure under the arrow action
      spans.clear();
      work.clear();
      for (int v = 0; v < Q.vertex_count; ++v) {
        long n = gamma[v];
        for (long j = 0; j < m; ++j) {
          std::vector<uint16_t> vec(vecs[v].begin() + j * n, vecs[v].begin() + (j + 1) * n);
          if (spans.insert(v, vec)) work.push_back({v, spans.basis[v].back()});
        }
      }
      while (!work.empty()) {
        auto [v, vec] = work.back();
        work.pop_back();
        for (size_t a = 0; a < Q.arrows.size(); ++a) {
          if (Q.arrows[a].source != v) continue;
          int tv = Q.arrows[a].target;
          long r = plan.rows[a], c = plan.cols[a];
          if (r == 0 || c == 0) continue;
          std::vector<uint16_t> img(r, 0);
          const uint16_t* M = mats[a].data();
          for (long rr = 0; rr < r; ++rr) {
            uint16_t s = 0;
            for (long k = 0; k < c; ++k) s = F.add(s, F.mul(M[rr * c + k], vec[k]));
            img[rr] = s;
          }
          if (spans.insert(tv, img)) work.push_back({tv, spans.basis[tv].back()});
        }
      }
      for (int v = 0; v < Q.vertex_count; ++v)
        if (spans.rank(v) < gamma[v]) return false;
      return true;
    };

    for (long idx = lo; idx < hi; ++idx) {
      if (idx == lo) {
        decode_digits(idx, q, rdigits);
        for (size_t i = 0; i < rdigits.size(); ++i)
          mats[plan.cells[i].first][plan.cells[i].second] = static_cast<uint16_t>(rdigits[i]);
      } else {
        long i = static_cast<long>(rdigits.size()) - 1;
        while (true) {
          if (++rdigits[i] < q) {
            mats[plan.cells[i].first][plan.cells[i].second] = static_cast<uint16_t>(rdigits[i]);
            break;
          }
          rdigits[i] = 0;
          mats[plan.cells[i].first][plan.cells[i].second] = 0;
          --i;
        }
      }
      uint16_t tw = wzero ? 0 : ev.eval(mats);
      bool t0c = tw == 0, t1c = tw == F.one();

      unsigned long long s = 0;
      std::fill(fdigits.begin(), fdigits.end(), 0);
      for (auto& vv : vecs) std::fill(vv.begin(), vv.end(), 0);
      for (long fidx = 0; fidx < frame_count; ++fidx) {
        if (fidx > 0) {
          long i = static_cast<long>(fdigits.size()) - 1;
          while (true) {
            const Slot& sl = slots[i];
            if (++fdigits[i] < q) {
              vecs[sl.vertex][sl.vec * gamma[sl.vertex] + sl.offset] =
                  static_cast<uint16_t>(fdigits[i]);
              break;
            }
            fdigits[i] = 0;
            vecs[sl.vertex][sl.vec * gamma[sl.vertex] + sl.offset] = 0;
            --i;
          }
        }
        if (stable()) ++s;
      }
      T.s += s;
      if (t0c) T.n0 += s;
      if (t1c) T.n1 += s;
    }
  });

  R.n0 = Int(static_cast<unsigned long>(tally.n0));
  R.n1 = Int(static_cast<unsigned long>(tally.n1));
  R.e = R.n0 - R.n1;
  R.total = Int(static_cast<unsigned long>(tally.s));

  Int gl = gl_order(gamma, q);
  if (R.n0 % gl != 0 || R.n1 % gl != 0 || R.total % gl != 0)
    throw internal_error("framed tallies are not divisible by the group order");
  R.e_over_gl = Rat(R.e) / Rat(gl);
  R.e_over_gl.canonicalize();
  R.elapsed_ms = ms_since(t0);
  return R;
}

QNum count_carrier(const CountReport& r) {
  if (r.q <= 1) throw internal_error("carrier needs a field with at least two elements");
  Rat A = Rat(r.total - r.n0) / Rat(r.q - 1);
  QNum v(r.q, Rat(r.n0) - A, Rat(r.n1) - A);
  v.a.canonicalize();
  v.b.canonicalize();
  return v;
}

} // namespace qbps
