#include "qbps/jacobi.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <utility>

#include "qbps/errors.hpp"

namespace qbps {

// monomial key: (degree, payload word), compared ascending; the least key of a
// row is its leading term
using MKey = std::pair<int, Word>;
using SRow = std::map<MKey, Rat>;

struct ElimState {
  std::map<MKey, SRow> pivots;          // leading monomial -> normalized row
  std::vector<std::vector<Word>> monos; // all monomials by degree, for certificates

  void subtract_pivot(SRow& row, const SRow& pivot, const Rat& c) const {
    for (const auto& [k, v] : pivot) {
      auto [jt, fresh] = row.try_emplace(k, Rat(0));
      jt->second -= c * v;
      if (jt->second == 0) row.erase(jt);
    }
  }

  // eliminate at the least position until it is not a pivot monomial
  void reduce_leading(SRow& row) const {
    while (!row.empty()) {
      auto it = row.begin();
      auto p = pivots.find(it->first);
      if (p == pivots.end()) return;
      subtract_pivot(row, p->second, it->second);
    }
  }

  // normal form: no pivot monomial remains anywhere in the support
  void reduce_full(SRow& row) const {
    auto it = row.begin();
    while (it != row.end()) {
      auto p = pivots.find(it->first);
      if (p == pivots.end()) {
        ++it;
        continue;
      }
      MKey at = it->first;
      subtract_pivot(row, p->second, it->second);
      it = row.upper_bound(at);
    }
  }

  void add_row(SRow row) {
    reduce_leading(row);
    if (row.empty()) return;
    Rat lead = row.begin()->second;
    if (lead != 1)
      for (auto& [k, v] : row) v /= lead;
    MKey key = row.begin()->first;
    pivots.emplace(std::move(key), std::move(row));
  }
};

namespace {

constexpr long kMonomialCap = 200000;

int word_source(const Quiver& Q, const Word& w) { return Q.arrows[w.front()].source; }
int word_target(const Quiver& Q, const Word& w) { return Q.arrows[w.back()].target; }

// composable words grouped by length; index 0 left empty (idempotents are
// handled separately)
std::vector<std::vector<Word>> paths_by_length(const Quiver& Q, int n_max) {
  std::vector<std::vector<Word>> out(n_max + 1);
  if (n_max < 1) return out;
  for (size_t a = 0; a < Q.arrows.size(); ++a) out[1].push_back({static_cast<int>(a)});
  for (int l = 2; l <= n_max; ++l) {
    for (const Word& w : out[l - 1]) {
      int t = word_target(Q, w);
      for (size_t a = 0; a < Q.arrows.size(); ++a) {
        if (Q.arrows[a].source != t) continue;
        Word ext = w;
        ext.push_back(static_cast<int>(a));
        out[l].push_back(std::move(ext));
      }
    }
    if (static_cast<long>(out[l].size()) > kMonomialCap)
      throw budget_error("path count exceeds the truncation workspace limit");
  }
  return out;
}

// exponent vectors of the given total degree in ascending lexicographic order
std::vector<std::vector<int>> exponents_of_degree(int nv, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nv, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == nv - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  if (nv == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  rec(0, degree);
  if (static_cast<long>(out.size()) > kMonomialCap)
    throw budget_error("monomial count exceeds the truncation workspace limit");
  return out;
}

} // namespace

TruncatedQuotient truncated_dim_profile(const Quiver& Q, const Potential& W, int n_max) {
  Q.validate();
  if (n_max < 0) throw input_error("truncation order must be nonnegative");
  if (!W.zero() && W.min_word_len() < 2)
    throw input_error("potential terms must have length at least 2");

  TruncatedQuotient T;
  T.Q = Q;
  T.W = W;
  T.n_max = n_max;
  T.elim = std::make_shared<ElimState>();

  if (auto qh = qh_weights(Q, W)) {
    T.qh = true;
    T.weights = qh->weights;
    T.qh_degree = qh->degree;
  }

  struct Rel {
    int src = 0, tgt = 0, minlen = INT_MAX;
    std::vector<std::pair<Word, Rat>> terms;
  };
  std::vector<Rel> rels;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    NcPolynomial d = cyclic_derivative(Q, W, static_cast<int>(a));
    if (d.terms.empty()) continue;
    Rel r;
    r.src = Q.arrows[a].target;
    r.tgt = Q.arrows[a].source;
    std::optional<long> wdeg;
    for (const auto& [w, c] : d.terms) {
      r.terms.push_back({w, c});
      r.minlen = std::min<int>(r.minlen, static_cast<int>(w.size()));
      if (T.qh) {
        long s = 0;
        for (int x : w) s += T.weights[x];
        if (wdeg && *wdeg != s)
          throw internal_error("cyclic derivative breaks the weighted grading");
        wdeg = s;
      }
    }
    rels.push_back(std::move(r));
  }

  auto paths = paths_by_length(Q, n_max);
  T.elim->monos = paths;

  // two-sided multiples p * relation * q, fed by increasing padding length
  for (int L = 0; !rels.empty() && L <= n_max; ++L) {
    for (const Rel& r : rels) {
      if (L + r.minlen > n_max) continue;
      for (int lp = 0; lp <= L; ++lp) {
        int lq = L - lp;
        std::vector<const Word*> lefts, rights;
        static const Word kEmpty;
        if (lp == 0) {
          lefts.push_back(&kEmpty);
        } else {
          for (const Word& w : paths[lp])
            if (word_target(Q, w) == r.src) lefts.push_back(&w);
        }
        if (lq == 0) {
          rights.push_back(&kEmpty);
        } else {
          for (const Word& w : paths[lq])
            if (word_source(Q, w) == r.tgt) rights.push_back(&w);
        }
        for (const Word* p : lefts)
          for (const Word* q : rights) {
            SRow row;
            for (const auto& [w, c] : r.terms) {
              int len = lp + static_cast<int>(w.size()) + lq;
              if (len > n_max) continue;
              Word m;
              m.reserve(len);
              m.insert(m.end(), p->begin(), p->end());
              m.insert(m.end(), w.begin(), w.end());
              m.insert(m.end(), q->begin(), q->end());
              MKey key{len, std::move(m)};
              auto [it, fresh] = row.try_emplace(std::move(key), Rat(0));
              it->second += c;
              if (it->second == 0) row.erase(it);
            }
            if (!row.empty()) T.elim->add_row(std::move(row));
          }
      }
    }
  }

  T.survivors.assign(n_max + 1, {});
  T.survivor_counts.assign(n_max + 1, 0);
  for (int v = 0; v < Q.vertex_count; ++v) T.survivors[0].push_back({-(v + 1)});
  T.survivor_counts[0] = Q.vertex_count;
  for (int l = 1; l <= n_max; ++l) {
    for (const Word& w : paths[l])
      if (!T.elim->pivots.count({l, w})) T.survivors[l].push_back(w);
    T.survivor_counts[l] = static_cast<long>(T.survivors[l].size());
  }
  return T;
}

namespace {

// shared certificate logic: least degree at which every monomial reduces to
// zero or to strictly higher degrees
std::optional<int> certify_degree(const ElimState& E, int n_max) {
  for (int N = 1; N <= n_max; ++N) {
    bool ok = true;
    for (const Word& m : E.monos[N]) {
      SRow row;
      row[{N, m}] = 1;
      E.reduce_full(row);
      for (const auto& [k, v] : row)
        if (k.first <= N) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) return N;
  }
  return std::nullopt;
}

} // namespace

FinitenessCertificate finiteness_certificate(const TruncatedQuotient& T) {
  FinitenessCertificate C;
  auto n_star = certify_degree(*T.elim, T.n_max);
  if (!n_star) return C;
  C.certified = true;
  C.n_star = *n_star;
  C.dim_total = 0;
  int n = T.Q.vertex_count;
  C.dim_by_vertex_pair.assign(n, std::vector<long>(n, 0));
  for (int l = 0; l < C.n_star; ++l) {
    C.dim_total += T.survivor_counts[l];
    for (const Word& w : T.survivors[l]) {
      if (l == 0) {
        int v = -w[0] - 1;
        ++C.dim_by_vertex_pair[v][v];
      } else {
        ++C.dim_by_vertex_pair[word_source(T.Q, w)][word_target(T.Q, w)];
      }
    }
  }
  return C;
}

MilnorResult local_milnor(const CommPoly& f, int n_max) {
  if (f.terms.empty()) throw input_error("isolated singularity data needs a nonzero polynomial");
  if (n_max < 0) throw input_error("truncation order must be nonnegative");
  if (f.min_degree() < 2)
    throw input_error("polynomial must vanish to order two at the origin");
  int nv = static_cast<int>(f.vars.size());

  ElimState E;
  E.monos.resize(n_max + 1);
  for (int l = 0; l <= n_max; ++l) E.monos[l] = exponents_of_degree(nv, l);

  struct Partial {
    int mindeg = INT_MAX;
    std::vector<std::pair<std::vector<int>, Rat>> terms;
  };
  std::vector<Partial> partials;
  for (int i = 0; i < nv; ++i) {
    Partial P;
    for (const auto& [e, c] : f.terms) {
      if (e[i] == 0) continue;
      std::vector<int> d = e;
      --d[i];
      int deg = 0;
      for (int x : d) deg += x;
      P.mindeg = std::min(P.mindeg, deg);
      P.terms.push_back({std::move(d), c * e[i]});
    }
    if (!P.terms.empty()) partials.push_back(std::move(P));
  }

  for (int L = 0; !partials.empty() && L <= n_max; ++L) {
    for (const Partial& P : partials) {
      if (L + P.mindeg > n_max) continue;
      for (const std::vector<int>& m : E.monos[L]) {
        SRow row;
        for (const auto& [e, c] : P.terms) {
          std::vector<int> prod(nv);
          int deg = 0;
          for (int i = 0; i < nv; ++i) {
            prod[i] = m[i] + e[i];
            deg += prod[i];
          }
          if (deg > n_max) continue;
          MKey key{deg, std::move(prod)};
          auto [it, fresh] = row.try_emplace(std::move(key), Rat(0));
          it->second += c;
          if (it->second == 0) row.erase(it);
        }
        if (!row.empty()) E.add_row(std::move(row));
      }
    }
  }

  MilnorResult R;
  R.survivor_counts.assign(n_max + 1, 0);
  for (int l = 0; l <= n_max; ++l) {
    long alive = 0;
    for (const auto& m : E.monos[l])
      if (!E.pivots.count({l, m})) ++alive;
    R.survivor_counts[l] = alive;
  }
  auto n_star = certify_degree(E, n_max);
  if (n_star) {
    R.certified = true;
    R.n_star = *n_star;
    R.dim = 0;
    for (int l = 0; l < R.n_star; ++l) R.dim += R.survivor_counts[l];
  }
  return R;
}

} // namespace qbps
