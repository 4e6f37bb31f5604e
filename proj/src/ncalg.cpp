#include "qbps/ncalg.hpp"

#include <algorithm>
#include <numeric>

namespace qbps {

int Potential::max_word_len() const {
  int m = 0;
  for (const auto& [w, c] : terms) m = std::max<int>(m, static_cast<int>(w.size()));
  return m;
}

int Potential::min_word_len() const {
  int m = 0;
  bool first = true;
  for (const auto& [w, c] : terms) {
    int len = static_cast<int>(w.size());
    m = first ? len : std::min(m, len);
    first = false;
  }
  return m;
}

Word canonical_rotation(const Word& w) {
  if (w.empty()) return w;
  Word best = w;
  Word cur = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

Potential make_potential(const Quiver& Q, const std::vector<std::pair<Rat, Word>>& terms) {
  Potential W;
  for (const auto& [coeff, word] : terms) {
    if (word.empty()) throw input_error("potential term with an empty word");
    for (size_t i = 0; i < word.size(); ++i) {
      int a = word[i];
      if (a < 0 || a >= static_cast<int>(Q.arrows.size()))
        throw input_error("potential term uses an unknown arrow index");
      int b = word[(i + 1) % word.size()];
      if (Q.arrows[a].target != Q.arrows[b].source)
        throw input_error("potential term is not a closed composable path");
    }
    Word canon = canonical_rotation(word);
    W.terms[canon] += coeff;
    if (W.terms[canon] == 0) W.terms.erase(canon);
  }
  return W;
}

NcPolynomial cyclic_derivative(const Quiver& Q, const Potential& W, int arrow) {
  if (arrow < 0 || arrow >= static_cast<int>(Q.arrows.size()))
    throw input_error("cyclic derivative with respect to an unknown arrow");
  NcPolynomial out;
  for (const auto& [word, coeff] : W.terms) {
    for (size_t i = 0; i < word.size(); ++i) {
      if (word[i] != arrow) continue;
      Word rest;
      rest.reserve(word.size() - 1);
      for (size_t j = 1; j < word.size(); ++j) rest.push_back(word[(i + j) % word.size()]);
      out.terms[rest] += coeff;
      if (out.terms[rest] == 0) out.terms.erase(rest);
    }
  }
  return out;
}

NcPolynomial cyclic_derivative(const Quiver& Q, const Potential& W, const std::string& arrow) {
  int idx = Q.arrow_index(arrow);
  if (idx < 0) throw input_error("unknown arrow name " + arrow);
  return cyclic_derivative(Q, W, idx);
}

namespace {

// rational nullspace of an r x c matrix, returned as basis vectors of length c
std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> m, int cols) {
  int rows = static_cast<int>(m.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    Rat inv = 1 / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[free] = 1;
    for (int i = static_cast<int>(pivot_col.size()) - 1; i >= 0; --i) {
      Rat s(0);
      for (int j = pivot_col[i] + 1; j < cols; ++j) s += m[i][j] * v[j];
      v[pivot_col[i]] = -s;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// scale a rational vector to a primitive integer vector
std::vector<Int> primitive_integer(const std::vector<Rat>& v) {
  Int l(1);
  for (const auto& x : v) l = l / gcd(l, Int(x.get_den())) * Int(x.get_den());
  std::vector<Int> out;
  Int g(0);
  for (const auto& x : v) {
    Rat s = x * Rat(l);
    out.push_back(Int(s.get_num()));
    g = gcd(g, out.back());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

} // namespace

std::optional<QhResult> qh_weights(const Quiver& Q, const Potential& W) {
  if (W.zero()) return std::nullopt;
  int A = static_cast<int>(Q.arrows.size());

  std::vector<int> appearing;
  {
    std::vector<bool> seen(A, false);
    for (const auto& [word, c] : W.terms)
      for (int a : word) seen[a] = true;
    for (int a = 0; a < A; ++a)
      if (seen[a]) appearing.push_back(a);
  }
  std::vector<int> pos(A, -1);
  for (size_t i = 0; i < appearing.size(); ++i) pos[appearing[i]] = static_cast<int>(i);
  int n = static_cast<int>(appearing.size());

  auto finish = [&](const std::vector<long>& app_weights, long degree) -> std::optional<QhResult> {
    QhResult res;
    res.weights.assign(A, 1);
    for (int i = 0; i < n; ++i) res.weights[appearing[i]] = app_weights[i];
    res.degree = degree;
    return res;
  };

  if (W.terms.size() == 1)
    return finish(std::vector<long>(n, 1), static_cast<long>(W.terms.begin()->first.size()));

  // multiplicity matrix with a trailing column for the negated degree unknown
  std::vector<std::vector<Rat>> m;
  for (const auto& [word, c] : W.terms) {
    std::vector<Rat> row(n + 1, Rat(0));
    for (int a : word) row[pos[a]] += 1;
    row[n] = -1;
    m.push_back(std::move(row));
  }
  auto basis = nullspace(std::move(m), n + 1);
  if (basis.empty()) return std::nullopt;

  if (basis.size() == 1) {
    auto v = primitive_integer(basis[0]);
    if (v[n] < 0)
      for (auto& x : v) x = -x;
    if (v[n] <= 0) return std::nullopt;
    std::vector<long> w;
    for (int i = 0; i < n; ++i) {
      if (v[i] <= 0) return std::nullopt;
      w.push_back(v[i].get_si());
    }
    return finish(w, v[n].get_si());
  }

  // ambiguous system: prefer uniform weights, then a small exhaustive search
  auto degree_of = [&](const std::vector<long>& w) -> std::optional<long> {
    std::optional<long> d;
    for (const auto& [word, c] : W.terms) {
      long s = 0;
      for (int a : word) s += w[pos[a]];
      if (d && *d != s) return std::nullopt;
      d = s;
    }
    return d;
  };
  {
    std::vector<long> ones(n, 1);
    if (auto d = degree_of(ones)) return finish(ones, *d);
  }
  if (n <= 4) {
    std::vector<long> w(n, 1);
    const long cap = 8;
    while (true) {
      if (auto d = degree_of(w)) return finish(w, *d);
      int i = n - 1;
      while (i >= 0 && w[i] == cap) w[i--] = 1;
      if (i < 0) break;
      ++w[i];
    }
  }
  return std::nullopt;
}

int CommPoly::max_degree() const {
  int m = 0;
  for (const auto& [e, c] : terms) m = std::max<int>(m, std::accumulate(e.begin(), e.end(), 0));
  return m;
}

int CommPoly::min_degree() const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : terms) {
    int d = std::accumulate(e.begin(), e.end(), 0);
    m = first ? d : std::min(m, d);
    first = false;
  }
  return m;
}

CommPoly abelianize(const Quiver& Q, const Potential& W, const DimVector& gamma) {
  if (static_cast<int>(gamma.size()) != Q.vertex_count)
    throw input_error("dimension vector length does not match the quiver");
  for (long x : gamma)
    if (x != 0 && x != 1)
      throw input_error("abelianization needs a dimension vector with entries 0 or 1");
  CommPoly out;
  std::vector<int> var_of(Q.arrows.size(), -1);
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    const auto& ar = Q.arrows[a];
    if (gamma[ar.source] == 1 && gamma[ar.target] == 1) {
      var_of[a] = static_cast<int>(out.vars.size());
      out.vars.push_back(ar.name);
    }
  }
  for (const auto& [word, coeff] : W.terms) {
    std::vector<int> expv(out.vars.size(), 0);
    bool alive = true;
    for (int a : word) {
      if (var_of[a] < 0) {
        alive = false;
        break;
      }
      ++expv[var_of[a]];
    }
    if (!alive) continue;
    out.terms[expv] += coeff;
    if (out.terms[expv] == 0) out.terms.erase(expv);
  }
  return out;
}

} // namespace qbps
