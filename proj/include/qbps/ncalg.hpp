#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbps/errors.hpp"
#include "qbps/quiver.hpp"
#include "qbps/rational.hpp"

namespace qbps {

using Word = std::vector<int>; // arrow indices along a composable path

struct NcPolynomial {
  std::map<Word, Rat> terms; // no zero coefficients stored
};

struct Potential {
  std::map<Word, Rat> terms; // canonical least-rotation closed words
  bool zero() const { return terms.empty(); }
  int max_word_len() const;
  int min_word_len() const;
};

Word canonical_rotation(const Word& w);

// validates composability and closedness against Q, canonicalizes rotations,
// merges duplicates, drops zero coefficients
Potential make_potential(const Quiver& Q, const std::vector<std::pair<Rat, Word>>& terms);

NcPolynomial cyclic_derivative(const Quiver& Q, const Potential& W, int arrow);
NcPolynomial cyclic_derivative(const Quiver& Q, const Potential& W, const std::string& arrow);

struct QhResult {
  std::vector<long> weights; // one per arrow
  long degree = 0;
};
std::optional<QhResult> qh_weights(const Quiver& Q, const Potential& W);

// commutative polynomial in one variable per arrow (abelianized sector)
struct CommPoly {
  std::vector<std::string> vars;
  std::map<std::vector<int>, Rat> terms; // exponent vector -> coefficient
  int max_degree() const;
  int min_degree() const;
};
CommPoly abelianize(const Quiver& Q, const Potential& W, const DimVector& gamma);

struct RatCtx {
  using Elem = Rat;
  Elem zero() const { return Rat(0); }
  Elem add(const Elem& x, const Elem& y) const { return x + y; }
  Elem mul(const Elem& x, const Elem& y) const { return x * y; }
  Elem from_rat(const Rat& r) const { return r; }
};

// trace of W at a representation point; mats[a] is row-major with shape
// gamma[target(a)] x gamma[source(a)]
template <class Ctx>
typename Ctx::Elem trace_evaluate(const Quiver& Q, const Potential& W, const Ctx& ctx,
                                  const DimVector& gamma,
                                  const std::vector<std::vector<typename Ctx::Elem>>& mats) {
  using E = typename Ctx::Elem;
  if (static_cast<int>(gamma.size()) != Q.vertex_count)
    throw input_error("dimension vector length does not match the quiver");
  if (mats.size() != Q.arrows.size())
    throw input_error("matrix list length does not match the arrow count");
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    long rows = gamma[Q.arrows[a].target], cols = gamma[Q.arrows[a].source];
    if (static_cast<long>(mats[a].size()) != rows * cols)
      throw input_error("matrix shape mismatch for arrow " + Q.arrows[a].name);
  }
  E acc = ctx.zero();
  for (const auto& [word, coeff] : W.terms) {
    // product along the path: cur = M_{a_k} ... M_{a_1}
    int first = word.front();
    long cur_rows = gamma[Q.arrows[first].target];
    long cur_cols = gamma[Q.arrows[first].source];
    std::vector<E> cur = mats[first];
    bool empty = (cur_rows == 0 || cur_cols == 0);
    for (size_t i = 1; i < word.size() && !empty; ++i) {
      int a = word[i];
      long rows = gamma[Q.arrows[a].target];
      long mid = gamma[Q.arrows[a].source];
      if (rows == 0 || mid == 0) {
        empty = true;
        break;
      }
      std::vector<E> next(rows * cur_cols, ctx.zero());
      for (long r = 0; r < rows; ++r)
        for (long k = 0; k < mid; ++k) {
          const E& m = mats[a][r * mid + k];
          for (long cc = 0; cc < cur_cols; ++cc)
            next[r * cur_cols + cc] = ctx.add(next[r * cur_cols + cc], ctx.mul(m, cur[k * cur_cols + cc]));
        }
      cur = std::move(next);
      cur_rows = rows;
    }
    if (empty || cur_rows == 0) continue; // zero-dimensional endpoint: trace 0
    E tr = ctx.zero();
    for (long r = 0; r < cur_rows; ++r) tr = ctx.add(tr, cur[r * cur_cols + r]);
    acc = ctx.add(acc, ctx.mul(ctx.from_rat(coeff), tr));
  }
  return acc;
}

} // namespace qbps
