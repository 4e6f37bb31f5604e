#pragma once
#include <string>
#include <utility>
#include <vector>

#include "qbps/ncalg.hpp"
#include "qbps/quiver.hpp"

namespace qbps_test {

using namespace qbps;

// single vertex with one loop x; potential x^{d+1}
inline Quiver one_loop_quiver() {
  Quiver Q;
  Q.vertex_count = 1;
  Q.arrows.push_back({"x", 0, 0});
  return Q;
}

inline Potential one_loop_potential(const Quiver& Q, int d) {
  Word w(static_cast<size_t>(d) + 1, 0);
  return make_potential(Q, {{Rat(1), w}});
}

// two vertices joined by opposite arrows x: 0 -> 1 and y: 1 -> 0; potential
// (xy)^{d+1}
inline Quiver doubled_quiver() {
  Quiver Q;
  Q.vertex_count = 2;
  Q.arrows.push_back({"x", 0, 1});
  Q.arrows.push_back({"y", 1, 0});
  return Q;
}

inline Potential doubled_potential(const Quiver& Q, int d) {
  Word w;
  for (int i = 0; i <= d; ++i) {
    w.push_back(0);
    w.push_back(1);
  }
  return make_potential(Q, {{Rat(1), w}});
}

// single vertex with two loops x and y
inline Quiver two_loop_quiver() {
  Quiver Q;
  Q.vertex_count = 1;
  Q.arrows.push_back({"x", 0, 0});
  Q.arrows.push_back({"y", 0, 0});
  return Q;
}

} // namespace qbps_test
