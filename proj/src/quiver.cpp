#include "qbps/quiver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "qbps/errors.hpp"

namespace qbps {

int Quiver::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

bool Quiver::symmetric() const {
  std::map<std::pair<int, int>, int> counts;
  for (const auto& a : arrows) ++counts[{a.source, a.target}];
  for (const auto& [key, n] : counts) {
    auto it = counts.find({key.second, key.first});
    int back = it == counts.end() ? 0 : it->second;
    if (back != n) return false;
  }
  return true;
}

void Quiver::validate() const {
  if (vertex_count <= 0) throw input_error("quiver needs a positive vertex count");
  std::set<std::string> names;
  for (const auto& a : arrows) {
    if (a.name.empty()) throw input_error("arrow with empty name");
    if (!names.insert(a.name).second) throw input_error("duplicate arrow name " + a.name);
    if (a.source < 0 || a.source >= vertex_count || a.target < 0 || a.target >= vertex_count)
      throw input_error("arrow " + a.name + " has an endpoint out of range");
  }
}

long total(const DimVector& g) {
  long t = 0;
  for (long x : g) t += x;
  return t;
}

std::string dim_str(const DimVector& g) {
  std::string s = "[";
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g[i]);
  }
  return s + "]";
}

static void check_dims(const Quiver& Q, const DimVector& g) {
  if (static_cast<int>(g.size()) != Q.vertex_count)
    throw input_error("dimension vector length does not match the quiver");
  for (long x : g)
    if (x < 0) throw input_error("dimension vector has a negative entry");
}

long euler_form(const Quiver& Q, const DimVector& g, const DimVector& h) {
  check_dims(Q, g);
  check_dims(Q, h);
  long r = 0;
  for (int i = 0; i < Q.vertex_count; ++i) r += g[i] * h[i];
  for (const auto& a : Q.arrows) r -= g[a.source] * h[a.target];
  return r;
}

long rep_dim(const Quiver& Q, const DimVector& g) {
  check_dims(Q, g);
  long r = 0;
  for (const auto& a : Q.arrows) r += g[a.source] * g[a.target];
  return r;
}

bool simple_exists(const Quiver& Q, const DimVector& g) {
  check_dims(Q, g);
  if (total(g) == 0) throw input_error("simple_exists needs a nonzero dimension vector");

  std::vector<int> supp;
  for (int i = 0; i < Q.vertex_count; ++i)
    if (g[i] > 0) supp.push_back(i);

  // coordinate vector: a one-dimensional representation is always simple
  if (supp.size() == 1 && g[supp[0]] == 1) {
    bool coordinate = true;
    for (int i = 0; i < Q.vertex_count; ++i)
      if (g[i] != 0 && i != supp[0]) coordinate = false;
    if (coordinate) return true;
  }
  if (total(g) == 1) return true;

  std::set<int> in_supp(supp.begin(), supp.end());
  std::vector<std::pair<int, int>> edges; // arrows with both endpoints in supp
  for (const auto& a : Q.arrows)
    if (in_supp.count(a.source) && in_supp.count(a.target)) edges.push_back({a.source, a.target});

  // connectivity of the underlying undirected graph on supp
  {
    std::map<int, std::set<int>> adj;
    for (int v : supp) adj[v];
    for (auto [s, t] : edges) {
      adj[s].insert(t);
      adj[t].insert(s);
    }
    std::set<int> seen{supp[0]};
    std::vector<int> stack{supp[0]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != supp.size()) return false;
  }

  // single oriented cycle: every support vertex has in- and out-degree 1 and
  // the arrow count equals the vertex count
  {
    std::map<int, int> outd, ind;
    for (auto [s, t] : edges) {
      ++outd[s];
      ++ind[t];
    }
    bool cycle = edges.size() == supp.size();
    for (int v : supp)
      if (outd[v] != 1 || ind[v] != 1) cycle = false;
    if (cycle) {
      for (int v : supp)
        if (g[v] != 1) return false;
      return true;
    }
  }

  // strong connectivity on supp
  {
    auto reach = [&](bool forward) {
      std::set<int> seen{supp[0]};
      std::vector<int> stack{supp[0]};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [s, t] : edges) {
          int from = forward ? s : t, to = forward ? t : s;
          if (from == v && seen.insert(to).second) stack.push_back(to);
        }
      }
      return seen.size() == supp.size();
    };
    if (!reach(true) || !reach(false)) return false;
  }

  // degree conditions of the existence criterion
  for (int v : supp) {
    long in_sum = 0, out_sum = 0;
    for (const auto& a : Q.arrows) {
      if (in_supp.count(a.source) && a.target == v) in_sum += g[a.source];
      if (in_supp.count(a.target) && a.source == v) out_sum += g[a.target];
    }
    if (g[v] > in_sum || g[v] > out_sum) return false;
  }
  return true;
}

std::pair<Quiver, DimVector> frame(const Quiver& Q, const DimVector& g, int m) {
  check_dims(Q, g);
  if (m <= 0) throw input_error("framing multiplicity must be positive");
  Quiver F = Q;
  F.vertex_count = Q.vertex_count + 1;
  int inf = Q.vertex_count;
  for (int i = 0; i < Q.vertex_count; ++i)
    for (int j = 1; j <= m; ++j)
      F.arrows.push_back({"~f" + std::to_string(i) + "_" + std::to_string(j), inf, i});
  DimVector ext = g;
  ext.push_back(1);
  F.validate();
  return {F, ext};
}

std::vector<DimVector> sectors_up_to(int vertex_count, long G) {
  std::vector<DimVector> out;
  DimVector cur(vertex_count, 0);
  // lexicographic enumeration by recursion on positions
  std::function<void(int, long)> rec = [&](int pos, long used) {
    if (pos == vertex_count) {
      if (used > 0) out.push_back(cur);
      return;
    }
    for (long v = 0; v <= G - used; ++v) {
      cur[pos] = v;
      rec(pos + 1, used + v);
    }
    cur[pos] = 0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace qbps
