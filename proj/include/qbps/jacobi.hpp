#pragma once
#include <memory>
#include <vector>

#include "qbps/ncalg.hpp"

namespace qbps {

struct ElimState; // sparse row-reduction state, defined in jacobi.cpp

// basis of the completed path algebra modulo the degree-truncated closure of
// the two-sided ideal generated by the cyclic derivatives of W
struct TruncatedQuotient {
  Quiver Q;
  Potential W;
  int n_max = 0;
  std::vector<std::vector<Word>> survivors; // by path length 0..n_max
  std::vector<long> survivor_counts;
  std::shared_ptr<ElimState> elim;
  bool qh = false;
  std::vector<long> weights;
  long qh_degree = 0;
};

struct FinitenessCertificate {
  bool certified = false;
  int n_star = -1;
  long dim_total = -1;
  std::vector<std::vector<long>> dim_by_vertex_pair; // [source][target]
};

TruncatedQuotient truncated_dim_profile(const Quiver& Q, const Potential& W, int n_max);
FinitenessCertificate finiteness_certificate(const TruncatedQuotient& T);

struct MilnorResult {
  bool certified = false;
  long dim = -1;
  int n_star = -1;
  std::vector<long> survivor_counts; // by total degree 0..n_max
};
MilnorResult local_milnor(const CommPoly& f, int n_max);

} // namespace qbps
