#pragma once
#include "qbps/carrier.hpp"
#include "qbps/fq.hpp"
#include "qbps/ncalg.hpp"
#include "qbps/quiver.hpp"

namespace qbps {

struct CountReport {
  DimVector gamma;
  long q = 0;
  Int n0, n1, e;     // fiber sizes of Tr W over 0 and 1, and their difference
  Int total;         // all enumerated points: q^rep_dim, or the stable count when framed
  double elapsed_ms = 0.0;
  bool framed = false;
  int m = 0;
  Rat e_over_gl; // framed reports carry E / |GL_gamma|
};

struct CountOptions {
  int jobs = 0;             // 0: hardware concurrency
  Int budget = Int(1) << 34; // refuse enumerations beyond this many points
  bool force_table_mode = false; // disable the prime-residue fast path (tests)
};

CountReport exp_sum_count(const Quiver& Q, const Potential& W, const DimVector& gamma,
                          const FiniteField& F, const CountOptions& opt = {});

CountReport framed_exp_sum_count(const Quiver& Q, const Potential& W, const DimVector& gamma,
                                 int m, const FiniteField& F, const CountOptions& opt = {});

// Monodromic carrier of a count report: with all nonzero fibers equinumerous
// (average A = (total - N0)/(q - 1)), the refined class is
// (N0 - A) + (N1 - A) h at base q.
QNum count_carrier(const CountReport& r);

} // namespace qbps
