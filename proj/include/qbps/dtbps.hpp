#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qbps/count.hpp"
#include "qbps/jacobi.hpp"
#include "qbps/plethys.hpp"
#include "qbps/spectrum.hpp"

namespace qbps {

struct PipelineOptions {
  int jobs = 0;
  Int budget = Int(1) << 34;
  // skip measurement assertions on sectors with no simple representation and
  // record their invariants as zero (vanishing of the supporting sheaf)
  bool window_only = false;
  // enforce positivity and palindromicity loudly (certified inputs)
  bool certified_finite = false;
};

// congruence modulus: the quasi-homogeneity degree of W, except that degree 2
// is widened to 4 so that sampled fields contain a square root of -1
long effective_modulus(const Quiver& Q, const Potential& W);
// smallest non-square prime powers congruent to 1 mod M
std::vector<long> auto_fields(long M, int count = 2);
// per-sector interpolation bound: max(0, 2 - chi(gamma, gamma))
long interpolation_bound(const Quiver& Q, const DimVector& gamma);

// coefficient of t^gamma: carrier(E) * h^{chi(gamma,gamma)} / |GL_gamma|
SeriesQ stack_series(const Quiver& Q, const Potential& W, int G, long q,
                     const PipelineOptions& opt = {});
// framed analogue with twist h^{chi(gamma,gamma) - m |gamma|}
SeriesQ framed_series(const Quiver& Q, const Potential& W, int m, int G, long q,
                      const PipelineOptions& opt = {});

// per-field refined invariants before interpolation (plethystic Log of the
// stack series, normalized by (q-1)/h)
std::map<DimVector, QNum> omega_samples(const Quiver& Q, const Potential& W, int G, long q,
                                        const PipelineOptions& opt = {});

struct BpsEntry {
  DimVector gamma;
  Laurent omega;
  Int omega_num;
  bool positive = false;
  bool palindromic = false;
  bool simple_sector = false;
  bool vanishing_by_criterion = false; // window mode zero, not measured
};

struct BpsTable {
  std::vector<BpsEntry> entries; // gamma ascending lexicographic
  std::vector<long> fields;
  int G = 0;
  long modulus = 1;
  const BpsEntry* find(const DimVector& gamma) const;
};

BpsTable bps_extract(const Quiver& Q, const Potential& W, int G,
                     const std::vector<long>& fields, const PipelineOptions& opt = {});

struct ReportEntry {
  std::string check;
  bool pass = false;
  std::string lhs, rhs;
};
struct Report {
  std::vector<ReportEntry> entries;
  bool passed() const;
};

Report verify_theoremB(const Quiver& Q, const Potential& W, const BpsTable& bps,
                       const FinitenessCertificate& cert);

// factor attached to a framed rank-N sector: the weight polynomial of the
// virtual cohomology of projective (N-1)-space, with the calibrated sign
Laurent framing_factor(long N);
// product form prod_i (1 - (-1)^m t^i)^{m i w_i} through t^G
std::vector<Int> framed_product(const std::vector<Int>& omega_by_rank, int m, int G);

Report framed_exp_check(const Quiver& Q, const Potential& W, int m, int G,
                        const std::vector<long>& fields, const BpsTable& bps,
                        const PipelineOptions& opt = {});

struct GvRow {
  long r = 0;
  Int gv_num;
  Laurent gv_refined;
  std::optional<BivariatePoly> gv_bivariate;
  std::optional<std::map<long, long>> gv_wtm;
  std::optional<long> gv_chi;
};

std::vector<GvRow> gv_table(const Quiver& Q, const Potential& W, int r_max,
                            std::optional<long> length_bound, const std::vector<long>& fields,
                            const PipelineOptions& opt = {});

} // namespace qbps
