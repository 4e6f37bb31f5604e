#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qbps/rational.hpp"

namespace qbps {

struct SpectrumTable {
  int n_vars = 0;
  std::vector<Rat> spectral_numbers; // sorted ascending, values in (0, n_vars)
  long mu = 0;
};

// spectrum of a diagonal quasi-homogeneous isolated singularity in <= 2
// variables with the given positive weights and degree
SpectrumTable steenbrink_spectrum(const std::vector<long>& weights, long degree);

struct BivariatePoly {
  // exponent pair (a, b) with a + b integral -> integer coefficient
  std::map<std::pair<Rat, Rat>, long> terms;
};

BivariatePoly refined_gv_poly(const SpectrumTable& S);
std::map<long, long> specialize_wtm(const BivariatePoly& P); // exponent of q^{1/2} -> coeff
long specialize_chi(const BivariatePoly& P);

std::string bivariate_str(const BivariatePoly& P);
std::string wtm_str(const std::map<long, long>& w);

} // namespace qbps
