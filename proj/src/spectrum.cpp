#include "qbps/spectrum.hpp"

#include <algorithm>

#include "qbps/errors.hpp"

namespace qbps {

SpectrumTable steenbrink_spectrum(const std::vector<long>& weights, long degree) {
  if (weights.empty() || weights.size() > 2)
    throw input_error("spectrum supports one or two variables");
  for (long w : weights)
    if (w <= 0) throw input_error("weights must be positive");
  long maxw = *std::max_element(weights.begin(), weights.end());
  if (degree <= maxw) throw input_error("degree must exceed every weight");

  long mu = 1;
  std::vector<long> tops; // l_i ranges over 0..tops[i]
  for (long w : weights) {
    if (degree % w != 0) throw input_error("each weight must divide the degree");
    long t = degree / w - 1;
    if (t <= 0) throw input_error("the weight system does not give an isolated singularity");
    mu *= t;
    tops.push_back(t - 1);
  }

  SpectrumTable S;
  S.n_vars = static_cast<int>(weights.size());
  if (S.n_vars == 1) {
    for (long l = 0; l <= tops[0]; ++l)
      S.spectral_numbers.push_back(Rat((l + 1) * weights[0], degree));
  } else {
    for (long l0 = 0; l0 <= tops[0]; ++l0)
      for (long l1 = 0; l1 <= tops[1]; ++l1)
        S.spectral_numbers.push_back(
            Rat((l0 + 1) * weights[0] + (l1 + 1) * weights[1], degree));
  }
  for (auto& r : S.spectral_numbers) r.canonicalize();
  std::sort(S.spectral_numbers.begin(), S.spectral_numbers.end());
  if (static_cast<long>(S.spectral_numbers.size()) != mu)
    throw internal_error("spectrum count disagrees with the product formula");
  S.mu = mu;
  return S;
}

BivariatePoly refined_gv_poly(const SpectrumTable& S) {
  BivariatePoly P;
  Rat half_n = Rat(S.n_vars, 2);
  Rat n(S.n_vars);
  for (const Rat& alpha : S.spectral_numbers) {
    Rat a = alpha - half_n;
    Rat b = (n - alpha) - half_n;
    a.canonicalize();
    b.canonicalize();
    auto key = std::make_pair(a, b);
    if (++P.terms[key] == 0) P.terms.erase(key);
  }
  return P;
}

std::map<long, long> specialize_wtm(const BivariatePoly& P) {
  std::map<long, long> out;
  for (const auto& [ab, c] : P.terms) {
    Rat s = ab.first + ab.second;
    if (!is_integer(s)) throw internal_error("bivariate exponent sum is not an integer");
    long e = s.get_num().get_si();
    out[e] += c;
    if (out[e] == 0) out.erase(e);
  }
  return out;
}

long specialize_chi(const BivariatePoly& P) {
  long s = 0;
  for (const auto& [ab, c] : P.terms) s += c;
  return s;
}

namespace {

std::string signed_join(std::string& out, long coeff, bool first) {
  long mag = coeff;
  if (first) {
    if (coeff < 0) {
      out += "-";
      mag = -coeff;
    }
  } else {
    out += coeff < 0 ? " - " : " + ";
    if (coeff < 0) mag = -coeff;
  }
  return std::to_string(mag);
}

} // namespace

std::string bivariate_str(const BivariatePoly& P) {
  if (P.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [ab, c] : P.terms) {
    std::string mag = signed_join(out, c, first);
    first = false;
    std::string factors;
    if (ab.first != 0) factors += "z1^(" + rat_str(ab.first) + ")";
    if (ab.second != 0) {
      if (!factors.empty()) factors += "*";
      factors += "z2^(" + rat_str(ab.second) + ")";
    }
    if (factors.empty()) {
      out += mag;
    } else {
      if (mag != "1") out += mag + "*";
      out += factors;
    }
  }
  return out;
}

std::string wtm_str(const std::map<long, long>& w) {
  if (w.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : w) {
    std::string mag = signed_join(out, c, first);
    first = false;
    if (e == 0) {
      out += mag;
    } else {
      std::string power =
          (e % 2 == 0) ? "q^" + std::to_string(e / 2) : "q^(" + std::to_string(e) + "/2)";
      out += (mag == "1") ? power : mag + "*" + power;
    }
  }
  return out;
}

} // namespace qbps
