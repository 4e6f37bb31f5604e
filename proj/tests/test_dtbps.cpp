#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qbps/dtbps.hpp"
#include "qbps/errors.hpp"
#include "qbps/jacobi.hpp"

using namespace qbps;
using qbps_test::doubled_quiver;
using qbps_test::one_loop_quiver;
using qbps_test::two_loop_quiver;

namespace {

Potential loop_w(const Quiver& L, int d) { return qbps_test::one_loop_potential(L, d); }

} // namespace

TEST_SUITE("dtbps") {

TEST_CASE("congruence modulus of a potential") {
  Quiver L = one_loop_quiver();
  CHECK(effective_modulus(L, loop_w(L, 1)) == 4); // degree 2 doubles
  CHECK(effective_modulus(L, loop_w(L, 2)) == 3);
  CHECK(effective_modulus(L, loop_w(L, 3)) == 4);
  CHECK(effective_modulus(L, Potential{}) == 1);
  Quiver A = doubled_quiver();
  CHECK(effective_modulus(A, qbps_test::doubled_potential(A, 1)) == 4);
  Potential bad = make_potential(L, {{Rat(1), {0, 0, 0}}, {Rat(1), {0, 0, 0, 0}}});
  CHECK_THROWS_AS(effective_modulus(L, bad), input_error);
}

TEST_CASE("automatic sample field selection") {
  CHECK(auto_fields(1, 2) == std::vector<long>({2, 3}));
  CHECK(auto_fields(2, 2) == std::vector<long>({3, 5}));
  CHECK(auto_fields(3, 2) == std::vector<long>({7, 13}));
  CHECK(auto_fields(4, 2) == std::vector<long>({5, 13}));
  CHECK(auto_fields(5, 2) == std::vector<long>({11, 31}));
  CHECK(auto_fields(6, 2) == std::vector<long>({7, 13}));
  CHECK(auto_fields(7, 2) == std::vector<long>({8, 29}));
  CHECK(auto_fields(8, 2) == std::vector<long>({17, 41}));
  CHECK(auto_fields(3, 3) == std::vector<long>({7, 13, 19}));
}

TEST_CASE("interpolation window bounds") {
  Quiver L = one_loop_quiver();
  CHECK(interpolation_bound(L, {1}) == 2);
  CHECK(interpolation_bound(L, {3}) == 2);
  Quiver A = doubled_quiver();
  CHECK(interpolation_bound(A, {1, 1}) == 2);
  CHECK(interpolation_bound(A, {2, 1}) == 1);
  Quiver T = two_loop_quiver();
  CHECK(interpolation_bound(T, {2}) == 6);
}

TEST_CASE("stack series coefficients") {
  Quiver L = one_loop_quiver();
  PipelineOptions opt;
  SeriesQ s = stack_series(L, loop_w(L, 2), 1, 7, opt);
  CHECK(s.get({0}) == QNum(7, 1, 0));
  CHECK(s.get({1}) == QNum(7, 0, Rat(1, 3)));
  // congruence violations are refused up front
  CHECK_THROWS_AS(stack_series(L, loop_w(L, 2), 1, 5, opt), budget_error);
}

TEST_CASE("per-field invariant measurements") {
  Quiver L = one_loop_quiver();
  PipelineOptions opt;
  auto om1 = omega_samples(L, loop_w(L, 1), 2, 5, opt);
  CHECK(om1.at({1}) == QNum(5, 1, 0));
  CHECK(om1.at({2}).is_zero());
  auto om2a = omega_samples(L, loop_w(L, 2), 2, 7, opt);
  CHECK(om2a.at({1}) == QNum(7, 2, 0));
  CHECK(om2a.at({2}) == QNum(7, Rat(1, 48), Rat(-1, 24)));
  auto om2b = omega_samples(L, loop_w(L, 2), 2, 13, opt);
  CHECK(om2b.at({2}) == QNum(13, Rat(-5, 168), Rat(-1, 84)));
  auto om3a = omega_samples(L, loop_w(L, 3), 2, 5, opt);
  CHECK(om3a.at({2}) == QNum(5, Rat(5, 12), Rat(-13, 12)));
  auto om3b = omega_samples(L, loop_w(L, 3), 2, 13, opt);
  CHECK(om3b.at({2}) == QNum(13, Rat(-13, 28), Rat(-29, 84)));
}

TEST_CASE("invariant table for the square potential") {
  Quiver L = one_loop_quiver();
  BpsTable T = bps_extract(L, loop_w(L, 1), 3, auto_fields(4, 2), {});
  CHECK(T.modulus == 4);
  CHECK(T.fields == std::vector<long>({5, 13}));
  REQUIRE(T.entries.size() == 3);
  CHECK(T.entries[0].gamma == DimVector{1});
  CHECK(T.entries[0].omega == Laurent::constant(1));
  CHECK(T.entries[0].omega_num == 1);
  CHECK(T.entries[0].simple_sector);
  CHECK(T.entries[0].positive);
  CHECK(T.entries[0].palindromic);
  for (int i : {1, 2}) {
    CHECK(T.entries[i].omega.is_zero());
    CHECK(T.entries[i].omega_num == 0);
    CHECK_FALSE(T.entries[i].simple_sector);
    CHECK_FALSE(T.entries[i].vanishing_by_criterion);
  }
  const BpsEntry* e = T.find({2});
  REQUIRE(e != nullptr);
  CHECK(e->omega_num == 0);
  CHECK(T.find({9}) == nullptr);
}

TEST_CASE("strict extraction rejects noisy sectors") {
  Quiver L = one_loop_quiver();
  try {
    bps_extract(L, loop_w(L, 2), 2, auto_fields(3, 2), {});
    FAIL("expected a budget error");
  } catch (const budget_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("admits no simple representation") != std::string::npos);
    CHECK(msg.find("[2]") != std::string::npos);
  }
  try {
    bps_extract(L, loop_w(L, 3), 2, auto_fields(4, 2), {});
    FAIL("expected a budget error");
  } catch (const budget_error& e) {
    CHECK(std::string(e.what()).find("at q=5") != std::string::npos);
  }
}

TEST_CASE("window mode zeroes non-simple sectors by fiat") {
  Quiver L = one_loop_quiver();
  PipelineOptions opt;
  opt.window_only = true;
  BpsTable T = bps_extract(L, loop_w(L, 2), 2, auto_fields(3, 2), opt);
  REQUIRE(T.entries.size() == 2);
  CHECK(T.entries[0].omega_num == 2);
  CHECK(T.entries[0].omega == Laurent::constant(2));
  CHECK_FALSE(T.entries[0].vanishing_by_criterion);
  CHECK(T.entries[1].omega_num == 0);
  CHECK(T.entries[1].vanishing_by_criterion);
}

TEST_CASE("extraction requires a symmetric quiver") {
  Quiver one_way;
  one_way.vertex_count = 2;
  one_way.arrows.push_back({"x", 0, 1});
  CHECK_THROWS_AS(bps_extract(one_way, Potential{}, 2, {5, 13}, {}), input_error);
}

TEST_CASE("doubled-pair tables across sectors") {
  Quiver A = doubled_quiver();
  BpsTable T = bps_extract(A, qbps_test::doubled_potential(A, 1), 4, auto_fields(4, 2), {});
  REQUIRE(T.entries.size() == 14);
  for (size_t i = 0; i + 1 < T.entries.size(); ++i) CHECK(T.entries[i].gamma < T.entries[i + 1].gamma);
  for (const auto& e : T.entries) {
    long expect = (e.gamma == DimVector{1, 0} || e.gamma == DimVector{0, 1} ||
                   e.gamma == DimVector{1, 1})
                      ? 1
                      : 0;
    CHECK(e.omega_num == expect);
    CHECK(e.simple_sector == (expect == 1));
  }
}

TEST_CASE("doubled-pair invariants at the next potential degree") {
  Quiver A = doubled_quiver();
  BpsTable T = bps_extract(A, qbps_test::doubled_potential(A, 2), 2, auto_fields(3, 2), {});
  const BpsEntry* e = T.find({1, 1});
  REQUIRE(e != nullptr);
  CHECK(e->omega_num == 2);
  CHECK(e->omega == Laurent::constant(2));
}

TEST_CASE("verification report on a clean table") {
  Quiver L = one_loop_quiver();
  Potential W = loop_w(L, 1);
  BpsTable T = bps_extract(L, W, 3, auto_fields(4, 2), {});
  FinitenessCertificate cert = finiteness_certificate(truncated_dim_profile(L, W, 8));
  REQUIRE(cert.certified);
  Report rep = verify_theoremB(L, W, T, cert);
  CHECK(rep.passed());
  REQUIRE(rep.entries.size() == 4);
  CHECK(rep.entries[3].lhs == "1");
  CHECK(rep.entries[3].rhs == "1");
}

TEST_CASE("verification detects a corrupted table") {
  Quiver L = one_loop_quiver();
  Potential W = loop_w(L, 1);
  BpsTable T = bps_extract(L, W, 3, auto_fields(4, 2), {});
  FinitenessCertificate cert = finiteness_certificate(truncated_dim_profile(L, W, 8));
  T.entries.front().omega = T.entries.front().omega + Laurent::constant(1);
  T.entries.front().omega_num += 1;
  Report rep = verify_theoremB(L, W, T, cert);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.entries[3].pass); // the dimension sum moves off its target
  // negative invariants are flagged through the same report
  T.entries.front().omega = Laurent::constant(-1);
  Report neg = verify_theoremB(L, W, T, cert);
  CHECK_FALSE(neg.entries[0].pass);
}

TEST_CASE("verification without a certificate fails the sum rule") {
  Quiver L = one_loop_quiver();
  Potential W = loop_w(L, 1);
  BpsTable T = bps_extract(L, W, 2, auto_fields(4, 2), {});
  FinitenessCertificate none;
  Report rep = verify_theoremB(L, W, T, none);
  CHECK_FALSE(rep.passed());
  CHECK(rep.entries[3].rhs == "uncertified quotient dimension");
}

TEST_CASE("framing factors") {
  CHECK(framing_factor(1) == Laurent::constant(1));
  Laurent f2;
  f2.set(-1, Rat(-1));
  f2.set(1, Rat(-1));
  CHECK(framing_factor(2) == f2);
  CHECK(framing_factor(2).eval_one() == -2);
  Laurent f3;
  f3.set(-2, Rat(1));
  f3.set(0, Rat(1));
  f3.set(2, Rat(1));
  CHECK(framing_factor(3) == f3);
  CHECK(framing_factor(4).eval_one() == -4);
  CHECK_THROWS_AS(framing_factor(0), input_error);
}

TEST_CASE("framed product expansions") {
  // one invariant of size 2 in rank one, framing rank two
  std::vector<Int> om{Int(0), Int(2)};
  auto c = framed_product(om, 2, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1);
  CHECK(c[1] == -4);
  CHECK(c[2] == 6);
  // same invariant, framing rank one
  auto d = framed_product(om, 1, 2);
  CHECK(d[1] == 2);
  CHECK(d[2] == 1);
  // unit invariant with framing rank two gives (1 - t)^2
  std::vector<Int> unit{Int(0), Int(1)};
  auto e = framed_product(unit, 2, 3);
  CHECK(e[1] == -2);
  CHECK(e[2] == 1);
  CHECK(e[3] == 0);
  // negative exponents expand through the generalized binomial
  std::vector<Int> neg{Int(0), Int(-1)};
  auto f = framed_product(neg, 1, 3);
  CHECK(f[1] == -1);
  CHECK(f[2] == 1);
  CHECK(f[3] == -1);
}

TEST_CASE("framed series values in rank one") {
  Quiver L = one_loop_quiver();
  PipelineOptions opt;
  SeriesQ f5 = framed_series(L, loop_w(L, 1), 2, 1, 5, opt);
  CHECK(f5.get({1}) == QNum(5, 0, Rat(6, 5)));
  SeriesQ f13 = framed_series(L, loop_w(L, 1), 2, 1, 13, opt);
  CHECK(f13.get({1}) == QNum(13, 0, Rat(14, 13)));
}

TEST_CASE("framed product check passes for the square potential") {
  Quiver L = one_loop_quiver();
  Potential W = loop_w(L, 1);
  PipelineOptions wopt;
  wopt.window_only = true;
  std::vector<long> fields = auto_fields(4, 2);
  BpsTable T = bps_extract(L, W, 2, fields, wopt);
  Report rep = framed_exp_check(L, W, 2, 2, fields, T, {});
  CHECK(rep.passed());
  // framing rank two reports interpolated, structural, and resampled checks
  CHECK(rep.entries.size() == 2 + 2 + 4);
}

TEST_CASE("framed product check with odd framing uses the direct shadow") {
  Quiver L = one_loop_quiver();
  Potential W = loop_w(L, 2);
  std::vector<long> fields = auto_fields(3, 2);
  PipelineOptions wopt;
  wopt.window_only = true;
  BpsTable T = bps_extract(L, W, 2, fields, wopt);
  Report rep = framed_exp_check(L, W, 1, 2, fields, T, {});
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.entries[0].check == "chi shadow t^1");
  CHECK(rep.entries[0].pass);
  CHECK(rep.entries[0].rhs == "2");
  CHECK(rep.entries[1].pass);
  CHECK(rep.entries[1].rhs == "1");
}

TEST_CASE("curve counting table for the square potential") {
  Quiver L = one_loop_quiver();
  auto rows = gv_table(L, loop_w(L, 1), 2, std::nullopt, auto_fields(4, 2), {});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].r == 1);
  CHECK(rows[0].gv_num == 1);
  CHECK(rows[0].gv_refined == Laurent::constant(1));
  REQUIRE(rows[0].gv_bivariate.has_value());
  CHECK(rows[0].gv_bivariate->terms.size() == 1);
  REQUIRE(rows[0].gv_wtm.has_value());
  CHECK(rows[0].gv_wtm->at(0) == 1);
  REQUIRE(rows[0].gv_chi.has_value());
  CHECK(*rows[0].gv_chi == 1);
  CHECK(rows[1].gv_num == 0);
  CHECK_FALSE(rows[1].gv_bivariate.has_value());
}

TEST_CASE("curve counting table for the cube potential") {
  Quiver L = one_loop_quiver();
  PipelineOptions opt;
  opt.window_only = true;
  auto rows = gv_table(L, loop_w(L, 2), 1, 3, auto_fields(3, 2), opt);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].gv_num == 2);
  REQUIRE(rows[0].gv_chi.has_value());
  CHECK(*rows[0].gv_chi == 2);
  REQUIRE(rows[0].gv_wtm.has_value());
  CHECK(rows[0].gv_wtm->at(0) == 2);
}

TEST_CASE("length bounds abort on nonzero invariants beyond the bound") {
  Quiver L = one_loop_quiver();
  CHECK_THROWS_AS(gv_table(L, loop_w(L, 1), 1, 0, auto_fields(4, 2), {}), theorem_error);
}

TEST_CASE("curve counting needs one vertex and a finite quotient") {
  Quiver A = doubled_quiver();
  CHECK_THROWS_AS(gv_table(A, qbps_test::doubled_potential(A, 1), 1, std::nullopt, {5, 13}, {}),
                  input_error);
  Quiver T = two_loop_quiver();
  Potential W = make_potential(T, {{Rat(1), {0, 0, 0}}, {Rat(1), {1, 1, 1}}});
  CHECK_THROWS_AS(gv_table(T, W, 1, std::nullopt, {7, 13}, {}), input_error);
}

} // TEST_SUITE
