#include <numeric>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qbps/count.hpp"
#include "qbps/errors.hpp"

using namespace qbps;
using qbps_test::doubled_quiver;
using qbps_test::one_loop_quiver;
using qbps_test::two_loop_quiver;

namespace {

CountReport count_loop(int d, long gamma, long q, const CountOptions& opt = {}) {
  Quiver L = one_loop_quiver();
  Potential W = qbps_test::one_loop_potential(L, d);
  FiniteField F = field_make_q(q);
  return exp_sum_count(L, W, {gamma}, F, opt);
}

CountReport count_doubled(int d, DimVector g, long q, const CountOptions& opt = {}) {
  Quiver A = doubled_quiver();
  Potential W = qbps_test::doubled_potential(A, d);
  FiniteField F = field_make_q(q);
  return exp_sum_count(A, W, g, F, opt);
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

std::vector<long> prime_powers_up_to(long n) {
  std::vector<long> out;
  for (long q = 2; q <= n; ++q) {
    long p;
    int k;
    if (prime_power(q, p, k)) out.push_back(q);
  }
  return out;
}

} // namespace

TEST_SUITE("count") {

TEST_CASE("cube potential fibers in rank one") {
  CountReport r = count_loop(2, 1, 7);
  CHECK(r.n0 == 1);
  CHECK(r.n1 == 3);
  CHECK(r.e == -2);
  CHECK(r.total == 7);
}

TEST_CASE("rank-one fiber difference follows the root-of-unity count") {
  // for x^{d+1} on one loop the difference is 1 - gcd(d+1, q-1)
  for (int d = 1; d <= 4; ++d)
    for (long q : prime_powers_up_to(64)) {
      CountReport r = count_loop(d, 1, q);
      CHECK(r.e == Int(1 - gcd_l(d + 1, q - 1)));
    }
}

TEST_CASE("doubled-pair fibers in the mixed sector") {
  CountReport r = count_doubled(1, {1, 1}, 5);
  CHECK(r.n0 == 9);
  CHECK(r.n1 == 8);
}

TEST_CASE("doubled-pair closed form when one side is a line") {
  // with min(g) = 1 and k = g0 g1 the potential reduces to a scalar power:
  // N0 = q^k + (q^k - 1) q^{k-1}, N1 = gcd(d+1, q-1) (q^k - 1) q^{k-1}
  for (int d = 1; d <= 2; ++d)
    for (long q : {5L, 13L})
      for (DimVector g : {DimVector{1, 1}, DimVector{1, 2}, DimVector{2, 1}, DimVector{1, 3}}) {
        long k = g[0] * g[1];
        CountReport r = count_doubled(d, g, q);
        Int qk = int_pow(Int(q), static_cast<unsigned long>(k));
        Int qk1 = int_pow(Int(q), static_cast<unsigned long>(k - 1));
        CHECK(r.n0 == qk + (qk - 1) * qk1);
        CHECK(r.n1 == Int(gcd_l(d + 1, q - 1)) * (qk - 1) * qk1);
      }
}

TEST_CASE("zero potential counts every point into the zero fiber") {
  Quiver L = one_loop_quiver();
  Potential W; // zero
  for (long q : {4L, 7L}) {
    FiniteField F = field_make_q(q);
    CountReport r = exp_sum_count(L, W, {2}, F);
    CHECK(r.n0 == int_pow(Int(q), 4));
    CHECK(r.n1 == 0);
  }
  // a dimension vector that kills every word behaves like zero potential
  Quiver A = doubled_quiver();
  Potential WA = qbps_test::doubled_potential(A, 1);
  FiniteField F5 = field_make_q(5);
  CountReport dead = exp_sum_count(A, WA, {2, 0}, F5, {});
  CHECK(dead.n0 == dead.total);
  CHECK(dead.n1 == 0);
}

TEST_CASE("monodromic carriers of the square potential") {
  auto carrier = [](int d, long gamma, long q) { return count_carrier(count_loop(d, gamma, q)); };
  CHECK(carrier(1, 2, 5) == QNum(5, 25, 0));
  CHECK(carrier(1, 2, 13) == QNum(13, 169, 0));
  CHECK(carrier(1, 3, 5) == QNum(5, 0, 625));
  CHECK(carrier(1, 3, 13) == QNum(13, 0, 28561));
}

TEST_CASE("monodromic carriers of higher loop potentials") {
  auto carrier = [](int d, long gamma, long q) { return count_carrier(count_loop(d, gamma, q)); };
  CHECK(carrier(2, 2, 7) == QNum(7, 392, 7));
  CHECK(carrier(2, 2, 13) == QNum(13, 2366, -65));
  CHECK(carrier(3, 2, 5) == QNum(5, -125, 50));
  CHECK(carrier(3, 2, 13) == QNum(13, -2197, -1014));
}

TEST_CASE("rank-three fibers of the square potential") {
  CountReport r5 = count_loop(1, 3, 5);
  CHECK(r5.n0 == 390625);
  CHECK(r5.n1 == 391250);
  CountReport r13 = count_loop(1, 3, 13);
  CHECK(r13.n0 == int_pow(Int(13), 8));
  CHECK(r13.n1 == Int(815759282L));
}

TEST_CASE("specialized paths agree with direct enumeration") {
  CountOptions table;
  table.force_table_mode = true;
  // quadratic trace forms
  for (long q : {5L, 13L})
    for (long g : {1L, 2L}) {
      CountReport fast = count_loop(1, g, q);
      CountReport slow = count_loop(1, g, q, table);
      CHECK(fast.n0 == slow.n0);
      CHECK(fast.n1 == slow.n1);
    }
  // quadratic trace form in a non-prime field
  {
    Quiver L = one_loop_quiver();
    Potential W = qbps_test::one_loop_potential(L, 1);
    FiniteField F9 = field_make_q(9);
    CountReport fast = exp_sum_count(L, W, {2}, F9);
    CountReport slow = exp_sum_count(L, W, {2}, F9, table);
    CHECK(fast.n0 == slow.n0);
    CHECK(fast.n1 == slow.n1);
  }
  // two quadratic words at once
  {
    Quiver T = two_loop_quiver();
    Potential W = make_potential(T, {{Rat(1), {0, 0}}, {Rat(2), {1, 1}}, {Rat(1), {0, 1}}});
    FiniteField F5 = field_make_q(5);
    CountReport fast = exp_sum_count(T, W, {1}, F5);
    CountReport slow = exp_sum_count(T, W, {1}, F5, table);
    CHECK(fast.n0 == slow.n0);
    CHECK(fast.n1 == slow.n1);
  }
  // residue stepping for a cubic word
  {
    CountReport fast = count_loop(2, 2, 7);
    CountReport slow = count_loop(2, 2, 7, table);
    CHECK(fast.n0 == slow.n0);
    CHECK(fast.n1 == slow.n1);
  }
  // mixed sector on the doubled pair
  for (DimVector g : {DimVector{1, 1}, DimVector{2, 1}}) {
    CountReport fast = count_doubled(1, g, 5);
    CountReport slow = count_doubled(1, g, 5, table);
    CHECK(fast.n0 == slow.n0);
    CHECK(fast.n1 == slow.n1);
  }
}

TEST_CASE("counts are independent of the job count") {
  for (int jobs : {1, 4}) {
    CountOptions opt;
    opt.jobs = jobs;
    opt.force_table_mode = true;
    CountReport r = count_loop(2, 2, 7, opt);
    CHECK(r.n0 == 679);
    CHECK(r.n1 == 294);
  }
}

TEST_CASE("budget refusals") {
  CountOptions opt;
  opt.budget = 1000;
  CHECK_THROWS_AS(count_loop(2, 2, 7, opt), budget_error); // 7^4 > 1000 and the word is cubic
  // quadratic trace forms never enumerate, so the same budget passes
  CHECK_NOTHROW(count_loop(1, 3, 13, opt));
  Quiver L = one_loop_quiver();
  Potential W = qbps_test::one_loop_potential(L, 2);
  FiniteField F = field_make_q(7);
  CHECK_THROWS_AS(framed_exp_sum_count(L, W, {2}, 2, F, opt), budget_error);
}

TEST_CASE("coefficient denominators divisible by the characteristic are rejected") {
  Quiver L = one_loop_quiver();
  Potential W = make_potential(L, {{Rat(1, 7), {0, 0, 0}}});
  FiniteField F7 = field_make_q(7);
  CHECK_THROWS_AS(exp_sum_count(L, W, {2}, F7), input_error);
  FiniteField F5 = field_make_q(5);
  CHECK_NOTHROW(exp_sum_count(L, W, {2}, F5));
}

TEST_CASE("framed fibers in rank one") {
  Quiver L = one_loop_quiver();
  Potential W = qbps_test::one_loop_potential(L, 2);
  FiniteField F = field_make_q(7);
  CountReport m1 = framed_exp_sum_count(L, W, {1}, 1, F);
  CHECK(m1.e == -12);
  CHECK(m1.framed);
  CHECK(m1.m == 1);
  CountReport m2 = framed_exp_sum_count(L, W, {1}, 2, F);
  CHECK(m2.e == -96);
}

TEST_CASE("framed rank-one closed form") {
  // stable framed points with g = q^m - 1: N0 = g, N1 = gcd(d+1, q-1) g, S = q g
  Quiver L = one_loop_quiver();
  for (int d : {1, 2})
    for (int m : {1, 2})
      for (long q : {5L, 7L, 13L}) {
        Potential W = qbps_test::one_loop_potential(L, d);
        FiniteField F = field_make_q(q);
        CountReport r = framed_exp_sum_count(L, W, {1}, m, F);
        Int g = int_pow(Int(q), static_cast<unsigned long>(m)) - 1;
        CHECK(r.n0 == g);
        CHECK(r.n1 == Int(gcd_l(d + 1, q - 1)) * g);
        CHECK(r.total == Int(q) * g);
      }
}

TEST_CASE("framed stable counts divide by the group order") {
  Quiver L = one_loop_quiver();
  Potential W = qbps_test::one_loop_potential(L, 1);
  for (long q : {5L, 13L})
    for (int m : {1, 2}) {
      FiniteField F = field_make_q(q);
      CountReport r = framed_exp_sum_count(L, W, {2}, m, F);
      Int gl = gl_order({2}, q);
      CHECK(r.e_over_gl == Rat(r.e) / Rat(gl));
      // the group acts freely on stable framed points
      CHECK(r.total % gl == 0);
    }
}

} // TEST_SUITE
