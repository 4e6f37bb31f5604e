#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qbps/jacobi.hpp"

using namespace qbps;
using qbps_test::doubled_quiver;
using qbps_test::one_loop_quiver;
using qbps_test::two_loop_quiver;

TEST_SUITE("jacobi") {

TEST_CASE("one-loop quotient dimensions") {
  Quiver L = one_loop_quiver();
  for (int d = 1; d <= 6; ++d) {
    Potential W = qbps_test::one_loop_potential(L, d);
    TruncatedQuotient T = truncated_dim_profile(L, W, d + 2);
    FinitenessCertificate cert = finiteness_certificate(T);
    REQUIRE(cert.certified);
    CHECK(cert.dim_total == d);
    CHECK(cert.dim_by_vertex_pair[0][0] == d);
    // the quotient has the monomial basis 1, x, ..., x^{d-1}
    for (int len = 0; len <= d + 2; ++len)
      CHECK(T.survivor_counts[len] == (len < d ? 1 : 0));
  }
}

TEST_CASE("doubled-pair quotient dimensions") {
  Quiver A = doubled_quiver();
  for (int d = 1; d <= 3; ++d) {
    Potential W = qbps_test::doubled_potential(A, d);
    FinitenessCertificate cert = finiteness_certificate(truncated_dim_profile(A, W, 2 * d + 2));
    REQUIRE(cert.certified);
    CHECK(cert.dim_total == 4 * d + 2);
  }
}

TEST_CASE("certificates respect truncation windows") {
  Quiver L = one_loop_quiver();
  Potential W = qbps_test::one_loop_potential(L, 4); // survivors up to length 3
  // too small a window cannot certify
  FinitenessCertificate low = finiteness_certificate(truncated_dim_profile(L, W, 3));
  CHECK_FALSE(low.certified);
  FinitenessCertificate ok = finiteness_certificate(truncated_dim_profile(L, W, 6));
  CHECK(ok.certified);
  CHECK(ok.dim_total == 4);
}

TEST_CASE("profiles are stable under enlarging the window") {
  Quiver L = one_loop_quiver();
  Potential W = qbps_test::one_loop_potential(L, 3);
  TruncatedQuotient small = truncated_dim_profile(L, W, 4);
  TruncatedQuotient large = truncated_dim_profile(L, W, 8);
  for (int len = 0; len <= 4; ++len) CHECK(small.survivor_counts[len] == large.survivor_counts[len]);
}

TEST_CASE("an infinite-dimensional quotient never certifies") {
  Quiver T = two_loop_quiver();
  Potential W = make_potential(T, {{Rat(1), {0, 0, 0}}, {Rat(1), {1, 1, 1}}});
  TruncatedQuotient prof = truncated_dim_profile(T, W, 8);
  FinitenessCertificate cert = finiteness_certificate(prof);
  CHECK_FALSE(cert.certified);
  // relations x^2 = y^2 = 0 leave the two alternating words in every length
  CHECK(prof.survivor_counts[0] == 1);
  for (int len = 1; len <= 8; ++len) CHECK(prof.survivor_counts[len] == 2);
}

TEST_CASE("local milnor numbers of one-variable polynomials") {
  Quiver L = one_loop_quiver();
  for (int d = 1; d <= 5; ++d) {
    MilnorResult r = local_milnor(abelianize(L, qbps_test::one_loop_potential(L, d), {1}), 8);
    REQUIRE(r.certified);
    CHECK(r.dim == d);
  }
  // x^{e+1} (1 + x) has the same local behavior as x^{e+1}
  for (int e = 2; e <= 4; ++e) {
    Word lo(static_cast<size_t>(e) + 1, 0);
    Word hi(static_cast<size_t>(e) + 2, 0);
    Potential W = make_potential(L, {{Rat(1), lo}, {Rat(1), hi}});
    MilnorResult r = local_milnor(abelianize(L, W, {1}), 10);
    REQUIRE(r.certified);
    CHECK(r.dim == e);
  }
}

TEST_CASE("local milnor numbers of two-variable polynomials") {
  Quiver T = two_loop_quiver();
  // x^a + y^b has milnor number (a-1)(b-1)
  for (int a = 2; a <= 4; ++a)
    for (int b = 2; b <= 3; ++b) {
      Potential W = make_potential(
          T, {{Rat(1), Word(static_cast<size_t>(a), 0)}, {Rat(1), Word(static_cast<size_t>(b), 1)}});
      MilnorResult r = local_milnor(abelianize(T, W, {1}), 10);
      REQUIRE(r.certified);
      CHECK(r.dim == (a - 1) * (b - 1));
    }
  // x^2 y^2 has a non-isolated critical locus, so no window certifies
  Quiver A = doubled_quiver();
  MilnorResult bad = local_milnor(abelianize(A, qbps_test::doubled_potential(A, 1), {1, 1}), 8);
  CHECK_FALSE(bad.certified);
}

} // TEST_SUITE
