#include <doctest.h>

#include <cmath>

#include "pcslab/analytic.hpp"
#include "pcslab/channels.hpp"

using namespace pcs;

TEST_CASE("analytic: purification recurrence") {
  PurificationPoint perfect = bbpssw_step(1.0);
  CHECK(perfect.f_out == doctest::Approx(1.0));
  CHECK(perfect.rate == doctest::Approx(1.0));

  PurificationPoint pt = bbpssw_step(0.75);
  CHECK(pt.f_out == doctest::Approx(41.0 / 52.0).epsilon(1e-12));  // 0.788461...
  CHECK(pt.rate == doctest::Approx(13.0 / 18.0).epsilon(1e-12));   // 0.722222...

  CHECK(bbpssw_step(0.5).f_out == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("analytic: iterated purification") {
  PurificationPoint one = bbpssw_recursive(0.8, 1);
  PurificationPoint step = bbpssw_step(0.8);
  CHECK(one.f_out == doctest::Approx(step.f_out));
  CHECK(one.rate == doctest::Approx(step.rate));
  CHECK(one.qubit_cost == 4);

  double f1 = bbpssw_recursive(0.9, 1).f_out;
  double f2 = bbpssw_recursive(0.9, 2).f_out;
  double f3 = bbpssw_recursive(0.9, 3).f_out;
  CHECK(f3 > f2);
  CHECK(f2 > f1);
  CHECK(bbpssw_recursive(0.9, 2).qubit_cost == 8);
  CHECK(bbpssw_recursive(0.9, 3).qubit_cost == 16);
}

TEST_CASE("analytic: X-check points") {
  PurificationPoint zero = pcs_x_point_p(0, 0);
  CHECK(zero.rate == doctest::Approx(1.0));
  CHECK(zero.f_out == doctest::Approx(1.0));

  CHECK(pcs_x_point_p(0.4, 0.4).rate == doctest::Approx(0.4624).epsilon(1e-12));

  PurificationPoint f = pcs_x_point_F(0.5);
  CHECK(f.rate == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(f.f_out == doctest::Approx(0.5625).epsilon(1e-12));
  CHECK(pcs_x_point_F(1.0).f_out == doctest::Approx(1.0));
  CHECK(pcs_x_point_F(0.25).f_out == doctest::Approx(0.25).epsilon(1e-12));

  // p-form and F-form coincide along p1 = p2 = p.
  for (int i = 0; i <= 20; ++i) {
    double p = i / 20.0;
    PurificationPoint via_p = pcs_x_point_p(p, p);
    PurificationPoint via_f = pcs_x_point_F(fidelity_from_p(p));
    CHECK(std::abs(via_p.rate - via_f.rate) < 1e-10);
    CHECK(std::abs(via_p.f_out - via_f.f_out) < 1e-10);
  }
}

TEST_CASE("analytic: XZ-check points") {
  PurificationPoint zero = pcs_xz_point_p(0, 0);
  CHECK(zero.rate == doctest::Approx(1.0));
  CHECK(zero.f_out == doctest::Approx(1.0));
  CHECK(pcs_xz_point_p(1, 1).rate == doctest::Approx(1.0 / 16.0).epsilon(1e-12));

  CHECK(pcs_xz_point_F(1.0).rate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pcs_xz_point_F(1.0).f_out == doctest::Approx(1.0).epsilon(1e-12));

  PurificationPoint mid = pcs_xz_point_F(0.8);
  CHECK(mid.rate > 0.0);
  CHECK(mid.rate < 1.0);
  CHECK(mid.f_out > 0.8);
  CHECK(mid.f_out < 1.0);

  // First-order behavior near F = 1: F'(1 - E) = 1 - E/3 + O(E^2).
  double E = 1e-4;
  double slope = (1.0 - pcs_xz_point_F(1.0 - E).f_out) / E;
  CHECK(std::abs(slope - 1.0 / 3.0) < 1e-3 / 3.0);

  for (int i = 0; i <= 20; ++i) {
    double p = i / 20.0;
    PurificationPoint via_p = pcs_xz_point_p(p, p);
    PurificationPoint via_f = pcs_xz_point_F(fidelity_from_p(p));
    CHECK(std::abs(via_p.rate - via_f.rate) < 1e-10);
    CHECK(std::abs(via_p.f_out - via_f.f_out) < 1e-10);
  }
}

TEST_CASE("analytic: single-sided X check and the product law") {
  PurificationPoint zero = pcs_x_half_point(0);
  CHECK(zero.rate == doctest::Approx(1.0));
  CHECK(zero.f_out == doctest::Approx(1.0));
  CHECK(pcs_x_half_point(1.0).rate == doctest::Approx(0.5).epsilon(1e-12));

  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      double p1 = i / 20.0, p2 = j / 20.0;
      double product = pcs_x_half_point(p1).rate * pcs_x_half_point(p2).rate;
      CHECK(std::abs(product - pcs_x_point_p(p1, p2).rate) < 1e-12);
    }
  }
}

TEST_CASE("analytic: domains and ranges") {
  CHECK_THROWS_AS(pcs_x_point_F(0.2), std::domain_error);
  CHECK_THROWS_AS(pcs_xz_point_F(0.1), std::domain_error);
  CHECK_THROWS_AS(bbpssw_step(1.5), std::domain_error);
  CHECK_THROWS_AS(pcs_x_point_p(-0.1, 0.5), std::domain_error);

  for (int i = 0; i <= 40; ++i) {
    double p = i / 40.0;
    for (const PurificationPoint& pt :
         {pcs_x_point_p(p, p), pcs_xz_point_p(p, p), pcs_x_half_point(p)}) {
      CHECK(pt.rate >= -1e-12);
      CHECK(pt.rate <= 1 + 1e-12);
      CHECK(pt.f_out >= -1e-12);
      CHECK(pt.f_out <= 1 + 1e-12);
    }
  }
  // Both-check scheme dominates the X-only scheme at high fidelity.
  for (int i = 0; i <= 20; ++i) {
    double F = 0.5 + 0.5 * i / 20.0;
    CHECK(pcs_xz_point_F(F).f_out >= pcs_x_point_F(F).f_out - 1e-12);
  }
}

TEST_CASE("analytic: crossover regions") {
  auto [xlo, xhi] = crossover_region(Scheme::PcsX);
  CHECK(std::abs(xlo - 0.25) < 1e-9);
  CHECK(std::abs(xhi - 1.0) < 1e-9);

  auto [blo, bhi] = crossover_region(Scheme::Bbpssw);
  CHECK(std::abs(blo - 0.5) < 1e-6);
  CHECK(std::abs(bhi - 1.0) < 1e-9);

  auto [zlo, zhi] = crossover_region(Scheme::PcsXZ);
  CHECK(zlo > 0.25);
  CHECK(zlo < 0.5);
  CHECK(std::abs(zhi - 1.0) < 1e-9);
}
