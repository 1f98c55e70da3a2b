#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gripkit/error.h"
#include "gripkit/leadscrew.h"
#include "gripkit/linkage.h"
#include "gripkit/units.h"
#include "oracles.h"

using namespace gripkit;

using oracle::virtual_work_ratio;

TEST_CASE("ratio matches the virtual-work oracle over the clamp region") {
  const LinkageParams p;
  for (double x = 50.0; x <= 59.0 + 1e-9; x += 0.25) {
    CHECK(transmission_ratio(p, x) == doctest::Approx(virtual_work_ratio(p, x)).epsilon(1e-7));
  }
  CHECK(std::abs(transmission_ratio(p, 59.0) - virtual_work_ratio(p, 59.0)) < 1e-6);
}

TEST_CASE("ratio at full travel is close to one to one") {
  const double r = transmission_ratio(LinkageParams{}, 59.0);
  CHECK(r == doctest::Approx(0.9262665566929928).epsilon(1e-12));
  CHECK(std::abs(r - 1.0) < 0.15);
}

TEST_CASE("ratio strictly increases on the clamp region") {
  const LinkageParams p;
  double prev = 0.0;
  for (int i = 0; i <= 900; ++i) {
    const double r = transmission_ratio(p, 50.0 + 0.01 * i);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("torque for 30 N peaks at the start of the clamp region") {
  const auto rows = sweep_transmission(LinkageParams{}, TravelRange{}, 0.1, 30.0, ScrewParams::tr8x8());
  REQUIRE(rows.size() == 91);
  std::size_t arg = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].feasible);
    if (rows[i].t_motor > rows[arg].t_motor) arg = i;
  }
  CHECK(arg == 0);
  CHECK(rows[arg].t_motor == doctest::Approx(0.35).epsilon(0.02 / 0.35));
  CHECK(rows[arg].t_motor == doctest::Approx(0.34867).epsilon(1e-4));
}

TEST_CASE("geometry errors") {
  const LinkageParams p;
  CHECK_THROWS_WITH_AS(solve_geometry(p, 83.0), doctest::Contains("NegativeY"), Error);
  CHECK_THROWS_AS(solve_geometry(p, 90.0), Error);
  try {
    solve_geometry(p, 20.0);
    FAIL("expected infeasible geometry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGeometryInfeasible);
    CHECK(std::string(e.what()).find("x = 20") != std::string::npos);
  }
  LinkageParams bad;
  bad.l_f = 0.0;
  CHECK_THROWS_AS(solve_geometry(bad, 55.0), Error);
}

TEST_CASE("sweep keeps infeasible rows") {
  TravelRange r{10.0, 59.0};
  const auto rows = sweep_transmission(LinkageParams{}, r, 1.0, 30.0, ScrewParams::tr8x8());
  CHECK(rows.size() == 50);
  CHECK_FALSE(rows.front().feasible);
  CHECK_FALSE(rows.front().error.empty());
  CHECK(rows.back().feasible);
  CHECK_THROWS_AS(sweep_transmission(LinkageParams{}, TravelRange{59.0, 50.0}, 0.1, 30.0,
                                     ScrewParams::tr8x8()),
                  Error);
}

TEST_CASE("closed form and vector moment balance agree on random linkages") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int linkages = 0;
  double worst = 0.0;
  while (linkages < 100) {
    LinkageParams p;
    p.p_x = 5 + 15 * u(rng);
    p.l_k = 10 + 15 * u(rng);
    p.l_b = p.l_k + 15 * u(rng);
    p.l_f = 30 + 30 * u(rng);
    p.l_n = 3 + 7 * u(rng);
    p.p_y = 90;
    std::vector<double> ok;
    for (double x = 0.0; x < p.p_y - p.l_n; x += 0.25) {
      try {
        solve_geometry(p, x);
        ok.push_back(x);
      } catch (const Error&) {
      }
    }
    if (ok.size() < 20) continue;
    ++linkages;
    for (int k = 0; k < 20; ++k) {
      const double x = ok[k * (ok.size() - 1) / 19];
      const double r = moment_balance_check(p, x, 10 + 90 * u(rng));
      worst = std::max(worst, r);
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("bruise curve through the anchor") {
  const LinkageParams p;
  const double f_nut = anchored_nut_force(p, 18.0, 58.0);
  CHECK(f_nut == doctest::Approx(18.0 / transmission_ratio(p, 58.0)));
  const auto rows = bruise_curve(p, TravelRange{}, 0.1, f_nut, 30.0);
  double prev = -1.0;
  for (const auto& r : rows) {
    CHECK_FALSE(r.exceeds);
    CHECK(r.f_out <= 30.0);
    if (r.x >= 52.0 - 1e-9 && r.x <= 58.0 + 1e-9) {
      CHECK(r.f_out > prev);
      prev = r.f_out;
    }
    if (std::abs(r.x - 58.0) < 1e-9) CHECK(r.f_out == doctest::Approx(18.0).epsilon(1e-12));
  }
  const auto hot = bruise_curve(p, TravelRange{}, 0.1, anchored_nut_force(p, 100.0, 58.0), 30.0);
  bool flagged = false;
  for (const auto& r : hot) flagged = flagged || r.exceeds;
  CHECK(flagged);
}
