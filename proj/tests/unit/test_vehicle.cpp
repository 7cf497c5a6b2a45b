#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

#include "hse/config.hpp"
#include "hse/vehicle.hpp"

using namespace hse;

namespace {

bool has_field(const std::vector<Violation>& v, const std::string& field) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.field == field; });
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

}  // namespace

TEST_CASE("default parameters match the research vehicle") {
  const VehicleParams p = default_params();
  CHECK(p.m == 2000.0);
  CHECK(p.Iz == 2400.0);
  CHECK(p.a == 1.52);
  CHECK(p.b == 1.35);
  CHECK(p.d == 1.63);
  CHECK(p.SR == 15.0);
  CHECK(p.Cf == 75000.0);
  CHECK(p.Cr == 110000.0);
  CHECK(p.mu == 0.9);
  CHECK(p.delta_f_max * 180.0 / M_PI == doctest::Approx(18.0).epsilon(1e-14));
  CHECK(p.delta_r_max * 180.0 / M_PI == doctest::Approx(33.0).epsilon(1e-14));
  CHECK(validate(p).empty());
}

TEST_CASE("derived axle loads") {
  const VehicleParams p = default_params();
  CHECK(p.L == doctest::Approx(2.87).epsilon(1e-15));
  // Static moment balance about each axle.
  CHECK(p.Fz_f == doctest::Approx(2000.0 * 9.81 * 1.35 / 2.87).epsilon(1e-14));
  CHECK(p.Fz_f == doctest::Approx(9229.0).epsilon(1e-4));
  CHECK(p.Fz_r == doctest::Approx(10391.0).epsilon(1e-4));
  CHECK(p.Fz_f * p.a == doctest::Approx(p.Fz_r * p.b).epsilon(1e-14));
}

TEST_CASE("validation reports every violated invariant") {
  VehicleParams p = default_params();
  p.m = -1.0;
  p.mu = 2.5;
  p.SR = 0.5;
  p.delta_r_max = 2.0;
  const auto v = validate(p);
  CHECK(has_field(v, "m"));
  CHECK(has_field(v, "mu"));
  CHECK(has_field(v, "SR"));
  CHECK(has_field(v, "delta_r_max"));
  CHECK(has_field(v, "Fz"));  // derived fields are stale after editing m

  VehicleParams stale = default_params();
  stale.a = 1.6;
  CHECK(has_field(validate(stale), "L"));
  stale.update_derived();
  CHECK(validate(stale).empty());

  VehicleParams nan = default_params();
  nan.Cf = std::nan("");
  nan.seat_dx = INFINITY;
  CHECK(has_field(validate(nan), "Cf"));
  CHECK(has_field(validate(nan), "seat_dx"));
}

TEST_CASE("derived fields depend only on primaries and recompute idempotently") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> m(500.0, 5000.0), len(0.5, 2.5), g(9.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    VehicleParams p = default_params();
    p.m = m(rng);
    p.a = len(rng);
    p.b = len(rng);
    p.g = g(rng);
    p.L = 123.0;
    p.Fz_f = -5.0;
    const VehicleParams once = with_derived(p);
    const VehicleParams twice = with_derived(once);
    CHECK(same_bits(once.L, twice.L));
    CHECK(same_bits(once.Fz_f, twice.Fz_f));
    CHECK(same_bits(once.Fz_r, twice.Fz_r));
    CHECK(once.Fz_f + once.Fz_r == doctest::Approx(p.m * p.g).epsilon(1e-13));
    CHECK(validate(once).empty());
  }
}

TEST_CASE("parameters round-trip through the config text bit for bit") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    ScenarioConfig cfg = parse_config({});
    VehicleParams& p = cfg.vehicle;
    p.m = 500.0 + 4000.0 * u(rng);
    p.Iz = 500.0 + 5000.0 * u(rng);
    p.a = 0.5 + 2.0 * u(rng);
    p.b = 0.5 + 2.0 * u(rng);
    p.d = 1.0 + u(rng);
    p.SR = 5.0 + 20.0 * u(rng);
    p.Cf = 2e4 + 2e5 * u(rng);
    p.Cr = 2e4 + 2e5 * u(rng);
    p.mu = 0.1 + 1.8 * u(rng);
    p.delta_f_max = 0.05 + 1.4 * u(rng);
    p.delta_r_max = 0.05 + 1.4 * u(rng);
    p.seat_dx = u(rng) - 0.5;
    p.seat_dy = u(rng) - 0.5;
    p.g = 9.0 + u(rng);
    p.update_derived();

    const ScenarioConfig back = parse_config(echo_config(cfg));
    const VehicleParams& q = back.vehicle;
    CHECK(same_bits(p.m, q.m));
    CHECK(same_bits(p.Iz, q.Iz));
    CHECK(same_bits(p.a, q.a));
    CHECK(same_bits(p.b, q.b));
    CHECK(same_bits(p.d, q.d));
    CHECK(same_bits(p.SR, q.SR));
    CHECK(same_bits(p.Cf, q.Cf));
    CHECK(same_bits(p.Cr, q.Cr));
    CHECK(same_bits(p.mu, q.mu));
    CHECK(same_bits(p.delta_f_max, q.delta_f_max));
    CHECK(same_bits(p.delta_r_max, q.delta_r_max));
    CHECK(same_bits(p.seat_dx, q.seat_dx));
    CHECK(same_bits(p.seat_dy, q.seat_dy));
    CHECK(same_bits(p.g, q.g));
    CHECK(same_bits(p.L, q.L));
    CHECK(same_bits(p.Fz_f, q.Fz_f));
    CHECK(echo_config(back) == echo_config(cfg));
  }
}

TEST_CASE("default echo keeps the values as written") {
  const auto echo = echo_config(parse_config({}));
  auto value = [&](const std::string& key) {
    for (const auto& [k, v] : echo)
      if (k == key) return v;
    return std::string("<missing>");
  };
  CHECK(value("vehicle.delta_f_max_deg") == "18");
  CHECK(value("vehicle.delta_r_max_deg") == "33");
  CHECK(value("vehicle.a_m") == "1.52");
}
