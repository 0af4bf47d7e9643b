#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "heunred/recurrence.hpp"

using namespace heunred;

TEST_CASE("recurrence_coeffs family A worked example") {
  CheParams p{2.0, 1.0, 1.0, 1.0, 0.0};
  ThreeTermCoeffs c = recurrence_coeffs(ExpansionFamily::A, p, 1);
  CHECK(c.R == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(c.Q == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(c.P == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("recurrence_coeffs family D worked example") {
  CheParams p{0.0, 2.0, 0.0, 3.0, 0.0};
  ThreeTermCoeffs c = recurrence_coeffs(ExpansionFamily::D, p, 1);
  CHECK(c.P == doctest::Approx(-3.0).epsilon(1e-15));
}

TEST_CASE("R_0 vanishes for every family") {
  CheParams p{1.7, 0.9, 0.6, 1.2, 0.4};
  for (ExpansionFamily f : {ExpansionFamily::A, ExpansionFamily::B,
                            ExpansionFamily::C}) {
    CHECK(recurrence_coeffs(f, p, 0).R == 0.0);
  }
  CheParams pd{1.7, 0.9, 0.0, 1.2, 0.4};
  CHECK(recurrence_coeffs(ExpansionFamily::D, pd, 0).R == 0.0);
}

TEST_CASE("family D coefficients equal family A at epsilon = 0") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    CheParams p{u(rng), u(rng), 0.0, u(rng), u(rng)};
    for (int n = 0; n <= 30; ++n) {
      bool da_threw = false, dd_threw = false;
      ThreeTermCoeffs ca{}, cd{};
      try {
        ca = recurrence_coeffs(ExpansionFamily::A, p, n);
      } catch (const std::domain_error&) {
        da_threw = true;
      }
      try {
        cd = recurrence_coeffs(ExpansionFamily::D, p, n);
      } catch (const std::domain_error&) {
        dd_threw = true;
      }
      REQUIRE(da_threw == dd_threw);
      if (da_threw) continue;
      CHECK(ca.R == cd.R);
      CHECK(ca.Q == cd.Q);
      CHECK(ca.P == cd.P);
    }
  }
}

TEST_CASE("validate_family messages") {
  CheParams eps0{3.0, 3.0, 0.0, 2.0, 0.0};
  CHECK_THROWS_WITH_AS(validate_family(ExpansionFamily::A, eps0),
                       "family A requires epsilon != 0", std::invalid_argument);
  CheParams bad_b{0.0, 1.0, 1.0, 1.0, 0.0};
  CHECK_THROWS_AS(validate_family(ExpansionFamily::B, bad_b),
                  std::invalid_argument);
  CheParams bad_sum{2.0, -2.0, 1.0, 1.0, 0.0};
  CHECK_THROWS_AS(validate_family(ExpansionFamily::A, bad_sum),
                  std::invalid_argument);
  CheParams d_eps{0.0, 2.5, 0.1, 1.0, 0.0};
  CHECK_THROWS_AS(validate_family(ExpansionFamily::D, d_eps),
                  std::invalid_argument);
  CheParams d_al0{0.0, 2.5, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(validate_family(ExpansionFamily::D, d_al0),
                  std::invalid_argument);
}

TEST_CASE("run_three_term normalisation and first step") {
  CheParams p{1.8, 0.9, 0.7, 1.2, 0.45};
  CoefficientSeries s = run_three_term(ExpansionFamily::A, p, 10);
  CHECK(s.c[0] == 1.0);
  // n = 1 reads R_1 c_1 + Q_0 c_0 = 0, i.e. c_1 = (alpha - q)/(gamma+delta)
  CHECK(s.c[1] ==
        doctest::Approx((p.alpha - p.q) / (p.gamma + p.delta)).epsilon(1e-14));
}

TEST_CASE("run_three_term self-consistency across families") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.4, 3.0), sign(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    double g = u(rng), d = u(rng), ep = (sign(rng) > 0 ? 1 : -1) * u(rng);
    double al = (sign(rng) > 0 ? 1 : -1) * u(rng), q = sign(rng) * 2.0;
    for (ExpansionFamily f :
         {ExpansionFamily::A, ExpansionFamily::B, ExpansionFamily::C,
          ExpansionFamily::D}) {
      CheParams p{g, d, f == ExpansionFamily::D ? 0.0 : ep, al, q};
      if (f == ExpansionFamily::B) {
        // keep R_n = n(a - gamma + n) away from zero in range
        double a = al / ep;
        bool skip = false;
        for (int n = 1; n <= 40 && !skip; ++n)
          if (std::abs(a - g + n) < 0.05) skip = true;
        if (skip) continue;
      }
      CoefficientSeries s;
      try {
        s = run_three_term(f, p, 40);
      } catch (const std::exception&) {
        continue;  // draw violated a family condition; not under test here
      }
      for (int n = 2; n <= 40; ++n) {
        double Rn = recurrence_coeffs(f, p, n).R * s.c[n];
        double Qn = recurrence_coeffs(f, p, n - 1).Q * s.c[n - 1];
        double Pn = recurrence_coeffs(f, p, n - 2).P * s.c[n - 2];
        double scale =
            std::max({std::abs(Rn), std::abs(Qn), std::abs(Pn), 1e-300});
        CHECK(std::abs(Rn + Qn + Pn) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("run_three_term reports the index of a vanishing R_n") {
  // family B with alpha/eps - gamma = -3 makes R_3 = 0
  CheParams p{4.0, 0.5, 1.0, 1.0, 0.2};
  try {
    run_three_term(ExpansionFamily::B, p, 10);
    FAIL("expected run_three_term to throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("n = 3") != std::string::npos);
  }
}

TEST_CASE("exact termination is detected") {
  // family A reduction with delta = 0: q = alpha makes c_n = 0 for n >= 1
  CheParams p{3.0, 0.0, 1.0, 2.0, 2.0};
  CoefficientSeries s = run_three_term(ExpansionFamily::A, p, 12);
  REQUIRE(s.terminated_at.has_value());
  CHECK(*s.terminated_at == 1);
  for (int n = 1; n <= 12; ++n) CHECK(s.c[n] == 0.0);
}
