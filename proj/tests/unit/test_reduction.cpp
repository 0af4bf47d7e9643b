#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "heunred/reduction.hpp"

using namespace heunred;

namespace {

// componentwise agreement relative to the series scale
double series_deviation(const CoefficientSeries& a, const CoefficientSeries& b) {
  REQUIRE(a.c.size() == b.c.size());
  double cmax = 0.0;
  for (size_t n = 0; n < a.c.size(); ++n)
    cmax = std::max({cmax, std::abs(a.c[n]), std::abs(b.c[n])});
  double dev = 0.0;
  for (size_t n = 0; n < a.c.size(); ++n) {
    double scale = std::max({std::abs(a.c[n]), std::abs(b.c[n]), cmax});
    dev = std::max(dev, std::abs(a.c[n] - b.c[n]) / scale);
  }
  return dev;
}

void check_cross(const ReductionSpec& spec, int nmax = 50) {
  CoefficientSeries cf = closed_form_coeffs(spec, nmax);
  CoefficientSeries rec = run_three_term(spec.family, spec.params, nmax);
  CHECK(series_deviation(cf, rec) <= 1e-11);
}

}  // namespace

TEST_CASE("apply_restriction per family") {
  CheParams a{0.0, 3.0, 1.0, 2.0, 0.0};
  CHECK(apply_restriction(ExpansionFamily::A, a, 0).gamma == 3.0);
  CheParams d{5.0, 2.5, 0.0, 1.3, 0.0};
  CHECK(apply_restriction(ExpansionFamily::D, d, 2).gamma == -2.0);
  CheParams c{2.0, 0.0, 1.0, 3.0, 0.0};
  CHECK(apply_restriction(ExpansionFamily::C, c, 1).delta == 1.0);
  CHECK_THROWS_AS(apply_restriction(ExpansionFamily::B, a, 0),
                  std::invalid_argument);
  CheParams eps0{0.0, 3.0, 0.0, 2.0, 0.0};
  CHECK_THROWS_AS(apply_restriction(ExpansionFamily::A, eps0, 0),
                  std::domain_error);
}

TEST_CASE("ansatz_ratio worked examples") {
  ReductionSpec a0;
  a0.family = ExpansionFamily::A;
  a0.N = 0;
  a0.q = -4.0;
  a0.params = {3.0, 3.0, 1.0, 2.0, -4.0};
  CHECK(ansatz_ratio(a0, 1) == doctest::Approx(1.0).epsilon(1e-15));

  // zero numerator factor: delta - 1 + n = 0 at delta = 0, n = 1
  ReductionSpec az;
  az.family = ExpansionFamily::A;
  az.N = 0;
  az.q = 2.0;
  az.params = {3.0, 0.0, 1.0, 2.0, 2.0};
  CHECK(ansatz_ratio(az, 1) == 0.0);

  // ratio of the closed form at n=1 vs n=0: alpha/(delta - N) = 3/2
  ReductionSpec d0;
  d0.family = ExpansionFamily::D;
  d0.N = 0;
  d0.q = 0.0;
  d0.params = {0.0, 2.0, 0.0, 3.0, 0.0};
  CHECK(ansatz_ratio(d0, 1) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("constraint polynomial vanishes exactly on the N=0 reduction") {
  CheParams free_p{0.0, 3.0, 1.0, 2.0, 0.0};
  CheParams pr = apply_restriction(ExpansionFamily::A, free_p, 0);
  pr.q = pr.alpha * (1.0 - pr.delta / pr.epsilon);  // = -4
  auto terms = build_constraint_terms(ExpansionFamily::A, pr, {});
  RealPoly sum = terms[0] + terms[1] + terms[2];
  CHECK(sum.max_abs_coeff() <= kTolCoeff * constraint_scale(terms));

  // perturbing q by 1 enters only the constant coefficient, linearly
  CheParams bad = pr;
  bad.q += 1.0;
  RealPoly p2 = build_constraint_poly(ExpansionFamily::A, bad, {});
  CHECK(p2.coeff(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(p2.coeff(1)) <= 1e-12);
}

TEST_CASE("family A leading coefficients without the restriction") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> gs(0.3, 4.0), ds(-2.0, 4.0),
      mag(0.4, 2.5), qs(-3.0, 3.0), es(0.2, 2.5);
  std::uniform_int_distribution<int> Ns(0, 4), coin(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    int N = Ns(rng);
    double ep = (coin(rng) ? 1 : -1) * mag(rng);
    CheParams p{gs(rng), ds(rng), ep, (coin(rng) ? 1 : -1) * mag(rng) * ep,
                qs(rng)};
    std::vector<double> e;
    for (int k = 0; k < N; ++k) e.push_back((coin(rng) ? 1 : -1) * es(rng));
    auto terms = build_constraint_terms(ExpansionFamily::A, p, e);
    RealPoly sum = terms[0] + terms[1] + terms[2];
    double scale = constraint_scale(terms);
    double expected = p.gamma - N - 1.0 - p.alpha / p.epsilon;
    CHECK(std::abs(sum.coeff(N + 1) - expected) <= 1e-11 * scale);
    CHECK(std::abs(sum.coeff(N + 2)) <= 1e-11 * scale);
  }
}

TEST_CASE("family B obstruction equals epsilon") {
  CheParams p{2.0, 1.0, 0.7, 1.1, 0.3};
  CHECK(check_family_b_obstruction(p, {}) ==
        doctest::Approx(0.7).epsilon(1e-12));
  CHECK(check_family_b_obstruction(p, {1.5}) ==
        doctest::Approx(0.7).epsilon(1e-12));

  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> gs(0.3, 3.0), ds(-2.0, 3.0),
      mag(0.4, 2.0), qs(-3.0, 3.0), es(0.2, 2.5);
  std::uniform_int_distribution<int> Ns(0, 4), coin(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    int N = Ns(rng);
    double ep = (coin(rng) ? 1 : -1) * mag(rng);
    CheParams pp{gs(rng), ds(rng), ep, (coin(rng) ? 1 : -1) * mag(rng),
                 qs(rng)};
    std::vector<double> e;
    for (int k = 0; k < N; ++k) e.push_back((coin(rng) ? 1 : -1) * es(rng));
    auto terms = build_constraint_terms(ExpansionFamily::B, pp, e);
    double scale = constraint_scale(terms);
    CHECK(std::abs(check_family_b_obstruction(pp, e) - ep) <= 1e-11 * scale);
  }
}

TEST_CASE("solve_reduction A N=0 canonical case") {
  CheParams p{0.0, 3.0, 1.0, 2.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::A, p, 0);
  REQUIRE(r.specs.size() == 1);
  const ReductionSpec& s = r.specs[0];
  CHECK(s.params.gamma == doctest::Approx(3.0));
  CHECK(s.q == doctest::Approx(-4.0));
  CoefficientSeries cf = closed_form_coeffs(s, 50);
  CHECK(cf.c[0] == 1.0);
  CHECK(cf.c[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cf.c[2] == doctest::Approx(6.0 / 7.0).epsilon(1e-14));
  check_cross(s);
}

TEST_CASE("solve_reduction D N=0") {
  CheParams p{0.0, 2.5, 0.0, 1.3, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::D, p, 0);
  REQUIRE(r.specs.size() == 1);
  CHECK(r.specs[0].params.gamma == 0.0);
  CHECK(r.specs[0].q == 0.0);
  CHECK(reduction_residual(r.specs[0]) <= kTolCoeff);
  check_cross(r.specs[0]);
}

TEST_CASE("solve_reduction A N=1: two real roots") {
  CheParams p{0.0, 5.0, 1.0, 1.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::A, p, 1);
  REQUIRE(r.specs.size() == 2);
  CHECK(r.specs[0].q == doctest::Approx(-7.6180339887498949).epsilon(1e-13));
  CHECK(r.specs[0].e[0] == doctest::Approx(1.3819660112501051).epsilon(1e-12));
  CHECK(r.specs[1].q == doctest::Approx(-5.3819660112501051).epsilon(1e-13));
  CHECK(r.specs[1].e[0] == doctest::Approx(3.6180339887498949).epsilon(1e-12));
  for (const auto& s : r.specs) check_cross(s);
}

TEST_CASE("solve_reduction A N=1: double root deduplicated") {
  CheParams p{0.0, 4.0, 1.0, 1.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::A, p, 1);
  REQUIRE(r.specs.size() == 1);
  CHECK(r.specs[0].q == doctest::Approx(-5.0).epsilon(1e-10));
  CHECK(r.specs[0].e[0] == doctest::Approx(2.0).epsilon(1e-9));
  check_cross(r.specs[0]);
}

TEST_CASE("solve_reduction A N=1: complex roots are diagnosed") {
  CheParams p{0.0, 1.0, 1.0, 1.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::A, p, 1);
  CHECK(r.specs.empty());
  REQUIRE(r.rejected.size() == 2);
  CHECK(r.rejected[0].reason.find("complex") != std::string::npos);
}

TEST_CASE("solve_reduction A N=2: complex e pair is diagnosed") {
  CheParams p{0.0, 5.0, 1.0, 1.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::A, p, 2);
  CHECK(r.specs.empty());
  bool complex_e = false;
  for (const auto& rej : r.rejected)
    if (rej.reason.find("complex e pair") != std::string::npos)
      complex_e = true;
  CHECK(complex_e);
}

TEST_CASE("solve_reduction D N=1 (corrected accessory-parameter relation)") {
  CheParams p{0.0, 4.0, 0.0, 2.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::D, p, 1);
  REQUIRE(r.specs.size() == 2);
  CHECK(r.specs[0].q ==
        doctest::Approx(-0.56155281280883027).epsilon(1e-13));
  CHECK(r.specs[0].e[0] ==
        doctest::Approx(3.5615528128088303).epsilon(1e-12));
  CHECK(r.specs[1].q == doctest::Approx(3.5615528128088303).epsilon(1e-13));
  CHECK(r.specs[1].e[0] ==
        doctest::Approx(-0.56155281280883027).epsilon(1e-12));
  for (const auto& s : r.specs) {
    // q e_1 + alpha = 0 holds on the corrected system
    CHECK(std::abs(s.q * s.e[0] + 2.0) <= 1e-10);
    check_cross(s);
  }
}

TEST_CASE("solve_reduction D N=2") {
  CheParams p{0.0, 4.0, 0.0, 2.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::D, p, 2);
  REQUIRE(r.specs.size() == 2);
  CHECK(r.specs[0].q == doctest::Approx(2.4782465565131089).epsilon(1e-12));
  CHECK(r.specs[0].e[0] ==
        doctest::Approx(-0.84434139903463500).epsilon(1e-10));
  CHECK(r.specs[0].e[1] ==
        doctest::Approx(3.3660948425215261).epsilon(1e-10));
  CHECK(r.specs[1].q == doctest::Approx(6.9210097400375270).epsilon(1e-12));
  bool complex_e = false;
  for (const auto& rej : r.rejected)
    if (rej.reason.find("complex e pair") != std::string::npos)
      complex_e = true;
  CHECK(complex_e);  // the root near -1.399 has a complex e pair
  for (const auto& s : r.specs) check_cross(s);
}

TEST_CASE("solve_reduction C N=1 (terminating at delta = -1)") {
  CheParams p{2.3, 0.0, 1.0, 1.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::C, p, 1);
  REQUIRE(r.specs.size() == 2);
  CHECK(r.specs[0].params.delta == doctest::Approx(-1.0));
  CHECK(r.specs[0].q == doctest::Approx(1.5821091654199726).epsilon(1e-13));
  CHECK(r.specs[0].e[0] ==
        doctest::Approx(-0.41789083458002736).epsilon(1e-11));
  CHECK(r.specs[1].q == doctest::Approx(2.7178908345800274).epsilon(1e-13));
  for (const auto& s : r.specs) {
    CoefficientSeries cf = closed_form_coeffs(s, 20);
    REQUIRE(cf.terminated_at.has_value());
    CHECK(*cf.terminated_at == 2);
    check_cross(s, 20);
  }
}

TEST_CASE("solve_reduction C N=2") {
  CheParams p{2.3, 0.0, 1.0, 4.5, 0.0};  // delta becomes 1.5
  ReductionResult r = solve_reduction(ExpansionFamily::C, p, 2);
  REQUIRE(r.specs.size() == 3);
  CHECK(r.specs[0].q == doctest::Approx(-1.1773903114271667).epsilon(1e-12));
  CHECK(r.specs[1].q == doctest::Approx(1.8532784718814220).epsilon(1e-12));
  CHECK(r.specs[2].q == doctest::Approx(5.0741118395457446).epsilon(1e-12));
  for (const auto& s : r.specs) {
    CHECK(s.params.delta == doctest::Approx(1.5));
    check_cross(s);
  }
}

TEST_CASE("family A integer delta < -N is rejected as vanishing") {
  CheParams p{0.0, -2.0, 1.0, 2.5, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::A, p, 0);
  CHECK(r.specs.empty());
  REQUIRE(!r.rejected.empty());
  CHECK(r.rejected[0].reason.find("vanishes") != std::string::npos);
}

TEST_CASE("closed-form ratios equal the ansatz ratio") {
  CheParams p{0.0, 5.0, 1.0, 1.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::A, p, 1);
  REQUIRE(!r.specs.empty());
  const ReductionSpec& s = r.specs[0];
  CoefficientSeries cf = closed_form_coeffs(s, 30);
  for (int n = 1; n <= 30; ++n) {
    if (cf.c[n - 1] == 0.0) continue;
    double ratio = cf.c[n] / cf.c[n - 1];
    CHECK(std::abs(ratio - ansatz_ratio(s, n)) <=
          1e-13 * std::max(1.0, std::abs(ratio)));
  }
}

TEST_CASE("closed_form_coeffs ignores the order of e") {
  ReductionSpec s;
  s.family = ExpansionFamily::D;
  s.N = 2;
  s.q = 2.4782465565131089;
  s.e = {3.3660948425215261, -0.84434139903463500};  // deliberately swapped
  s.params = {-2.0, 4.0, 0.0, 2.0, s.q};
  ReductionSpec sorted_spec = s;
  sorted_spec.e = {-0.84434139903463500, 3.3660948425215261};
  CoefficientSeries a = closed_form_coeffs(s, 25);
  CoefficientSeries b = closed_form_coeffs(sorted_spec, 25);
  for (size_t n = 0; n < a.c.size(); ++n) CHECK(a.c[n] == b.c[n]);
}

TEST_CASE("finite sum: family A delta = -1, N = 1") {
  CheParams p{0.0, -1.0, 1.0, 2.0, 0.0};
  ReductionResult r = solve_reduction(ExpansionFamily::A, p, 1);
  REQUIRE(r.specs.size() == 2);
  for (const auto& s : r.specs) {
    CoefficientSeries cf = closed_form_coeffs(s, 20);
    REQUIRE(cf.terminated_at.has_value());
    CHECK(*cf.terminated_at == 2);
    CHECK(cf.c[1] != 0.0);
    for (int n = 2; n <= 20; ++n) CHECK(cf.c[n] == 0.0);
    check_cross(s, 20);
  }
}

TEST_CASE("solve_reduction_general reproduces the N=1 closed form") {
  CheParams p{0.0, 5.0, 1.0, 1.0, 0.0};
  ReductionResult direct = solve_reduction(ExpansionFamily::A, p, 1);
  ReductionResult gen =
      solve_reduction_general(ExpansionFamily::A, p, 1, 64, 12345);
  REQUIRE(direct.specs.size() == gen.specs.size());
  for (size_t i = 0; i < direct.specs.size(); ++i) {
    CHECK(std::abs(direct.specs[i].q - gen.specs[i].q) <= 1e-7);
    CHECK(std::abs(direct.specs[i].e[0] - gen.specs[i].e[0]) <= 1e-7);
  }
}

TEST_CASE("solve_reduction_general reproduces the N=2 closed form") {
  CheParams p{0.0, 4.0, 0.0, 2.0, 0.0};
  ReductionResult direct = solve_reduction(ExpansionFamily::D, p, 2);
  ReductionResult gen =
      solve_reduction_general(ExpansionFamily::D, p, 2, 64, 999);
  REQUIRE(direct.specs.size() == gen.specs.size());
  for (size_t i = 0; i < direct.specs.size(); ++i) {
    CHECK(std::abs(direct.specs[i].q - gen.specs[i].q) <= 1e-7);
    for (size_t k = 0; k < 2; ++k)
      CHECK(std::abs(direct.specs[i].e[k] - gen.specs[i].e[k]) <= 1e-7);
  }
}

TEST_CASE("solve_reduction_general N=3 specs satisfy all invariants") {
  CheParams p{0.0, 5.0, 0.0, 1.0, 0.0};
  ReductionResult gen =
      solve_reduction_general(ExpansionFamily::D, p, 3, 96, 2024);
  REQUIRE(!gen.specs.empty());
  for (const auto& s : gen.specs) {
    CHECK(reduction_residual(s) <= kTolCoeff);
    check_cross(s);
  }
}

TEST_CASE("solve_reduction_general is deterministic for a fixed seed") {
  CheParams p{0.0, 4.0, 0.0, 2.0, 0.0};
  ReductionResult a = solve_reduction_general(ExpansionFamily::D, p, 2, 64, 7);
  ReductionResult b = solve_reduction_general(ExpansionFamily::D, p, 2, 64, 7);
  REQUIRE(a.specs.size() == b.specs.size());
  for (size_t i = 0; i < a.specs.size(); ++i) {
    CHECK(a.specs[i].q == b.specs[i].q);
    CHECK(a.specs[i].e == b.specs[i].e);
  }
}
