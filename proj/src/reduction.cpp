#include "heunred/reduction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace heunred {

namespace {

double alpha_over_eps(const CheParams& p) {
  if (p.epsilon == 0.0)
    throw std::domain_error("alpha/epsilon undefined: epsilon = 0");
  return p.alpha / p.epsilon;
}

bool e_admissible(double e) { return !is_nonpositive_integer(e, kTolAdmissible); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

CheParams apply_restriction(ExpansionFamily f, const CheParams& p, int N) {
  if (N < 0) throw std::invalid_argument("apply_restriction: N must be >= 0");
  CheParams out = p;
  switch (f) {
    case ExpansionFamily::A:
      out.gamma = alpha_over_eps(p) + 1.0 + N;
      break;
    case ExpansionFamily::C:
      out.delta = alpha_over_eps(p) - 1.0 - N;
      break;
    case ExpansionFamily::D:
      out.gamma = -static_cast<double>(N);
      out.epsilon = 0.0;
      break;
    case ExpansionFamily::B:
      throw std::invalid_argument(
          "family B admits no two-term reduction (see "
          "check_family_b_obstruction)");
  }
  return out;
}

double ansatz_ratio(const ReductionSpec& spec, int n) {
  if (n < 1) throw std::domain_error("ansatz_ratio: n must be >= 1");
  const CheParams& p = spec.params;
  double g = p.gamma, d = p.delta;
  double eprod = 1.0;
  for (double ek : spec.e) {
    if (std::abs(ek - 1.0 + n) < 1e-300)
      throw std::domain_error("ansatz_ratio: e_k - 1 + n = 0");
    eprod *= (ek + n) / (ek - 1.0 + n);
  }
  double num, den;
  switch (spec.family) {
    case ExpansionFamily::A: {
      double a = alpha_over_eps(p);
      num = (a - 1.0 + n) * (d - 1.0 + n);
      den = (g + d - 1.0 + n) * n;
      break;
    }
    case ExpansionFamily::C: {
      num = (d - 1.0 + n) * (g - 2.0 - spec.N + n);
      den = (g + d - 1.0 + n) * n;
      break;
    }
    case ExpansionFamily::D: {
      num = p.alpha;
      den = n * (d - spec.N - 1.0 + n);
      break;
    }
    case ExpansionFamily::B:
      throw std::invalid_argument("ansatz_ratio: family B unsupported");
    default:
      num = den = 0.0;
  }
  if (std::abs(den) < 1e-300)
    throw std::domain_error("ansatz_ratio: zero denominator");
  return num / den * eprod;
}

std::array<RealPoly, 3> build_constraint_terms_from_product(
    ExpansionFamily f, const CheParams& p, int N, const RealPoly& E0) {
  RealPoly E1 = E0.shifted(-1.0);
  RealPoly E2 = E0.shifted(-2.0);
  double g = p.gamma, d = p.delta, ep = p.epsilon, al = p.alpha, q = p.q;

  RealPoly T1, T2, T3;
  switch (f) {
    case ExpansionFamily::A: {
      double a = alpha_over_eps(p);
      T1 = RealPoly::from_roots({1.0 - a, 1.0 - d}) * E0 * (-1.0);
      RealPoly Qm({al - q, g + d + ep - 1.0, 1.0});
      T2 = Qm.shifted(-1.0) * E1;
      T3 = RealPoly::from_roots({1.0}) * E2 * (-ep);
      break;
    }
    case ExpansionFamily::B: {
      double a = alpha_over_eps(p);
      T1 = RealPoly::from_roots({1.0 - a, 1.0 - d}) * E0;
      RealPoly Qm({a * (ep - d) - q, g + ep - d - 2.0 * a, -2.0});
      T2 = Qm.shifted(-1.0) * E1;
      T3 = RealPoly::from_roots({g + 1.0 - a, 1.0}) * E2;
      break;
    }
    case ExpansionFamily::C: {
      double a = alpha_over_eps(p);
      if (std::abs(d - (a - 1.0 - N)) > 1e-8 * std::max(1.0, std::abs(d)))
        throw std::domain_error(
            "build_constraint_terms: family C requires delta = "
            "alpha/epsilon - 1 - N");
      T1 = RealPoly::from_roots({1.0 - d, 2.0 + N - g}) * E0 * (-1.0);
      RealPoly Qm({al - q - d * ep, -(1.0 - g - d + ep), 1.0});
      T2 = Qm.shifted(-1.0) * E1;
      T3 = RealPoly::from_roots({1.0}) * E2 * ep;
      break;
    }
    case ExpansionFamily::D: {
      if (p.epsilon != 0.0)
        throw std::domain_error("build_constraint_terms: family D needs eps=0");
      if (std::abs(g + N) > 1e-8)
        throw std::domain_error(
            "build_constraint_terms: family D requires gamma = -N");
      T1 = E0 * (-al);
      RealPoly Qm({al - q, g + d - 1.0, 1.0});
      T2 = Qm.shifted(-1.0) * E1;
      T3 = RealPoly::from_roots({2.0 - d, 1.0}) * E2 * (-1.0);
      break;
    }
  }
  return {T1, T2, T3};
}

std::array<RealPoly, 3> build_constraint_terms(ExpansionFamily f,
                                               const CheParams& p,
                                               const std::vector<double>& e) {
  std::vector<double> roots;
  roots.reserve(e.size());
  for (double ek : e) roots.push_back(-ek);
  return build_constraint_terms_from_product(
      f, p, static_cast<int>(e.size()), RealPoly::from_roots(roots));
}

RealPoly build_constraint_poly(ExpansionFamily f, const CheParams& p,
                               const std::vector<double>& e) {
  auto t = build_constraint_terms(f, p, e);
  return t[0] + t[1] + t[2];
}

double constraint_scale(const std::array<RealPoly, 3>& terms) {
  double s = 1.0;
  for (const auto& t : terms) s = std::max(s, t.max_abs_coeff());
  return s;
}

double reduction_residual(const ReductionSpec& spec) {
  CheParams pq = spec.params;
  pq.q = spec.q;
  auto terms = build_constraint_terms(spec.family, pq, spec.e);
  RealPoly sum = terms[0] + terms[1] + terms[2];
  return sum.max_abs_coeff() / constraint_scale(terms);
}

namespace {

// accessory-parameter polynomial and the e-recovery rules for the
// published N = 0, 1, 2 systems (with the two corrected misprints, see
// the audit in the acceptance suite)
RealPoly direct_q_poly(ExpansionFamily f, const CheParams& pr, int N) {
  double g = pr.gamma, d = pr.delta, ep = pr.epsilon, al = pr.alpha;
  switch (f) {
    case ExpansionFamily::A: {
      double a = al / ep;
      if (N == 0) return RealPoly({-(al * (1.0 - d / ep)), 1.0});
      if (N == 1)
        return RealPoly({a * (a * (d - ep) * (1.0 + d - ep) +
                              (d + d * d - 2.0 * d * ep + ep * ep)),
                         a * (1.0 + 2.0 * d) - 2.0 * al - ep + d, 1.0});
      return RealPoly(
          {a * (a * a * (d - ep) * (1.0 + d - ep) * (2.0 + d - ep) +
                a * (1.0 + d - ep) *
                    (3.0 * d * (2.0 + d) - 2.0 * (1.0 + 3.0 * d) * ep +
                     3.0 * ep * ep) +
                2.0 * (d * (1.0 + d) * (2.0 + d) - 3.0 * d * (1.0 + d) * ep +
                       3.0 * d * ep * ep - ep * ep * ep)),
           a * a * (2.0 + 3.0 * d * d - 6.0 * d * (ep - 1.0) +
                    3.0 * ep * (ep - 2.0)) +
               2.0 * a *
                   (1.0 + 3.0 * d * d + d * (5.0 - 6.0 * ep) +
                    3.0 * ep * (ep - 1.0)) +
               2.0 * (d + d * d - 2.0 * d * ep + ep * ep),
           1.0 + 3.0 * d - 3.0 * ep - 3.0 * al + 3.0 * al * (1.0 + d) / ep,
           1.0});
    }
    case ExpansionFamily::C: {
      if (N == 0) return RealPoly({-((1.0 - g) * d + ep), 1.0});
      if (N == 1)
        return RealPoly({(2.0 - 3.0 * g + g * g) * d * d +
                             2.0 * ep * (2.0 - g + ep) +
                             d * (2.0 + g * g + 4.0 * ep - 3.0 * g -
                                  3.0 * g * ep),
                         g - 2.0 - 3.0 * d + 2.0 * g * d - 3.0 * ep, 1.0});
      return RealPoly(
          {(g - 1.0) * (g - 2.0) * (g - 3.0) * d * (1.0 + d) * (2.0 + d) -
               2.0 *
                   (9.0 * (1.0 + d) * (2.0 + d) +
                    g * g * (3.0 + d * (7.0 + 3.0 * d)) -
                    g * (15.0 + d * (29.0 + 11.0 * d))) *
                   ep +
               (-18.0 * (2.0 + d) + g * (15.0 + 11.0 * d)) * ep * ep -
               6.0 * ep * ep * ep,
           12.0 + 26.0 * d + g * g * (2.0 + 3.0 * d * (2.0 + d)) + 36.0 * ep +
               11.0 * (d + ep) * (d + ep) -
               2.0 * g * (5.0 + 7.0 * ep + d * (13.0 + 6.0 * d + 6.0 * ep)),
           3.0 * g * (1.0 + d) - 2.0 * (4.0 + 3.0 * d + 3.0 * ep), 1.0});
    }
    case ExpansionFamily::D: {
      if (N == 0) return RealPoly({0.0, 1.0});  // q = 0
      if (N == 1) return RealPoly({-al, 1.0 - d, 1.0});
      return RealPoly({4.0 * al * (d - 1.0),
                       4.0 - 4.0 * al - 6.0 * d + 2.0 * d * d, 4.0 - 3.0 * d,
                       1.0});
    }
    default:
      throw std::invalid_argument("direct_q_poly: unsupported family");
  }
}

// e_1 (N=1) or (e_1+e_2, e_1 e_2) (N=2) for a given accessory-parameter root
std::vector<double> direct_e_sum_prod(ExpansionFamily f, const CheParams& pr,
                                      int N, double q) {
  double g = pr.gamma, d = pr.delta, ep = pr.epsilon, al = pr.alpha;
  if (N == 0) return {};
  if (f == ExpansionFamily::A) {
    double a = al / ep;
    if (N == 1) return {q - al + d - ep + al * (1.0 + d) / ep};
    double s = q + 1.0 - al + 2.0 * d - 2.0 * ep + al * (2.0 + d) / ep;
    double prod = ((al + 2.0 * al * d + ep * (d + ep)) / ep -
                   (ep - d - q - a * (1.0 + d - ep)) * s) /
                  2.0;
    return {s, prod};
  }
  if (f == ExpansionFamily::C) {
    if (N == 1) return {q - 2.0 + g - d + g * d - ep};
    double s = q + 2.0 * g + g * d - d - ep - 5.0;
    double prod = -((1.0 - q - g - g * d + 2.0 * d + 2.0 * ep) * s +
                    (2.0 * q - 7.0 + 3.0 * g + 3.0 * d - ep)) /
                  2.0;
    return {s, prod};
  }
  // family D
  if (N == 1) {
    if (std::abs(q) < 1e-300)
      throw std::domain_error("direct_e_sum_prod: q = 0 root in family D");
    return {-al / q};
  }
  double s = 2.0 * d - 3.0 - q;
  double prod = (std::abs(q) > 1e-12)
                    ? al - 2.0 * al * (d - 1.0) / q
                    : q * q / 2.0 + 2.0 * q + 2.0 - al + d * d -
                          1.5 * d * q - 3.0 * d;
  return {s, prod};
}

void sort_specs(std::vector<ReductionSpec>& specs) {
  std::sort(specs.begin(), specs.end(),
            [](const ReductionSpec& x, const ReductionSpec& y) {
              if (x.q != y.q) return x.q < y.q;
              return x.e < y.e;
            });
}

bool duplicate_spec(const ReductionSpec& a, const ReductionSpec& b,
                    double tol) {
  if (std::abs(a.q - b.q) > tol) return false;
  for (size_t k = 0; k < a.e.size(); ++k)
    if (std::abs(a.e[k] - b.e[k]) > tol) return false;
  return true;
}

void dedup_specs(std::vector<ReductionSpec>& specs, double tol,
                 std::vector<std::string>* notes) {
  sort_specs(specs);
  std::vector<ReductionSpec> out;
  for (auto& s : specs) {
    bool dup = false;
    for (const auto& kept : out)
      if (duplicate_spec(s, kept, tol)) {
        dup = true;
        break;
      }
    if (dup) {
      if (notes) notes->push_back("duplicate root at q = " + fmt(s.q));
    } else {
      out.push_back(std::move(s));
    }
  }
  specs = std::move(out);
}

// family A: integer delta < -N makes the normalised series identically
// vanish; such specs are rejected rather than returned
bool vanishing_branch(ExpansionFamily f, const CheParams& pr, int N) {
  if (f != ExpansionFamily::A) return false;
  double r = std::round(pr.delta);
  return std::abs(pr.delta - r) < 1e-9 && r < -static_cast<double>(N);
}

void finalize_candidate(ReductionResult& result, ExpansionFamily f,
                        const CheParams& pr, int N, double q,
                        std::vector<double> e) {
  ReductionSpec spec;
  spec.family = f;
  spec.N = N;
  spec.q = q;
  spec.params = pr;
  spec.params.q = q;
  std::sort(e.begin(), e.end());
  spec.e = std::move(e);

  for (double ek : spec.e) {
    if (!e_admissible(ek)) {
      result.rejected.push_back(
          {{q, 0.0}, {}, "e = " + fmt(ek) + " is zero or a negative integer"});
      return;
    }
  }
  if (vanishing_branch(f, pr, N)) {
    result.rejected.push_back(
        {{q, 0.0},
         {},
         "integer delta < -N: the normalised solution vanishes identically"});
    return;
  }
  double res = reduction_residual(spec);
  if (res > kTolCoeff) {
    result.rejected.push_back(
        {{q, 0.0}, {}, "constraint-polynomial residual " + fmt(res)});
    return;
  }
  result.specs.push_back(std::move(spec));
}

}  // namespace

ReductionResult solve_reduction(ExpansionFamily f, const CheParams& p, int N) {
  if (f == ExpansionFamily::B)
    throw std::invalid_argument(
        "family B admits no two-term reduction (see "
        "check_family_b_obstruction)");
  if (N < 0 || N > 2)
    throw std::invalid_argument(
        "solve_reduction handles N = 0, 1, 2; use solve_reduction_general");
  CheParams pr = apply_restriction(f, p, N);
  validate_family(f, pr);

  ReductionResult result;
  RealPoly qpoly = direct_q_poly(f, pr, N);
  std::vector<std::complex<double>> roots;
  if (qpoly.degree(0.0) == 1 && qpoly.coeff(1) == 1.0) {
    roots = {{-qpoly.coeff(0), 0.0}};
  } else {
    roots = poly_roots(qpoly);
  }

  for (const auto& r : roots) {
    if (std::abs(r.imag()) > kTolRoot * std::max(1.0, std::abs(r))) {
      result.rejected.push_back({r, {}, "complex accessory-parameter root"});
      continue;
    }
    double q = r.real();
    std::vector<double> e;
    if (N == 1) {
      auto v = direct_e_sum_prod(f, pr, N, q);
      e = {v[0]};
    } else if (N == 2) {
      auto v = direct_e_sum_prod(f, pr, N, q);
      double s = v[0], prod = v[1];
      double disc = s * s - 4.0 * prod;
      if (disc < 0.0) {
        std::complex<double> sq = std::sqrt(std::complex<double>(disc, 0.0));
        result.rejected.push_back(
            {{q, 0.0},
             {(s - sq) / 2.0, (s + sq) / 2.0},
             "complex e pair (negative discriminant)"});
        continue;
      }
      double sq = std::sqrt(disc);
      e = {(s - sq) / 2.0, (s + sq) / 2.0};
    }
    finalize_candidate(result, f, pr, N, q, std::move(e));
  }
  dedup_specs(result.specs, kTolRoot, &result.notes);
  if (result.specs.empty() && result.rejected.empty())
    result.notes.push_back("no accessory-parameter roots found");
  return result;
}

ReductionResult solve_reduction_general(ExpansionFamily f, const CheParams& p,
                                        int N, int starts,
                                        std::uint64_t seed) {
  if (f == ExpansionFamily::B)
    throw std::invalid_argument("family B admits no two-term reduction");
  if (N < 1)
    throw std::invalid_argument("solve_reduction_general requires N >= 1");
  CheParams pr = apply_restriction(f, p, N);
  validate_family(f, pr);

  const int dim = N + 1;  // unknowns (q, e_1..e_N)
  auto eval_F = [&](const Eigen::VectorXd& x, Eigen::VectorXd& F) -> bool {
    CheParams pq = pr;
    pq.q = x(0);
    std::vector<double> e(x.data() + 1, x.data() + dim);
    auto terms = build_constraint_terms(f, pq, e);
    RealPoly sum = terms[0] + terms[1] + terms[2];
    double scale = constraint_scale(terms);
    for (int m = 0; m < dim; ++m) F(m) = sum.coeff(m) / scale;
    return F.allFinite();
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-5.0, 5.0);

  ReductionResult result;
  std::vector<ReductionSpec> found;
  int converged_starts = 0;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x(i) = box(rng);
    Eigen::VectorXd F(dim), Ftrial(dim);
    if (!eval_F(x, F)) continue;
    double fn = F.lpNorm<Eigen::Infinity>();
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
      if (fn <= 1e-11) ok = true;  // converged; keep polishing while the
      if (fn <= 1e-15) break;      // residual still improves
      // central-difference Jacobian
      Eigen::MatrixXd J(dim, dim);
      Eigen::VectorXd fp(dim), fm(dim);
      bool jac_ok = true;
      for (int j = 0; j < dim; ++j) {
        double hstep = 1e-6 * std::max(1.0, std::abs(x(j)));
        Eigen::VectorXd xp = x, xm = x;
        xp(j) += hstep;
        xm(j) -= hstep;
        if (!eval_F(xp, fp) || !eval_F(xm, fm)) {
          jac_ok = false;
          break;
        }
        J.col(j) = (fp - fm) / (2.0 * hstep);
      }
      if (!jac_ok) break;
      Eigen::VectorXd dx = J.partialPivLu().solve(-F);
      if (!dx.allFinite()) break;
      double lambda = 1.0;
      bool improved = false;
      for (int hv = 0; hv < 30; ++hv) {
        Eigen::VectorXd xt = x + lambda * dx;
        if (eval_F(xt, Ftrial)) {
          double ft = Ftrial.lpNorm<Eigen::Infinity>();
          if (ft < fn) {
            x = xt;
            F = Ftrial;
            fn = ft;
            improved = true;
            break;
          }
        }
        lambda *= 0.5;
      }
      if (!improved) break;
    }
    if (!(ok || fn <= 1e-11)) continue;
    ++converged_starts;
    std::vector<double> e(x.data() + 1, x.data() + dim);
    finalize_candidate(result, f, pr, N, x(0), std::move(e));
  }
  dedup_specs(result.specs, 1e-6, nullptr);
  if (converged_starts == 0)
    result.notes.push_back("no Newton start converged");
  return result;
}

CoefficientSeries closed_form_coeffs(const ReductionSpec& spec, int nmax) {
  const CheParams& p = spec.params;
  const int N = spec.N;
  std::vector<double> e = spec.e;  // order must not matter
  std::sort(e.begin(), e.end());
  for (double ek : e)
    if (std::abs(ek) < 1e-300)
      throw std::domain_error("closed_form_coeffs: e_k = 0");

  // per-family ratio factors c_n / c_{n-1} (without the e-product part);
  // numerator Pochhammer zeros terminate the series exactly
  double num1_base = 0.0, num2_base = 0.0, den_base = 0.0;
  bool two_numer = true;
  double alpha_factor = 1.0;
  std::optional<int> term_at;
  auto note_termination = [&term_at](double x) {
    if (is_nonpositive_integer(x, 1e-9)) {
      int m = 1 - static_cast<int>(std::llround(x));
      if (!term_at || m < *term_at) term_at = m;
    }
  };
  switch (spec.family) {
    case ExpansionFamily::A: {
      double a = p.alpha / p.epsilon;
      num1_base = p.delta;
      num2_base = a;
      den_base = a + p.delta + 1.0 + N;
      note_termination(p.delta);
      note_termination(a);
      break;
    }
    case ExpansionFamily::C: {
      num1_base = p.delta;
      num2_base = p.gamma - 1.0 - N;
      den_base = p.gamma + p.delta;
      note_termination(p.delta);
      note_termination(p.gamma - 1.0 - N);
      break;
    }
    case ExpansionFamily::D: {
      two_numer = false;
      alpha_factor = p.alpha;
      den_base = p.delta - N;
      if (is_nonpositive_integer(den_base, 1e-9) &&
          1 - static_cast<int>(std::llround(den_base)) <= nmax)
        throw std::domain_error(
            "closed_form_coeffs: (delta-N)_n vanishes (inadmissible spec)");
      break;
    }
    case ExpansionFamily::B:
      throw std::invalid_argument("closed_form_coeffs: family B unsupported");
  }

  CoefficientSeries out;
  out.provenance = CoefficientSeries::Provenance::closed_form;
  out.c.assign(static_cast<size_t>(nmax) + 1, 0.0);
  out.c[0] = 1.0;
  double c = 1.0;
  for (int n = 1; n <= nmax; ++n) {
    double ratio;
    if (two_numer) {
      ratio = (num1_base + n - 1.0) * (num2_base + n - 1.0) /
              (static_cast<double>(n) * (den_base + n - 1.0));
    } else {
      ratio = alpha_factor / (static_cast<double>(n) * (den_base + n - 1.0));
    }
    for (double ek : e) ratio *= (ek + n) / (ek + n - 1.0);
    c *= ratio;
    out.c[n] = c;
    if (c == 0.0 && !term_at) break;  // exact zero propagates
  }
  if (term_at && *term_at <= nmax) {
    for (int n = *term_at; n <= nmax; ++n) out.c[n] = 0.0;
    out.terminated_at = *term_at;
  } else if (term_at) {
    out.terminated_at = *term_at;  // beyond the computed range, still true
  }
  return out;
}

double check_family_b_obstruction(const CheParams& p,
                                  const std::vector<double>& e) {
  validate_family(ExpansionFamily::B, p);
  auto terms = build_constraint_terms(ExpansionFamily::B, p, e);
  RealPoly sum = terms[0] + terms[1] + terms[2];
  return sum.coeff(static_cast<int>(e.size()) + 1);
}

}  // namespace heunred
