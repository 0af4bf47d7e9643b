#include "heunred/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "heunred/che.hpp"

namespace heunred {

namespace {

// basis value and z-derivative for term n of the family expansion
void basis_term(ExpansionFamily f, const CheParams& p, int n, double z,
                const SeriesOptions& opt, double& F, double& dF,
                bool& converged) {
  double b = p.gamma + p.delta + n;
  HypergeoResult v, d;
  switch (f) {
    case ExpansionFamily::A: {
      double a = p.alpha / p.epsilon + n;
      v = kummer_1f1(a, b, -p.epsilon * z, opt);
      d = kummer_1f1(a + 1.0, b + 1.0, -p.epsilon * z, opt);
      dF = -p.epsilon * (a / b) * d.value;
      break;
    }
    case ExpansionFamily::C: {
      double a = p.alpha / p.epsilon;
      v = kummer_1f1(a, b, -p.epsilon * z, opt);
      d = kummer_1f1(a + 1.0, b + 1.0, -p.epsilon * z, opt);
      dF = -p.epsilon * (a / b) * d.value;
      break;
    }
    case ExpansionFamily::D: {
      v = conf_0f1(b, -p.alpha * z, opt);
      d = conf_0f1(b + 1.0, -p.alpha * z, opt);
      dF = -p.alpha / b * d.value;
      break;
    }
    case ExpansionFamily::B:
      throw std::invalid_argument(
          "evaluate_solution: family B has no evaluator basis");
  }
  F = v.value;
  converged = v.converged && d.converged;
}

}  // namespace

SeriesSolution make_solution(const ReductionSpec& spec, int nmax,
                             bool use_closed_form, double tol_assemble) {
  SeriesSolution sol;
  sol.family = spec.family;
  sol.params = spec.params;
  sol.params.q = spec.q;
  sol.coeffs = use_closed_form ? closed_form_coeffs(spec, nmax)
                               : run_three_term(spec.family, sol.params, nmax);
  sol.n_used = static_cast<int>(sol.coeffs.c.size()) - 1;
  double cmax = 0.0;
  for (double c : sol.coeffs.c) cmax = std::max(cmax, std::abs(c));
  sol.converged =
      sol.coeffs.terminated_at.has_value() ||
      std::abs(sol.coeffs.c.back()) <= tol_assemble * std::max(cmax, 1e-300);
  return sol;
}

EvalPoint evaluate_solution(const SeriesSolution& sol, double z,
                            const EvalOptions& opt) {
  int limit = static_cast<int>(sol.coeffs.c.size()) - 1;
  bool finite_sum = false;
  if (sol.coeffs.terminated_at) {
    int m = *sol.coeffs.terminated_at;
    if (m - 1 <= limit) {
      limit = std::max(0, m - 1);
      finite_sum = true;
    }
  }
  EvalPoint out;
  int streak = 0;
  for (int n = 0; n <= limit; ++n) {
    double F, dF;
    bool basis_ok;
    try {
      basis_term(sol.family, sol.params, n, z, opt.basis, F, dF, basis_ok);
    } catch (const std::domain_error& err) {
      throw std::domain_error(std::string(err.what()) + " at term n = " +
                              std::to_string(n));
    }
    double term = sol.coeffs.c[n] * F;
    out.u += term;
    out.du += sol.coeffs.c[n] * dF;
    out.n_used = n;
    if (!basis_ok) {
      out.converged = false;
      return out;
    }
    if (std::abs(term) <= opt.tol_assemble * std::abs(out.u)) {
      if (++streak >= opt.k_conv) {
        out.converged = true;
        return out;
      }
    } else {
      streak = 0;
    }
  }
  out.converged = finite_sum;
  return out;
}

double verify_solution(const SeriesSolution& sol, std::span<const double> zs,
                       const EvalOptions& opt) {
  const double h = 1e-6;  // central-difference step for d2u
  double worst = 0.0;
  for (double z : zs) {
    EvalPoint mid = evaluate_solution(sol, z, opt);
    EvalPoint hi = evaluate_solution(sol, z + h, opt);
    EvalPoint lo = evaluate_solution(sol, z - h, opt);
    double d2u = (hi.du - lo.du) / (2.0 * h);
    double res = che_residual(sol.params, {z, mid.u, mid.du}, d2u);
    double scale = std::max({1.0, std::abs(mid.u), std::abs(mid.du)});
    worst = std::max(worst, std::abs(res) / scale);
  }
  return worst;
}

}  // namespace heunred
