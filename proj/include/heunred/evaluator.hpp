#ifndef HEUNRED_EVALUATOR_HPP
#define HEUNRED_EVALUATOR_HPP

#include <span>

#include "heunred/hypergeo.hpp"
#include "heunred/reduction.hpp"

namespace heunred {

/**
 * An assembled series solution u(z) = sum c_n F_n(z) with the family basis
 *
 *   A: F_n = 1F1(a+n; gamma+delta+n; -eps z)
 *   C: F_n = 1F1(a;   gamma+delta+n; -eps z)
 *   D: F_n = 0F1(;    gamma+delta+n; -alpha z)
 *
 * (a = alpha/eps). converged here is the assembly-level flag: true when
 * the series terminates or the coefficient tail is already below
 * tol_assemble at nmax. Whether the truncated sum converges at a given z
 * is reported per evaluation by EvalPoint.
 */
struct SeriesSolution {
  ExpansionFamily family = ExpansionFamily::A;
  CheParams params;
  CoefficientSeries coeffs;
  int n_used = 0;
  bool converged = false;
};

struct EvalOptions {
  double tol_assemble = 1e-12;  // relative term/tail tolerance
  int k_conv = 3;
  int nmax = 200;
  SeriesOptions basis;  // tolerance for the basis-function series
};

struct EvalPoint {
  double u = 0.0;
  double du = 0.0;
  int n_used = 0;
  bool converged = false;
};

SeriesSolution make_solution(const ReductionSpec& spec, int nmax = 200,
                             bool use_closed_form = true,
                             double tol_assemble = 1e-12);

/**
 * u(z) and du/dz by term-wise summation with term-wise analytic basis
 * derivatives. Stops early once k_conv consecutive terms satisfy
 * |c_n F_n(z)| <= tol_assemble |partial sum|, or at terminated_at for
 * finite sums; otherwise sums every available coefficient and reports
 * converged = false.
 */
EvalPoint evaluate_solution(const SeriesSolution& sol, double z,
                            const EvalOptions& opt = {});

/**
 * max over zs of |che_residual| / max(1, |u|, |du|), with u, du analytic
 * and d2u from a central difference of du (step 1e-6).
 */
double verify_solution(const SeriesSolution& sol, std::span<const double> zs,
                       const EvalOptions& opt = {});

}  // namespace heunred

#endif
