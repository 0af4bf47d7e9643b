#ifndef HEUNRED_REDUCTION_HPP
#define HEUNRED_REDUCTION_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "heunred/recurrence.hpp"
#include "heunred/scalar_kernels.hpp"

namespace heunred {

// Tolerances shared by the reduction machinery.
inline constexpr double kTolCoeff = 1e-11;  // zero-polynomial threshold (scale-relative)
inline constexpr double kTolRoot = 1e-9;    // polynomial root accuracy / realness
inline constexpr double kTolAdmissible = 1e-8;  // e_k distance to nonpositive integers

/**
 * A discovered two-term reduction of the three-term recurrence: for these
 * (q, e_1..e_N) the ratio c_n/c_{n-1} takes a closed product form and the
 * expansion coefficients become explicit Pochhammer-ratio products.
 *
 * params carries the family restriction already applied:
 *   A: gamma = alpha/eps + 1 + N,  C: delta = alpha/eps - 1 - N,
 *   D: gamma = -N.
 */
struct ReductionSpec {
  ExpansionFamily family = ExpansionFamily::A;
  int N = 0;
  std::vector<double> e;  // auxiliary parameters, none zero/negative integer
  double q = 0.0;
  CheParams params;
};

struct RejectedRoot {
  std::complex<double> q;
  std::vector<std::complex<double>> e;
  std::string reason;
};

struct ReductionResult {
  std::vector<ReductionSpec> specs;      // admissible, sorted by q then e
  std::vector<RejectedRoot> rejected;
  std::vector<std::string> notes;
};

/// Overwrite the dependent parameter per the family restriction.
CheParams apply_restriction(ExpansionFamily f, const CheParams& p, int N);

/**
 * The two-term ratio c_n/c_{n-1}:
 *   A: (a-1+n)(delta-1+n) / ((gamma+delta-1+n) n) * prod (e_k+n)/(e_k-1+n)
 *   C: (delta-1+n)(gamma-2-N+n) / ((gamma+delta-1+n) n) * prod ...
 *   D: alpha / (n (delta-N-1+n)) * prod ...
 * with a = alpha/eps. Zero denominators are domain errors.
 */
double ansatz_ratio(const ReductionSpec& spec, int n);

/**
 * The three cleared terms of the constraint equation in n, before summation
 * (family A shown; B, C, D analogous):
 *   T1 = -(a-1+n)(delta-1+n) prod(e_k+n)
 *   T2 =  Q_{n-1}            prod(e_k-1+n)
 *   T3 = -eps (n-1)          prod(e_k-2+n)
 * Families C and D require their restriction to hold (the clearing step
 * cancels a (gamma+delta-...) denominator only then); violating it is a
 * domain error. Family A and B accept arbitrary valid parameters.
 */
std::array<RealPoly, 3> build_constraint_terms(ExpansionFamily f,
                                               const CheParams& p,
                                               const std::vector<double>& e);

/// Same, but with the e-products supplied directly as polynomials in n:
/// E0 = prod(e_k+n), and the shifted versions are formed internally.
std::array<RealPoly, 3> build_constraint_terms_from_product(
    ExpansionFamily f, const CheParams& p, int N, const RealPoly& E0);

/// Sum of the three terms: the polynomial sum_m A_m n^m of the reduction
/// constraint. All A_m vanish (to tolerance) exactly on a valid reduction.
RealPoly build_constraint_poly(ExpansionFamily f, const CheParams& p,
                               const std::vector<double>& e);

/// Coefficient scale of the constraint terms, used to normalise |A_m|.
double constraint_scale(const std::array<RealPoly, 3>& terms);

/// max_m |A_m| / scale for a candidate spec.
double reduction_residual(const ReductionSpec& spec);

/**
 * Closed-form N = 0, 1, 2 reductions.
 *
 * The free parameters are read from p (family A: delta, eps, alpha;
 * family C: gamma, eps, alpha; family D: delta, alpha); the restriction is
 * applied internally. Real roots of the accessory-parameter polynomial
 * yield candidate specs; complex roots, inadmissible e_k, complex e-pairs
 * (N=2) and family-A integer delta < -N (identically vanishing branch) are
 * reported in `rejected`. Every returned spec satisfies the zero-
 * constraint-polynomial invariant to kTolCoeff.
 */
ReductionResult solve_reduction(ExpansionFamily f, const CheParams& p, int N);

/**
 * General-N reduction search: damped Newton iteration on the square system
 * A_0 = ... = A_N = 0 in (q, e_1..e_N) from `starts` random initial points
 * drawn uniformly from [-5,5]^{N+1}. Deduplicates converged solutions
 * (distance < 1e-6 after sorting e). Deterministic for a fixed seed.
 */
ReductionResult solve_reduction_general(ExpansionFamily f, const CheParams& p,
                                        int N, int starts = 64,
                                        std::uint64_t seed = 0);

/**
 * Explicit coefficients of a reduction, as Pochhammer-ratio products
 * (never gamma-function quotients):
 *   A: c_n = (delta)_n (a)_n / (n! (a+delta+1+N)_n) * prod (e_k+n)/e_k
 *   C: c_n = (delta)_n (gamma-1-N)_n / (n! (gamma+delta)_n) * prod ...
 *   D: c_n = alpha^n / (n! (delta-N)_n) * prod ...
 * terminated_at is set when a numerator Pochhammer factor vanishes; a
 * vanishing family-D denominator without a numerator zero is a domain
 * error (inadmissible spec). The result does not depend on the order of e.
 */
CoefficientSeries closed_form_coeffs(const ReductionSpec& spec, int nmax);

/**
 * Family B obstruction: returns the degree-(N+1) coefficient of the
 * family-B constraint polynomial, which equals eps for every admissible
 * parameter set - the monomial the two-term ansatz can never cancel.
 */
double check_family_b_obstruction(const CheParams& p,
                                  const std::vector<double>& e);

}  // namespace heunred

#endif
