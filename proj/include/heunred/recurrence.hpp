#ifndef HEUNRED_RECURRENCE_HPP
#define HEUNRED_RECURRENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "heunred/che.hpp"

namespace heunred {

/**
 * The four confluent-hypergeometric expansion families.
 *
 *   A : sum c_n 1F1(alpha/eps + n; gamma+delta+n; -eps z)      (eps != 0)
 *   B : sum c_n 1F1(alpha/eps + n; gamma; -eps z)              (eps != 0,
 *       admits no two-term reduction; kept for the obstruction check)
 *   C : sum c_n 1F1(alpha/eps; gamma+delta+n; -eps z)          (eps != 0)
 *   D : sum c_n 0F1(; gamma+delta+n; -alpha z)                 (eps == 0,
 *       alpha != 0)
 *
 * Validity: families A and D need gamma+delta not zero or a negative
 * integer; families B and C need gamma not zero or a negative integer, and
 * C additionally needs gamma+delta not zero or a negative integer since
 * R_n carries the factor (gamma+delta-1+n). Family A also needs
 * alpha^2 + (gamma+delta)^2 != 0 so the basis functions do not collapse
 * to exp(-eps z).
 */
enum class ExpansionFamily { A, B, C, D };

const char* family_name(ExpansionFamily f);

/// throws std::invalid_argument with a message naming the violated condition
void validate_family(ExpansionFamily f, const CheParams& p);

struct CoefficientSeries {
  enum class Provenance { recurrence, closed_form };
  std::vector<double> c;  // c[0..nmax]
  Provenance provenance = Provenance::recurrence;
  // first index m with c[n] = 0 for all n >= m, when the series terminates
  std::optional<int> terminated_at;
};

struct ThreeTermCoeffs {
  double R = 0.0, Q = 0.0, P = 0.0;
};

/**
 * The coefficients R_n, Q_n, P_n of the three-term relation
 *   R_n c_n + Q_{n-1} c_{n-1} + P_{n-2} c_{n-2} = 0,
 * all evaluated at the same index n. Family D equals family A at eps = 0.
 * A vanishing P-denominator (gamma+delta+n = 0) is a domain error.
 */
ThreeTermCoeffs recurrence_coeffs(ExpansionFamily f, const CheParams& p, int n);

/**
 * Forward three-term recurrence with c_0 = 1, c_{-1} = 0.
 *
 * Throws std::runtime_error naming the index if some R_n vanishes in range.
 * terminated_at is set when two consecutive exact zeros (|c| <= 1e-280)
 * occur; all later coefficients then vanish identically and are stored as
 * exact zeros.
 */
CoefficientSeries run_three_term(ExpansionFamily f, const CheParams& p,
                                 int nmax);

}  // namespace heunred

#endif
