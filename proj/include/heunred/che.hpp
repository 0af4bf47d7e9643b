#ifndef HEUNRED_CHE_HPP
#define HEUNRED_CHE_HPP

namespace heunred {

/**
 * Parameters of the confluent Heun equation in canonical form,
 *
 *   u'' + (gamma/z + delta/(z-1) + epsilon) u' + (alpha z - q)/(z(z-1)) u = 0,
 *
 * with regular singular points at z = 0, 1 and an irregular one at infinity.
 */
struct CheParams {
  double gamma = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double q = 0.0;
};

struct SolutionSample {
  double z = 0.0;
  double u = 0.0;
  double du = 0.0;  // du/dz
};

/// Left-hand side of the equation at one point; z in {0,1} is a domain error.
double che_residual(const CheParams& p, const SolutionSample& s, double d2u);

/**
 * Fixed-step classical RK4 integration of the equation as a first-order
 * system from (z0, u0, du0) to z1. The closed interval [z0,z1] must not
 * contain 0 or 1. Deterministic: the step count is ceil(|z1-z0|/h) and the
 * actual step is adjusted to land exactly on z1.
 */
SolutionSample integrate_che(const CheParams& p, double z0, double u0,
                             double du0, double z1, double h = 1e-4);

}  // namespace heunred

#endif
