#ifndef HEUNRED_HYPERGEO_HPP
#define HEUNRED_HYPERGEO_HPP

namespace heunred {

struct HypergeoResult {
  double value = 0.0;
  int n_terms = 0;       // terms actually summed
  bool converged = false;
};

struct SeriesOptions {
  double tol = 1e-15;    // relative term tolerance
  int k_conv = 3;        // consecutive small terms required
  int max_terms = 10000; // converged=false beyond this, value = partial sum
};

/**
 * Kummer confluent hypergeometric function 1F1(a; b; z) by direct series
 * summation with the forward term recurrence
 *   t_{k+1} = t_k * (a+k) / ((b+k)(k+1)) * z.
 *
 * converged is set once k_conv consecutive terms satisfy
 * |t| <= tol * |partial sum|. b equal to zero or a negative integer is a
 * domain error. Real arguments only.
 */
HypergeoResult kummer_1f1(double a, double b, double z,
                          const SeriesOptions& opt = {});

/// d/dz 1F1(a;b;z) = (a/b) 1F1(a+1;b+1;z)
HypergeoResult kummer_1f1_dz(double a, double b, double z,
                             const SeriesOptions& opt = {});

/// confluent limit function 0F1(;b;z), same conventions as kummer_1f1
HypergeoResult conf_0f1(double b, double z, const SeriesOptions& opt = {});

/// d/dz 0F1(;b;z) = (1/b) 0F1(;b+1;z)
HypergeoResult conf_0f1_dz(double b, double z, const SeriesOptions& opt = {});

}  // namespace heunred

#endif
