#ifndef HEUNRED_SCALAR_KERNELS_HPP
#define HEUNRED_SCALAR_KERNELS_HPP

#include <complex>
#include <vector>

namespace heunred {

/**
 * Rising factorial (x)_n = x (x+1) ... (x+n-1).
 *
 * Returns 1 for n = 0 and an exact 0 whenever x is a nonpositive integer
 * with -x < n (one of the factors is exactly zero). This is the pole-safe
 * replacement for Gamma(x+n)/Gamma(x): all gamma-function ratios in this
 * library are evaluated through it so that terminating series produce
 * exact zeros instead of inf/inf.
 */
double pochhammer(double x, int n);

/// log Gamma(x) for x > 0; throws std::domain_error otherwise.
double log_gamma(double x);

/**
 * Dense univariate real polynomial, coefficients in ascending degree.
 *
 * Addition and multiplication keep every term; nothing is truncated.
 * degree(tol) reports the index of the last coefficient with |c| > tol,
 * so numerically-cancelled leading terms can be ignored by callers.
 */
class RealPoly {
 public:
  RealPoly() : coeffs_{0.0} {}
  explicit RealPoly(std::vector<double> coeffs);

  static RealPoly constant(double v) { return RealPoly({v}); }
  /// prod_k (x - roots[k])
  static RealPoly from_roots(const std::vector<double>& roots);

  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const;   // 0 outside the stored range
  int size() const { return static_cast<int>(coeffs_.size()); }

  int degree(double tol = 0.0) const;
  double max_abs_coeff() const;

  double operator()(double x) const;
  std::complex<double> operator()(const std::complex<double>& x) const;

  RealPoly& operator+=(const RealPoly& o);
  RealPoly& operator-=(const RealPoly& o);
  RealPoly& operator*=(double s);
  friend RealPoly operator+(RealPoly a, const RealPoly& b) { return a += b; }
  friend RealPoly operator-(RealPoly a, const RealPoly& b) { return a -= b; }
  friend RealPoly operator*(RealPoly a, double s) { return a *= s; }
  friend RealPoly operator*(const RealPoly& a, const RealPoly& b);

  /// p(x + h) (Taylor shift)
  RealPoly shifted(double h) const;

 private:
  std::vector<double> coeffs_;
};

/**
 * All complex roots of p, with multiplicity.
 *
 * Closed forms for degree <= 2, companion-matrix eigenvalues above that.
 * Leading coefficients below 1e-14 * max|coeff| are treated as zero.
 * Roots are sorted by (real, imag) for reproducible output.
 * Throws std::invalid_argument for a (numerically) degenerate polynomial.
 */
std::vector<std::complex<double>> poly_roots(const RealPoly& p);

/// true if x is within tol of an integer m <= 0
bool is_nonpositive_integer(double x, double tol = 1e-9);

}  // namespace heunred

#endif
