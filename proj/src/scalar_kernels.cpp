#include "heunred/scalar_kernels.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heunred {

double pochhammer(double x, int n) {
  if (n < 0) throw std::domain_error("pochhammer: n must be nonnegative");
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= (x + k);
  return r;
}

double log_gamma(double x) {
  if (!(x > 0.0))
    throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

bool is_nonpositive_integer(double x, double tol) {
  double m = std::round(x);
  return m <= 0.0 && std::abs(x - m) < tol;
}

RealPoly::RealPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

RealPoly RealPoly::from_roots(const std::vector<double>& roots) {
  RealPoly p({1.0});
  for (double r : roots) p = p * RealPoly({-r, 1.0});
  return p;
}

double RealPoly::coeff(int k) const {
  return (k >= 0 && k < size()) ? coeffs_[k] : 0.0;
}

int RealPoly::degree(double tol) const {
  for (int k = size() - 1; k > 0; --k)
    if (std::abs(coeffs_[k]) > tol) return k;
  return 0;
}

double RealPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double RealPoly::operator()(double x) const {
  double y = coeffs_.back();
  for (int k = size() - 2; k >= 0; --k) y = y * x + coeffs_[k];
  return y;
}

std::complex<double> RealPoly::operator()(const std::complex<double>& x) const {
  std::complex<double> y = coeffs_.back();
  for (int k = size() - 2; k >= 0; --k) y = y * x + coeffs_[k];
  return y;
}

RealPoly& RealPoly::operator+=(const RealPoly& o) {
  if (o.size() > size()) coeffs_.resize(o.size(), 0.0);
  for (int k = 0; k < o.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

RealPoly& RealPoly::operator-=(const RealPoly& o) {
  if (o.size() > size()) coeffs_.resize(o.size(), 0.0);
  for (int k = 0; k < o.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

RealPoly& RealPoly::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

RealPoly operator*(const RealPoly& a, const RealPoly& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RealPoly(std::move(out));
}

RealPoly RealPoly::shifted(double h) const {
  // binomial expansion of sum_k c_k (x+h)^k; degrees here stay small
  std::vector<double> out(coeffs_.size(), 0.0);
  for (int k = 0; k < size(); ++k) {
    // c_k (x+h)^k = c_k sum_j C(k,j) h^{k-j} x^j
    std::vector<double> row(k + 1);
    row[k] = 1.0;
    for (int j = k - 1; j >= 0; --j) row[j] = row[j + 1] * h * (j + 1) / (k - j);
    for (int j = 0; j <= k; ++j) out[j] += coeffs_[k] * row[j];
  }
  return RealPoly(std::move(out));
}

namespace {

std::vector<std::complex<double>> quadratic_roots(double a, double b, double c) {
  // a x^2 + b x + c, a != 0
  std::complex<double> disc(b * b - 4.0 * a * c, 0.0);
  std::complex<double> sq = std::sqrt(disc);
  if (b * sq.real() > 0.0) sq = -sq;  // avoid cancellation in -b + sq
  std::complex<double> r1 = (-b + sq) / (2.0 * a);
  // with r1 = (-b+sq)/2a the product relation keeps the small root accurate
  std::complex<double> r2 =
      (std::abs(r1) > 0.0) ? std::complex<double>(c / a) / r1
                           : std::complex<double>(-b / (2.0 * a));
  if (disc.real() >= 0.0) {
    r1 = {r1.real(), 0.0};
    r2 = {r2.real(), 0.0};
  }
  return {r1, r2};
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const RealPoly& p) {
  double scale = p.max_abs_coeff();
  if (scale == 0.0)
    throw std::invalid_argument("poly_roots: zero polynomial");
  int deg = p.degree(1e-14 * scale);
  if (deg < 1)
    throw std::invalid_argument("poly_roots: degree must be at least 1");

  std::vector<std::complex<double>> roots;
  if (deg == 1) {
    roots = {{-p.coeff(0) / p.coeff(1), 0.0}};
  } else if (deg == 2) {
    roots = quadratic_roots(p.coeff(2), p.coeff(1), p.coeff(0));
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    double lead = p.coeff(deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p.coeff(i) / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return roots;
}

}  // namespace heunred
