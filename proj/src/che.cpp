#include "heunred/che.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heunred {

namespace {
constexpr double kSingularGuard = 1e-12;

bool near(double z, double s) { return std::abs(z - s) < kSingularGuard; }
}  // namespace

double che_residual(const CheParams& p, const SolutionSample& s, double d2u) {
  if (near(s.z, 0.0) || near(s.z, 1.0))
    throw std::domain_error("che_residual: z at a singular point");
  double z = s.z;
  return d2u + (p.gamma / z + p.delta / (z - 1.0) + p.epsilon) * s.du +
         (p.alpha * z - p.q) / (z * (z - 1.0)) * s.u;
}

SolutionSample integrate_che(const CheParams& p, double z0, double u0,
                             double du0, double z1, double h) {
  if (h <= 0.0) throw std::domain_error("integrate_che: step must be positive");
  double lo = std::min(z0, z1), hi = std::max(z0, z1);
  if ((lo - kSingularGuard <= 0.0 && 0.0 <= hi + kSingularGuard) ||
      (lo - kSingularGuard <= 1.0 && 1.0 <= hi + kSingularGuard))
    throw std::domain_error("integrate_che: interval touches a singular point");

  auto rhs = [&p](double z, double u, double du, double& f0, double& f1) {
    f0 = du;
    f1 = -(p.gamma / z + p.delta / (z - 1.0) + p.epsilon) * du -
         (p.alpha * z - p.q) / (z * (z - 1.0)) * u;
  };

  long steps = std::max(1L, static_cast<long>(std::ceil(std::abs(z1 - z0) / h)));
  double hs = (z1 - z0) / static_cast<double>(steps);
  double z = z0, u = u0, du = du0;
  double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
  for (long i = 0; i < steps; ++i) {
    rhs(z, u, du, k1u, k1v);
    rhs(z + 0.5 * hs, u + 0.5 * hs * k1u, du + 0.5 * hs * k1v, k2u, k2v);
    rhs(z + 0.5 * hs, u + 0.5 * hs * k2u, du + 0.5 * hs * k2v, k3u, k3v);
    rhs(z + hs, u + hs * k3u, du + hs * k3v, k4u, k4v);
    u += hs / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    du += hs / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    z = z0 + hs * static_cast<double>(i + 1);
  }
  return {z1, u, du};
}

}  // namespace heunred
