#include "heunred/recurrence.hpp"

#include <cmath>
#include <stdexcept>

#include "heunred/scalar_kernels.hpp"

namespace heunred {

namespace {
constexpr double kExactZero = 1e-280;  // underflow guard for termination
}

const char* family_name(ExpansionFamily f) {
  switch (f) {
    case ExpansionFamily::A: return "A";
    case ExpansionFamily::B: return "B";
    case ExpansionFamily::C: return "C";
    case ExpansionFamily::D: return "D";
  }
  return "?";
}

void validate_family(ExpansionFamily f, const CheParams& p) {
  using EF = ExpansionFamily;
  if (f == EF::A || f == EF::B || f == EF::C) {
    if (p.epsilon == 0.0)
      throw std::invalid_argument(std::string("family ") + family_name(f) +
                                  " requires epsilon != 0");
  } else {
    if (p.epsilon != 0.0)
      throw std::invalid_argument("family D requires epsilon = 0");
    if (p.alpha == 0.0)
      throw std::invalid_argument("family D requires alpha != 0");
  }
  if (f == EF::A || f == EF::C || f == EF::D) {
    if (is_nonpositive_integer(p.gamma + p.delta))
      throw std::invalid_argument(
          std::string("family ") + family_name(f) +
          " requires gamma+delta not zero or a negative integer");
  }
  if (f == EF::B || f == EF::C) {
    if (is_nonpositive_integer(p.gamma))
      throw std::invalid_argument(
          std::string("family ") + family_name(f) +
          " requires gamma not zero or a negative integer");
  }
  if (f == EF::A) {
    // keeps the basis away from the 0F0 degeneration exp(-eps z)
    if (p.alpha == 0.0 && p.gamma + p.delta == 0.0)
      throw std::invalid_argument(
          "family A requires alpha^2 + (gamma+delta)^2 != 0");
  }
}

ThreeTermCoeffs recurrence_coeffs(ExpansionFamily f, const CheParams& p,
                                  int n) {
  double g = p.gamma, d = p.delta, ep = p.epsilon, al = p.alpha, q = p.q;
  double b = g + d;
  ThreeTermCoeffs out;
  switch (f) {
    case ExpansionFamily::A: {
      out.R = -n * (b + n - 1.0);
      out.Q = -q + al + (b + ep + n - 1.0) * n;
      if (std::abs(b + n) < 1e-12)
        throw std::domain_error("recurrence_coeffs: gamma+delta+n = 0");
      out.P = -(d + n) * (ep * n + al) / (b + n);
      break;
    }
    case ExpansionFamily::B: {
      double a = al / ep;
      out.R = n * (a - g + n);
      out.Q = -q + n * g + (a + n) * (ep - d - 2.0 * n);
      out.P = (a + n) * (d + n);
      break;
    }
    case ExpansionFamily::C: {
      double a = al / ep;
      out.R = -n * (b - 1.0 + n);
      out.Q = -q + al - d * ep - n * (1.0 - b + ep) + double(n) * n;
      if (std::abs(b + n) < 1e-12)
        throw std::domain_error("recurrence_coeffs: gamma+delta+n = 0");
      out.P = ep * (-a + b + n) * (d + n) / (b + n);
      break;
    }
    case ExpansionFamily::D: {
      out.R = -n * (b + n - 1.0);
      out.Q = -q + al + n * (b + n - 1.0);
      if (std::abs(b + n) < 1e-12)
        throw std::domain_error("recurrence_coeffs: gamma+delta+n = 0");
      out.P = -(d + n) * al / (b + n);
      break;
    }
  }
  return out;
}

CoefficientSeries run_three_term(ExpansionFamily f, const CheParams& p,
                                 int nmax) {
  validate_family(f, p);
  CoefficientSeries s;
  s.provenance = CoefficientSeries::Provenance::recurrence;
  s.c.assign(static_cast<size_t>(nmax) + 1, 0.0);
  s.c[0] = 1.0;
  for (int n = 1; n <= nmax; ++n) {
    ThreeTermCoeffs rn = recurrence_coeffs(f, p, n);
    // R_n scale: n * (|b| + n + 1); a vanishing R_n means the expansion
    // does not apply at this n
    double rscale = n * (std::abs(p.gamma + p.delta) + n + 1.0);
    if (std::abs(rn.R) <= 1e-12 * rscale)
      throw std::runtime_error("run_three_term: R_n vanishes at n = " +
                               std::to_string(n) + " (family " +
                               family_name(f) + ")");
    double qc = recurrence_coeffs(f, p, n - 1).Q * s.c[n - 1];
    double pc = (n >= 2) ? recurrence_coeffs(f, p, n - 2).P * s.c[n - 2] : 0.0;
    s.c[n] = -(qc + pc) / rn.R;
    if (n >= 2 && std::abs(s.c[n]) <= kExactZero &&
        std::abs(s.c[n - 1]) <= kExactZero) {
      // two consecutive exact zeros: everything beyond is zero as well
      int m = n - 1;
      while (m > 0 && std::abs(s.c[m - 1]) <= kExactZero) --m;
      for (size_t k = m; k < s.c.size(); ++k) s.c[k] = 0.0;
      s.terminated_at = m;
      break;
    }
  }
  return s;
}

}  // namespace heunred
