#include "heunred/hypergeo.hpp"

#include <cmath>
#include <stdexcept>

#include "heunred/scalar_kernels.hpp"

namespace heunred {

namespace {

void check_lower_parameter(double b, const char* fn) {
  if (is_nonpositive_integer(b, 1e-12))
    throw std::domain_error(std::string(fn) +
                            ": lower parameter is zero or a negative integer");
}

// shared series loop: term_{k+1} = term_k * ratio(k) * z
template <typename Ratio>
HypergeoResult sum_series(double z, const SeriesOptions& opt, Ratio ratio) {
  HypergeoResult res;
  double sum = 1.0;
  double term = 1.0;
  int small_streak = 0;
  int k = 0;
  for (; k < opt.max_terms; ++k) {
    term *= ratio(k) * z;
    sum += term;
    if (std::abs(term) <= opt.tol * std::abs(sum)) {
      if (++small_streak >= opt.k_conv) {
        ++k;
        res.converged = true;
        break;
      }
    } else {
      small_streak = 0;
    }
  }
  res.value = sum;
  res.n_terms = k + 1;
  return res;
}

}  // namespace

HypergeoResult kummer_1f1(double a, double b, double z,
                          const SeriesOptions& opt) {
  check_lower_parameter(b, "kummer_1f1");
  return sum_series(z, opt, [a, b](int k) {
    return (a + k) / ((b + k) * (k + 1.0));
  });
}

HypergeoResult kummer_1f1_dz(double a, double b, double z,
                             const SeriesOptions& opt) {
  check_lower_parameter(b, "kummer_1f1_dz");
  HypergeoResult r = kummer_1f1(a + 1.0, b + 1.0, z, opt);
  r.value *= a / b;
  return r;
}

HypergeoResult conf_0f1(double b, double z, const SeriesOptions& opt) {
  check_lower_parameter(b, "conf_0f1");
  return sum_series(z, opt, [b](int k) {
    return 1.0 / ((b + k) * (k + 1.0));
  });
}

HypergeoResult conf_0f1_dz(double b, double z, const SeriesOptions& opt) {
  check_lower_parameter(b, "conf_0f1_dz");
  HypergeoResult r = conf_0f1(b + 1.0, z, opt);
  r.value /= b;
  return r;
}

}  // namespace heunred
