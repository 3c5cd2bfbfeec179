// SPDX-License-Identifier: Apache-2.0
#ifndef NCENTROPY_SPECFUN_HPP
#define NCENTROPY_SPECFUN_HPP

// Log-space special functions: log-gamma, digamma and the modified Bessel
// function of the first kind, plus the elementary bracket for I_nu.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ncentropy/errors.hpp"

namespace ncentropy {

/// Order of a modified Bessel function. The series is valid for nu > -1;
/// the bracket in `bessel_i_bounds` needs nu > -1/2.
class BesselOrder {
 public:
  explicit BesselOrder(double nu) : nu_(nu) {
    if (!(nu > -1.0) || !std::isfinite(nu)) {
      detail::domain_fail("BesselOrder", "nu must be finite and > -1");
    }
  }
  [[nodiscard]] double nu() const noexcept { return nu_; }

 private:
  double nu_;
};

inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    detail::domain_fail("log_gamma", "x must be finite and > 0");
  }
  return boost::math::lgamma(x);
}

inline double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    detail::domain_fail("digamma", "x must be finite and > 0");
  }
  return boost::math::digamma(x);
}

namespace detail {

inline constexpr double kSeriesTermTol = 1e-17;
inline constexpr int kSeriesBaseCap = 500;

// Power series for I_nu summed outward from its dominant term, so that the
// only large quantity (the dominant term itself) is handled in log space.
inline double log_bessel_i_series(double nu, double x) {
  const double half = 0.5 * x;
  const double log_half = std::log(half);
  const double q = half * half;

  // t_{m+1}/t_m = q / ((m+1)(m+nu+1)) drops below one past this index.
  const double m_real = 0.5 * (-(nu + 2.0) + std::sqrt(nu * nu + 4.0 * q));
  const long peak = m_real > 0.0 ? static_cast<long>(std::ceil(m_real)) : 0;
  const double pm = static_cast<double>(peak);
  const double log_peak = (2.0 * pm + nu) * log_half - boost::math::lgamma(pm + 1.0) -
                          boost::math::lgamma(pm + nu + 1.0);

  // The plain 500-term cap only covers x up to a few hundred; summing
  // around the peak needs O(sqrt(peak)) terms on each side beyond that.
  const long cap = kSeriesBaseCap + peak;

  double rest = 0.0;
  double ratio = 1.0;
  for (long m = peak, n = 0; n < cap; ++m, ++n) {
    const double md = static_cast<double>(m);
    ratio *= q / ((md + 1.0) * (md + nu + 1.0));
    rest += ratio;
    if (ratio < kSeriesTermTol * (1.0 + rest)) break;
  }
  ratio = 1.0;
  for (long m = peak; m >= 1; --m) {
    const double md = static_cast<double>(m);
    ratio *= md * (md + nu) / q;
    rest += ratio;
    if (ratio < kSeriesTermTol * (1.0 + rest)) break;
  }
  return log_peak + std::log1p(rest);
}

// Large-argument expansion
//   I_nu(x) ~ e^x / sqrt(2 pi x) * sum_j (-1)^j a_j(nu) / x^j,
// truncated at its smallest term.
inline double log_bessel_i_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int j = 1; j < 200; ++j) {
    const double odd = 2.0 * j - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * j * x);
    if (std::fabs(next) >= prev) break;
    term = next;
    prev = std::fabs(term);
    sum += term;
    if (prev < kSeriesTermTol * std::fabs(1.0 + sum)) break;
  }
  return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log1p(sum);
}

inline double bessel_regime_switch(double nu) {
  return std::max(30.0, 2.0 * nu * nu);
}

}  // namespace detail

/// log I_nu(x) without forming I_nu itself. At x = 0 the value is 0 for
/// nu = 0 and -inf for nu > 0; negative orders are singular there.
inline double log_bessel_i(BesselOrder order, double x) {
  const double nu = order.nu();
  if (!(x >= 0.0) || std::isnan(x)) {
    detail::domain_fail("log_bessel_i", "x must be >= 0");
  }
  if (x == 0.0) {
    if (nu == 0.0) return 0.0;
    if (nu > 0.0) return -std::numeric_limits<double>::infinity();
    detail::domain_fail("log_bessel_i", "I_nu(0) is infinite for nu < 0");
  }
  if (std::isinf(x)) return x;
  if (x >= detail::bessel_regime_switch(nu)) {
    return detail::log_bessel_i_asymptotic(nu, x);
  }
  return detail::log_bessel_i_series(nu, x);
}

struct LogBracket {
  double log_lower;
  double log_upper;
};

/// log of (x/2)^nu / Gamma(nu+1) and of the same times e^x.
inline LogBracket bessel_i_log_bounds(BesselOrder order, double x) {
  const double nu = order.nu();
  if (!(nu > -0.5)) detail::domain_fail("bessel_i_bounds", "nu must be > -1/2");
  if (!(x > 0.0) || !std::isfinite(x)) {
    detail::domain_fail("bessel_i_bounds", "x must be finite and > 0");
  }
  const double lo = nu * std::log(0.5 * x) - log_gamma(nu + 1.0);
  return {lo, lo + x};
}

/// Strict bracket lower < I_nu(x) < upper for nu > -1/2, x > 0. The bounds
/// overflow to +inf for very large x; use `bessel_i_log_bounds` there.
inline std::pair<double, double> bessel_i_bounds(BesselOrder order, double x) {
  const auto b = bessel_i_log_bounds(order, x);
  return {std::exp(b.log_lower), std::exp(b.log_upper)};
}

/// Closed form of the integral of x^{nu-1} e^{-mu x} log x over (0, inf).
inline double gamma_log_integral(double nu, double mu) {
  if (!(nu > 0.0) || !(mu > 0.0) || !std::isfinite(nu) || !std::isfinite(mu)) {
    detail::domain_fail("gamma_log_integral", "nu and mu must be > 0");
  }
  const double log_mu = std::log(mu);
  return std::exp(log_gamma(nu) - nu * log_mu) * (digamma(nu) - log_mu);
}

}  // namespace ncentropy

#endif  // NCENTROPY_SPECFUN_HPP
