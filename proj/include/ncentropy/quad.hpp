// SPDX-License-Identifier: Apache-2.0
#ifndef NCENTROPY_QUAD_HPP
#define NCENTROPY_QUAD_HPP

// Adaptive quadrature over the half line (0, inf).
//
// The half line is split at s into (0, s) and (s, inf). Each panel is mapped
// onto a finite range of an auxiliary variable t:
//
//   (0, s):   x = s * logistic(pi sinh t)      nodes cluster at 0
//   (s, inf): x = s + s * exp(pi sinh t)       exponential substitution
//
// so integrable endpoint singularities x^p (p > -1) and exponential tails
// both become doubly-exponentially decaying functions of t. The transformed
// integrand is then integrated by globally adaptive 15-point Gauss-Kronrod
// bisection. At the ends of the t-range the transformed integrand must have
// decayed below tolerance; if it has not, the original integral is treated
// as divergent and NonConvergence is raised.
//
// The tail panel samples up to x ~ e^690, so products such as x^p e^{-qx}
// should be evaluated as exp(p log x - q x) to stay finite there.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ncentropy/errors.hpp"

namespace ncentropy {

enum class SplitStrategy { at_mode, fixed };

struct QuadConfig {
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  SplitStrategy split_strategy = SplitStrategy::at_mode;
  double split_point = 1.0;  // used when split_strategy == fixed

  void validate() const {
    if (!(rel_tol > 0.0)) detail::domain_fail("QuadConfig", "rel_tol must be > 0");
    if (!(abs_tol > 0.0)) detail::domain_fail("QuadConfig", "abs_tol must be > 0");
    if (max_subdivisions < 1) {
      detail::domain_fail("QuadConfig", "max_subdivisions must be >= 1");
    }
    if (split_strategy == SplitStrategy::fixed &&
        (!(split_point > 0.0) || !std::isfinite(split_point))) {
      detail::domain_fail("QuadConfig", "fixed split point must be finite and > 0");
    }
  }

  [[nodiscard]] double tolerance_for(double value) const {
    return std::max(rel_tol * std::fabs(value), abs_tol);
  }
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = false;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, QuadResult partial)
      : std::runtime_error(what), partial_(partial) {}
  [[nodiscard]] const QuadResult& partial() const noexcept { return partial_; }

 private:
  QuadResult partial_;
};

class IntegrandFailure : public std::runtime_error {
 public:
  IntegrandFailure(double abscissa, double sample)
      : std::runtime_error(describe(abscissa, sample)), abscissa_(abscissa) {}
  [[nodiscard]] double abscissa() const noexcept { return abscissa_; }

 private:
  static std::string describe(double abscissa, double sample) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand returned " << sample << " at x = " << abscissa;
    return os.str();
  }
  double abscissa_;
};

/// The x^{nu-1} e^{-mu x} |log x| integral over (0, inf) is finite exactly
/// when both exponents are positive.
inline bool check_log_weight_integrability(double nu, double mu) {
  return nu > 0.0 && mu > 0.0;
}

namespace detail {

// QUADPACK qk15 abscissae and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Range of u = pi sinh t kept for each panel. Near x = 0 the panel keeps
// x >= s e^{-400}; the far end of the tail panel stops before x overflows.
inline constexpr double kNearZeroU = -400.0;
inline constexpr double kSmoothEndU = 40.0;
inline constexpr double kMaxLogX = 690.0;

struct Panel {
  enum class Kind { lower, upper } kind;
  double s;
  double t_lo;
  double t_hi;

  // Maps t to (x, dx/dt).
  [[nodiscard]] std::pair<double, double> map(double t) const {
    const double u = std::numbers::pi * std::sinh(t);
    const double du = std::numbers::pi * std::cosh(t);
    if (kind == Kind::lower) {
      const double w = std::exp(-std::fabs(u));
      const double x = u >= 0.0 ? s / (1.0 + w) : s * w / (1.0 + w);
      return {x, s * w / ((1.0 + w) * (1.0 + w)) * du};
    }
    const double e = std::exp(u);
    return {s + s * e, s * e * du};
  }
};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double boundary_lo;  // |g| sampled nearest to a
  double boundary_hi;
  int panel;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
double sample(F& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw IntegrandFailure(x, y);
  return y;
}

template <class F>
Segment gauss_kronrod(F& f, const Panel& panel, int index, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto g = [&](double t) {
    const auto [x, jac] = panel.map(t);
    const double v = sample(f, x) * jac;
    if (!std::isfinite(v)) throw IntegrandFailure(x, v);
    return v;
  };

  std::array<double, 15> fv{};
  fv[7] = g(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = g(center - dx);
    fv[14 - j] = g(center + dx);
  }

  double kronrod = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    const double pair = fv[j] + fv[14 - j];
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::fabs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));
  }
  kronrod *= half;
  gauss *= half;
  resasc *= std::fabs(half);

  double err = std::fabs(kronrod - gauss);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return {a, b, kronrod, err, std::fabs(fv[0]), std::fabs(fv[14]), index};
}

// Largest |f| on a coarse geometric grid; the split sits there (at least 1).
template <class F>
double scan_mode(F& f) {
  double best_x = 1.0;
  double best = -1.0;
  for (int i = 0; i <= 60; ++i) {
    const double x = std::pow(10.0, -6.0 + 0.2 * i);
    const double y = std::fabs(sample(f, x));
    if (y > best) {
      best = y;
      best_x = x;
    }
  }
  return std::max(1.0, best_x);
}

}  // namespace detail

/// Integral of f over (0, inf). Throws NonConvergence when the tolerance is
/// not met within max_subdivisions bisections or when the transformed
/// integrand does not vanish at either end, and IntegrandFailure when f
/// returns a non-finite value.
template <class F>
QuadResult integrate_halfline(F&& f, const QuadConfig& config) {
  config.validate();
  const double s = config.split_strategy == SplitStrategy::fixed
                       ? config.split_point
                       : detail::scan_mode(f);

  using detail::Panel;
  const double u_max = detail::kMaxLogX - std::max(0.0, std::log(s));
  const std::array<Panel, 2> panels = {
      Panel{Panel::Kind::lower, s, std::asinh(detail::kNearZeroU / std::numbers::pi),
            std::asinh(detail::kSmoothEndU / std::numbers::pi)},
      Panel{Panel::Kind::upper, s, std::asinh(-detail::kSmoothEndU / std::numbers::pi),
            std::asinh(u_max / std::numbers::pi)}};

  constexpr int kInitialPieces = 8;
  std::priority_queue<detail::Segment> heap;
  for (int p = 0; p < 2; ++p) {
    const double width = (panels[p].t_hi - panels[p].t_lo) / kInitialPieces;
    for (int i = 0; i < kInitialPieces; ++i) {
      const double a = panels[p].t_lo + i * width;
      const double b = i + 1 == kInitialPieces ? panels[p].t_hi : a + width;
      heap.push(detail::gauss_kronrod(f, panels[p], p, a, b));
    }
  }

  auto resum = [&heap]() {
    double value = 0.0;
    double error = 0.0;
    for (auto copy = heap; !copy.empty(); copy.pop()) {
      value += copy.top().value;
      error += copy.top().error;
    }
    return std::pair{value, error};
  };

  QuadResult result;
  auto [value, error] = resum();
  for (;;) {
    if (error <= config.tolerance_for(value)) {
      // Running sums drift; confirm against an exact re-summation.
      std::tie(value, error) = resum();
      if (error <= config.tolerance_for(value)) break;
    }
    if (result.subdivisions_used >= config.max_subdivisions) {
      std::tie(result.value, result.error_estimate) = resum();
      throw NonConvergence("integrate_halfline: subdivision limit reached", result);
    }
    const detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e-13 * (1.0 + std::fabs(mid))) {
      std::tie(result.value, result.error_estimate) = resum();
      throw NonConvergence("integrate_halfline: segment too small to bisect", result);
    }
    heap.pop();
    const auto left =
        detail::gauss_kronrod(f, panels[worst.panel], worst.panel, worst.a, mid);
    const auto right =
        detail::gauss_kronrod(f, panels[worst.panel], worst.panel, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++result.subdivisions_used;
  }

  result.value = value;
  result.error_estimate = error;

  // The transformed integrand must vanish at the outer ends of the range.
  double edge = 0.0;
  for (auto copy = heap; !copy.empty(); copy.pop()) {
    const auto& seg = copy.top();
    const Panel& p = panels[seg.panel];
    if (seg.a == p.t_lo) edge = std::max(edge, seg.boundary_lo);
    if (seg.b == p.t_hi) edge = std::max(edge, seg.boundary_hi);
  }
  if (edge > config.tolerance_for(value)) {
    throw NonConvergence("integrate_halfline: integrand does not decay at the ends "
                         "of the range (divergent integral)",
                         result);
  }
  result.converged = true;
  return result;
}

}  // namespace ncentropy

#endif  // NCENTROPY_QUAD_HPP
