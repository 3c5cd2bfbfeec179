// SPDX-License-Identifier: Apache-2.0
#ifndef NCENTROPY_PROC_HPP
#define NCENTROPY_PROC_HPP

// Time-t marginals of the CIR process dr = (a - b r) dt + sigma sqrt(r) dW
// and of the squared Bessel process dY = a dt + sigma sqrt(Y) dW, both as
// rescaled noncentral chi-squared laws with k = 4a / sigma^2:
//
//   r_t ~ c(t)  X_{k, lambda(t)},   c(t)  = sigma^2 (1 - e^{-bt}) / (4b),
//                                   lambda(t) = r0 e^{-bt} / c(t)
//   Y_t ~ c0(t) X_{k, lambda0(t)},  c0(t) = sigma^2 t / 4,
//                                   lambda0(t) = 4 Y0 / (sigma^2 t)

#include <cmath>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "ncentropy/dist.hpp"
#include "ncentropy/entropy.hpp"
#include "ncentropy/errors.hpp"

namespace ncentropy {

namespace detail {

inline void require_positive(const char* where, const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    domain_fail(where, std::string(name) + " must be finite and > 0");
  }
}

inline void require_feller(const char* where, double a, double sigma) {
  if (!(2.0 * a >= sigma * sigma)) {
    throw FellerError(std::string(where) +
                      ": Feller condition 2a >= sigma^2 is violated");
  }
}

}  // namespace detail

class CIRParams {
 public:
  CIRParams(double a, double b, double sigma, double r0) : a_(a), b_(b), sigma_(sigma), r0_(r0) {
    detail::require_positive("CIRParams", "a", a);
    detail::require_positive("CIRParams", "b", b);
    detail::require_positive("CIRParams", "sigma", sigma);
    detail::require_positive("CIRParams", "r0", r0);
    detail::require_feller("CIRParams", a, sigma);
  }
  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] double r0() const noexcept { return r0_; }
  [[nodiscard]] double degrees_of_freedom() const noexcept {
    return 4.0 * a_ / (sigma_ * sigma_);
  }

 private:
  double a_, b_, sigma_, r0_;
};

class BesselParams {
 public:
  BesselParams(double a, double sigma, double y0) : a_(a), sigma_(sigma), y0_(y0) {
    detail::require_positive("BesselParams", "a", a);
    detail::require_positive("BesselParams", "sigma", sigma);
    detail::require_positive("BesselParams", "y0", y0);
    detail::require_feller("BesselParams", a, sigma);
  }
  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] double y0() const noexcept { return y0_; }
  [[nodiscard]] double degrees_of_freedom() const noexcept {
    return 4.0 * a_ / (sigma_ * sigma_);
  }

 private:
  double a_, sigma_, y0_;
};

using Process = std::variant<CIRParams, BesselParams>;

/// Strictly increasing positive observation times.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty()) detail::domain_fail("TimeGrid", "at least one time is required");
    for (std::size_t i = 0; i < times_.size(); ++i) {
      if (!(times_[i] > 0.0) || !std::isfinite(times_[i])) {
        detail::domain_fail("TimeGrid", "times must be finite and > 0");
      }
      if (i > 0 && !(times_[i] > times_[i - 1])) {
        detail::domain_fail("TimeGrid", "times must be strictly increasing");
      }
    }
  }
  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }

 private:
  std::vector<double> times_;
};

/// (1 - e^{-bt}) / b without cancellation for small b t.
inline double cir_scale(const CIRParams& p, double t) {
  detail::require_positive("cir_scale", "t", t);
  const double bt = p.b() * t;
  return p.sigma() * p.sigma() / 4.0 * (-std::expm1(-bt) / p.b());
}

inline ScaledLaw cir_marginal(const CIRParams& p, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    detail::domain_fail("cir_marginal", "t must be > 0 (the marginal is degenerate at 0)");
  }
  const double c = cir_scale(p, t);
  const double lambda = p.r0() * std::exp(-p.b() * t) / c;
  return ScaledLaw(NoncentralChiSq(p.degrees_of_freedom(), lambda), c);
}

inline ScaledLaw bessel_marginal(const BesselParams& p, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    detail::domain_fail("bessel_marginal", "t must be > 0 (the marginal is degenerate at 0)");
  }
  const double s2t = p.sigma() * p.sigma() * t;
  return ScaledLaw(NoncentralChiSq(p.degrees_of_freedom(), 4.0 * p.y0() / s2t), s2t / 4.0);
}

inline ScaledLaw marginal(const Process& process, double t) {
  return std::visit(
      [t](const auto& p) -> ScaledLaw {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CIRParams>) {
          return cir_marginal(p, t);
        } else {
          return bessel_marginal(p, t);
        }
      },
      process);
}

struct CurvePoint {
  double t;
  EntropyResult result;
};

/// Entropy of the marginal at every time of the grid.
inline std::vector<CurvePoint> entropy_curve(const Process& process, const TimeGrid& grid,
                                             const EntropySpec& spec,
                                             const QuadConfig& config = {}) {
  std::vector<CurvePoint> out;
  out.reserve(grid.times().size());
  for (double t : grid.times()) {
    out.push_back({t, entropy(marginal(process, t), spec, config)});
  }
  return out;
}

/// Time by which the CIR marginal is within quadrature tolerance of the
/// stationary law: e^{-b t} = e^{-60} at the default factor.
inline double cir_large_time(const CIRParams& p, double factor = 60.0) {
  return factor / p.b();
}

/// Entropy of the stationary gamma law (shape 2a/sigma^2, scale sigma^2/(2b)).
inline EntropyResult cir_limit_entropy(const CIRParams& p, const EntropySpec& spec) {
  const double s2 = p.sigma() * p.sigma();
  return gamma_entropy_closed_form(2.0 * p.a() / s2, s2 / (2.0 * p.b()), spec);
}

/// t -> inf limit for the squared Bessel process: divergent except Tsallis
/// with alpha > 1 and Sharma-Mittal with beta > 1.
inline EntropyResult bessel_limit_entropy(const EntropySpec& spec) {
  if (auto v = spec_violation(spec)) {
    return EntropyResult::undefined(UndefinedReason::parameter, *v);
  }
  switch (spec.kind) {
    case EntropyKind::tsallis:
      if (spec.alpha < 1.0) return EntropyResult::infinite();
      return EntropyResult::finite(1.0 / (spec.alpha - 1.0));
    case EntropyKind::sharma_mittal:
      if (spec.beta < 1.0) return EntropyResult::infinite();
      return EntropyResult::finite(1.0 / (spec.beta - 1.0));
    default:
      return EntropyResult::infinite();
  }
}

/// CIR entropy at fixed t along a decreasing grid of b, with the gap to the
/// squared Bessel entropy at the same t and Y0 = r0.
inline std::vector<StudyRow> b_to_zero_study(double a, double sigma, double r0, double t,
                                             const std::vector<double>& b_grid,
                                             const EntropySpec& spec,
                                             const QuadConfig& config = {}) {
  detail::require_strictly_decreasing(b_grid, false, "b_to_zero_study");
  const BesselParams bessel(a, sigma, r0);
  const EntropyResult reference = entropy(bessel_marginal(bessel, t), spec, config);
  std::vector<StudyRow> rows;
  rows.reserve(b_grid.size());
  for (double b : b_grid) {
    const CIRParams cir(a, b, sigma, r0);
    EntropyResult r = entropy(cir_marginal(cir, t), spec, config);
    const double gap = detail::gap_between(r, reference);
    rows.push_back({b, std::move(r), gap});
  }
  return rows;
}

}  // namespace ncentropy

#endif  // NCENTROPY_PROC_HPP
