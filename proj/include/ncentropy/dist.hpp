// SPDX-License-Identifier: Apache-2.0
#ifndef NCENTROPY_DIST_HPP
#define NCENTROPY_DIST_HPP

// Central and noncentral chi-squared laws, gamma laws and their positive
// rescalings. All densities are evaluated in log space; `pdf` is just
// exp(log_pdf).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <type_traits>
#include <variant>
#include <vector>

#include "ncentropy/errors.hpp"
#include "ncentropy/specfun.hpp"

namespace ncentropy {

class CentralChiSq {
 public:
  explicit CentralChiSq(double k) : k_(k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      detail::domain_fail("CentralChiSq", "k must be finite and > 0");
    }
  }
  [[nodiscard]] double k() const noexcept { return k_; }

 private:
  double k_;
};

/// lambda = 0 is admitted and evaluates exactly as the central law.
class NoncentralChiSq {
 public:
  NoncentralChiSq(double k, double lambda) : k_(k), lambda_(lambda) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      detail::domain_fail("NoncentralChiSq", "k must be finite and > 0");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      detail::domain_fail("NoncentralChiSq", "lambda must be finite and >= 0");
    }
  }
  [[nodiscard]] double k() const noexcept { return k_; }
  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] CentralChiSq central() const { return CentralChiSq(k_); }

 private:
  double k_;
  double lambda_;
};

class GammaLaw {
 public:
  GammaLaw(double shape, double scale) : shape_(shape), scale_(scale) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
      detail::domain_fail("GammaLaw", "shape must be finite and > 0");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      detail::domain_fail("GammaLaw", "scale must be finite and > 0");
    }
  }
  [[nodiscard]] double shape() const noexcept { return shape_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }

 private:
  double shape_;
  double scale_;
};

using BaseLaw = std::variant<CentralChiSq, NoncentralChiSq, GammaLaw>;

/// Law of C * X for X distributed as `base`.
class ScaledLaw {
 public:
  ScaledLaw(BaseLaw base, double scale_c) : base_(base), c_(scale_c) {
    if (!(scale_c > 0.0) || !std::isfinite(scale_c)) {
      detail::domain_fail("ScaledLaw", "scale factor must be finite and > 0");
    }
  }
  [[nodiscard]] const BaseLaw& base() const noexcept { return base_; }
  [[nodiscard]] double scale_c() const noexcept { return c_; }

 private:
  BaseLaw base_;
  double c_;
};

using Law = std::variant<CentralChiSq, NoncentralChiSq, GammaLaw, ScaledLaw>;

namespace detail {

inline void require_positive_x(const char* where, double x) {
  if (!(x > 0.0) || std::isnan(x)) domain_fail(where, "x must be > 0");
}

inline double log_pdf_central_unchecked(double k, double x) {
  const double h = 0.5 * k;
  return (h - 1.0) * std::log(x) - 0.5 * x - h * std::numbers::ln2 -
         boost::math::lgamma(h);
}

}  // namespace detail

inline double log_pdf_central(const CentralChiSq& law, double x) {
  detail::require_positive_x("log_pdf_central", x);
  return detail::log_pdf_central_unchecked(law.k(), x);
}

inline double log_pdf_noncentral(const NoncentralChiSq& law, double x) {
  detail::require_positive_x("log_pdf_noncentral", x);
  const double k = law.k();
  const double lambda = law.lambda();
  if (lambda == 0.0) return detail::log_pdf_central_unchecked(k, x);
  const double nu = 0.5 * k - 1.0;
  return -0.5 * (x + lambda) + 0.5 * nu * (std::log(x) - std::log(lambda)) +
         log_bessel_i(BesselOrder(nu), std::sqrt(lambda * x)) - std::numbers::ln2;
}

inline double log_pdf_gamma(const GammaLaw& law, double x) {
  detail::require_positive_x("log_pdf_gamma", x);
  const double a = law.shape();
  const double theta = law.scale();
  return (a - 1.0) * std::log(x) - x / theta - a * std::log(theta) -
         boost::math::lgamma(a);
}

inline double log_pdf(const BaseLaw& law, double x) {
  return std::visit(
      [x](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, CentralChiSq>) {
          return log_pdf_central(l, x);
        } else if constexpr (std::is_same_v<T, NoncentralChiSq>) {
          return log_pdf_noncentral(l, x);
        } else {
          return log_pdf_gamma(l, x);
        }
      },
      law);
}

inline double log_pdf_scaled(const ScaledLaw& law, double x) {
  detail::require_positive_x("log_pdf_scaled", x);
  const double c = law.scale_c();
  return log_pdf(law.base(), x / c) - std::log(c);
}

inline double log_pdf(const Law& law, double x) {
  return std::visit(
      [x](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ScaledLaw>) {
          return log_pdf_scaled(l, x);
        } else {
          return log_pdf(BaseLaw(l), x);
        }
      },
      law);
}

inline double pdf(const Law& law, double x) { return std::exp(log_pdf(law, x)); }

/// Degrees of freedom in the chi-squared parametrization (2 * shape for a
/// gamma law); rescaling leaves it unchanged.
inline double degrees_of_freedom(const Law& law) {
  return std::visit(
      [](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ScaledLaw>) {
          return std::visit(
              [](const auto& b) -> double {
                using B = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<B, GammaLaw>) {
                  return 2.0 * b.shape();
                } else {
                  return b.k();
                }
              },
              l.base());
        } else if constexpr (std::is_same_v<T, GammaLaw>) {
          return 2.0 * l.shape();
        } else {
          return l.k();
        }
      },
      law);
}

/// Noncentral density as a Poisson(lambda/2) mixture of central densities
/// with k + 2r degrees of freedom. Summation stops once the accumulated
/// Poisson mass exceeds 1 - tol and the last term is below tol times the
/// partial sum. Intended as a cross-check of the Bessel form.
inline double pdf_mixture(const NoncentralChiSq& law, double x, double tol) {
  detail::require_positive_x("pdf_mixture", x);
  if (!(tol > 0.0) || !(tol < 1.0)) detail::domain_fail("pdf_mixture", "tol must be in (0, 1)");
  const double k = law.k();
  const double lambda = law.lambda();
  if (lambda == 0.0) return std::exp(detail::log_pdf_central_unchecked(k, x));

  const double half = 0.5 * lambda;
  const double log_half = std::log(half);
  double mass = 0.0;
  double sum = 0.0;
  constexpr long kMaxTerms = 1'000'000;
  for (long r = 0; r < kMaxTerms; ++r) {
    const double rd = static_cast<double>(r);
    const double log_w = -half + rd * log_half - boost::math::lgamma(rd + 1.0);
    const double w = std::exp(log_w);
    const double term = std::exp(log_w + detail::log_pdf_central_unchecked(k + 2.0 * rd, x));
    mass += w;
    sum += term;
    if (rd > half && mass >= 1.0 - tol && term < tol * sum) break;
    // Rounding can keep the accumulated mass a few ulps short of 1 - tol.
    if (rd > half && w < 1e-3 * tol * tol && term < tol * sum) break;
  }
  return sum;
}

/// log of the Bessel-free bracket around the noncentral density, valid for
/// k > 1, lambda > 0.
inline LogBracket pdf_log_bounds(const NoncentralChiSq& law, double x) {
  detail::require_positive_x("pdf_log_bounds", x);
  const double k = law.k();
  const double lambda = law.lambda();
  if (!(k > 1.0)) detail::domain_fail("pdf_log_bounds", "requires k > 1");
  if (!(lambda > 0.0)) detail::domain_fail("pdf_log_bounds", "requires lambda > 0");
  const double common = (0.5 * k - 1.0) * std::log(x) - 0.5 * k * std::numbers::ln2 -
                        boost::math::lgamma(0.5 * k);
  return {-0.5 * (x + lambda) + common, -0.25 * x + 0.5 * lambda + common};
}

/// Exact sampler: a Poisson(lambda/2) count r, then a gamma draw with shape
/// k/2 + r and scale 2, times the scale factor for rescaled laws. Owns its
/// generator; use one instance per thread.
class Sampler {
 public:
  Sampler(const Law& law, std::uint64_t seed) : engine_(seed) {
    std::visit(
        [this](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, ScaledLaw>) {
            scale_ = l.scale_c();
            set_base(l.base());
          } else {
            set_base(BaseLaw(l));
          }
        },
        law);
  }

  double operator()() {
    double shape = shape_;
    if (poisson_mean_ > 0.0) {
      std::poisson_distribution<long long> count(poisson_mean_);
      shape += static_cast<double>(count(engine_));
    }
    std::gamma_distribution<double> gamma(shape, gamma_scale_);
    return scale_ * gamma(engine_);
  }

  std::vector<double> draw(std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back((*this)());
    return out;
  }

 private:
  void set_base(const BaseLaw& base) {
    std::visit(
        [this](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, CentralChiSq>) {
            shape_ = 0.5 * b.k();
          } else if constexpr (std::is_same_v<T, NoncentralChiSq>) {
            shape_ = 0.5 * b.k();
            poisson_mean_ = 0.5 * b.lambda();
          } else {
            shape_ = b.shape();
            gamma_scale_ = b.scale();
          }
        },
        base);
  }

  std::mt19937_64 engine_;
  double shape_ = 1.0;
  double gamma_scale_ = 2.0;
  double poisson_mean_ = 0.0;
  double scale_ = 1.0;
};

inline std::vector<double> sample(const Law& law, std::uint64_t seed, std::size_t n) {
  if (n < 1) detail::domain_fail("sample", "n must be >= 1");
  return Sampler(law, seed).draw(n);
}

}  // namespace ncentropy

#endif  // NCENTROPY_DIST_HPP
