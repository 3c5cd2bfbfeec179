// SPDX-License-Identifier: Apache-2.0
#ifndef NCENTROPY_ENTROPY_HPP
#define NCENTROPY_ENTROPY_HPP

// Shannon, Renyi, generalized Renyi (off-diagonal and diagonal), Tsallis and
// Sharma-Mittal entropies of the laws in dist.hpp.
//
// Every functional is assembled from two integrals,
//   I(a) = int f^a dx   and   J(a) = int f^a log f dx,
// evaluated by half-line quadrature from the log-density. Rescaled laws are
// handled by the exact scaling rules applied to the entropy of the base law.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ncentropy/dist.hpp"
#include "ncentropy/errors.hpp"
#include "ncentropy/quad.hpp"
#include "ncentropy/specfun.hpp"

namespace ncentropy {

enum class EntropyKind { shannon, renyi, gen_renyi, gen_renyi_diag, tsallis, sharma_mittal };

struct EntropySpec {
  EntropyKind kind = EntropyKind::shannon;
  double alpha = 1.0;
  double beta = 1.0;

  static EntropySpec shannon() { return {EntropyKind::shannon, 1.0, 1.0}; }
  static EntropySpec renyi(double a) { return {EntropyKind::renyi, a, 1.0}; }
  static EntropySpec gen_renyi(double a, double b) { return {EntropyKind::gen_renyi, a, b}; }
  static EntropySpec gen_renyi_diag(double a) { return {EntropyKind::gen_renyi_diag, a, a}; }
  static EntropySpec tsallis(double a) { return {EntropyKind::tsallis, a, 1.0}; }
  static EntropySpec sharma_mittal(double a, double b) {
    return {EntropyKind::sharma_mittal, a, b};
  }

  [[nodiscard]] bool uses_alpha() const noexcept { return kind != EntropyKind::shannon; }
  [[nodiscard]] bool uses_beta() const noexcept {
    return kind == EntropyKind::gen_renyi || kind == EntropyKind::sharma_mittal;
  }
};

inline std::string_view kind_name(EntropyKind kind) {
  switch (kind) {
    case EntropyKind::shannon: return "shannon";
    case EntropyKind::renyi: return "renyi";
    case EntropyKind::gen_renyi: return "genrenyi";
    case EntropyKind::gen_renyi_diag: return "genrenyi-diag";
    case EntropyKind::tsallis: return "tsallis";
    case EntropyKind::sharma_mittal: return "sharma-mittal";
  }
  return "unknown";
}

inline std::optional<EntropyKind> parse_kind(std::string_view name) {
  for (auto k : {EntropyKind::shannon, EntropyKind::renyi, EntropyKind::gen_renyi,
                 EntropyKind::gen_renyi_diag, EntropyKind::tsallis,
                 EntropyKind::sharma_mittal}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

/// Indices closer than this to an excluded value are rejected.
inline constexpr double kIndexExclusion = 1e-9;

/// Reason the indices are outside the functional's range, if any.
inline std::optional<std::string> spec_violation(const EntropySpec& spec) {
  const auto bad = [](double v) { return !(v > 0.0) || !std::isfinite(v); };
  const auto near_one = [](double v) { return std::fabs(v - 1.0) < kIndexExclusion; };
  switch (spec.kind) {
    case EntropyKind::shannon:
      return std::nullopt;
    case EntropyKind::renyi:
    case EntropyKind::tsallis:
      if (bad(spec.alpha)) return "alpha must be > 0";
      if (near_one(spec.alpha)) return "alpha must differ from 1";
      return std::nullopt;
    case EntropyKind::gen_renyi_diag:
      if (bad(spec.alpha)) return "alpha must be > 0";
      return std::nullopt;
    case EntropyKind::gen_renyi:
      if (bad(spec.alpha) || bad(spec.beta)) return "alpha and beta must be > 0";
      if (std::fabs(spec.alpha - spec.beta) < kIndexExclusion) {
        return "alpha must differ from beta (use genrenyi-diag)";
      }
      return std::nullopt;
    case EntropyKind::sharma_mittal:
      if (bad(spec.alpha) || bad(spec.beta)) return "alpha and beta must be > 0";
      if (near_one(spec.alpha) || near_one(spec.beta)) {
        return "alpha and beta must differ from 1";
      }
      return std::nullopt;
  }
  return "unknown entropy kind";
}

enum class EntropyState { finite, positive_infinity, undefined };

enum class UndefinedReason {
  none,
  existence_gate,
  parameter,
  non_convergence,
  integrand_failure,
};

inline std::string_view reason_code(UndefinedReason r) {
  switch (r) {
    case UndefinedReason::none: return "";
    case UndefinedReason::existence_gate: return "existence-gate";
    case UndefinedReason::parameter: return "parameter";
    case UndefinedReason::non_convergence: return "non-convergence";
    case UndefinedReason::integrand_failure: return "integrand-failure";
  }
  return "unknown";
}

struct EntropyResult {
  EntropyState state = EntropyState::undefined;
  double value = std::numeric_limits<double>::quiet_NaN();
  double error_estimate = 0.0;
  UndefinedReason reason = UndefinedReason::none;
  std::string message;

  static EntropyResult finite(double v, double err = 0.0) {
    EntropyResult r;
    r.state = EntropyState::finite;
    r.value = v;
    r.error_estimate = err;
    return r;
  }
  static EntropyResult infinite() {
    EntropyResult r;
    r.state = EntropyState::positive_infinity;
    r.value = std::numeric_limits<double>::infinity();
    return r;
  }
  static EntropyResult undefined(UndefinedReason why, std::string msg) {
    EntropyResult r;
    r.reason = why;
    r.message = std::move(msg);
    return r;
  }

  [[nodiscard]] bool is_finite() const noexcept { return state == EntropyState::finite; }
  [[nodiscard]] bool is_infinite() const noexcept {
    return state == EntropyState::positive_infinity;
  }
  [[nodiscard]] bool is_undefined() const noexcept { return state == EntropyState::undefined; }
};

struct GateResult {
  bool passes = false;
  std::string reason;
  explicit operator bool() const noexcept { return passes; }
};

namespace detail {

inline bool power_integrable(double k, double a) { return k > 2.0 - 2.0 / a; }

}  // namespace detail

/// Existence of the entropy of a noncentral chi-squared law with k degrees
/// of freedom (any lambda > 0): Shannon always, the power-based functionals
/// iff k > 2 - 2/a for the binding exponent a. Only k > 1 is admitted.
inline GateResult existence_gate(double k, const EntropySpec& spec) {
  if (!(k > 1.0)) return {false, "requires k > 1"};
  if (auto v = spec_violation(spec)) return {false, *v};
  double binding = spec.alpha;
  switch (spec.kind) {
    case EntropyKind::shannon:
      return {true, {}};
    case EntropyKind::gen_renyi:
      binding = std::max(spec.alpha, spec.beta);
      break;
    default:
      break;
  }
  if (!detail::power_integrable(k, binding)) {
    return {false, "requires k > 2 - 2/alpha"};
  }
  return {true, {}};
}

namespace detail {

inline void require_power_gate(const Law& law, double alpha, const char* where) {
  const double k = degrees_of_freedom(law);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) domain_fail(where, "alpha must be > 0");
  if (!(k > 1.0)) throw ExistenceError(std::string(where) + ": requires k > 1");
  if (!power_integrable(k, alpha)) {
    throw ExistenceError(std::string(where) + ": requires k > 2 - 2/alpha");
  }
}

}  // namespace detail

/// I(alpha) = int f^alpha dx.
inline QuadResult integral_f_alpha(const Law& law, double alpha, const QuadConfig& config) {
  detail::require_power_gate(law, alpha, "integral_f_alpha");
  return integrate_halfline(
      [&law, alpha](double x) { return std::exp(alpha * log_pdf(law, x)); }, config);
}

/// J(alpha) = int f^alpha log f dx, with log f taken from the log-density.
inline QuadResult integral_f_alpha_log(const Law& law, double alpha,
                                       const QuadConfig& config) {
  detail::require_power_gate(law, alpha, "integral_f_alpha_log");
  return integrate_halfline(
      [&law, alpha](double x) {
        const double lp = log_pdf(law, x);
        return std::exp(alpha * lp) * lp;
      },
      config);
}

/// Entropy of C*X from the entropy of X.
inline EntropyResult scale_transform(const EntropyResult& base, const EntropySpec& spec,
                                     double c) {
  if (!base.is_finite()) return base;
  if (!(c > 0.0) || !std::isfinite(c)) {
    return EntropyResult::undefined(UndefinedReason::parameter, "scale must be > 0");
  }
  const double log_c = std::log(c);
  switch (spec.kind) {
    case EntropyKind::shannon:
    case EntropyKind::renyi:
    case EntropyKind::gen_renyi:
    case EntropyKind::gen_renyi_diag:
      return EntropyResult::finite(base.value + log_c, base.error_estimate);
    case EntropyKind::tsallis:
    case EntropyKind::sharma_mittal: {
      const double index = spec.kind == EntropyKind::tsallis ? spec.alpha : spec.beta;
      const double e = (1.0 - index) * log_c;
      const double factor = std::exp(e);
      return EntropyResult::finite(factor * base.value + std::expm1(e) / (1.0 - index),
                                   factor * base.error_estimate);
    }
  }
  return base;
}

enum class ScaledMode { transform, direct };

namespace detail {

template <class Fn>
EntropyResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const NonConvergence& e) {
    return EntropyResult::undefined(UndefinedReason::non_convergence, e.what());
  } catch (const IntegrandFailure& e) {
    return EntropyResult::undefined(UndefinedReason::integrand_failure, e.what());
  } catch (const ExistenceError& e) {
    return EntropyResult::undefined(UndefinedReason::existence_gate, e.what());
  } catch (const DomainError& e) {
    return EntropyResult::undefined(UndefinedReason::parameter, e.what());
  }
}

inline EntropyResult assemble(const Law& law, const EntropySpec& spec,
                              const QuadConfig& config) {
  const double a = spec.alpha;
  const double b = spec.beta;
  switch (spec.kind) {
    case EntropyKind::shannon: {
      const auto j = integral_f_alpha_log(law, 1.0, config);
      return EntropyResult::finite(-j.value, j.error_estimate);
    }
    case EntropyKind::renyi: {
      const auto i = integral_f_alpha(law, a, config);
      return EntropyResult::finite(std::log(i.value) / (1.0 - a),
                                   i.error_estimate / (i.value * std::fabs(1.0 - a)));
    }
    case EntropyKind::gen_renyi: {
      // Fixed evaluation order makes H(a, b) and H(b, a) bit-identical.
      const double lo = std::min(a, b);
      const double hi = std::max(a, b);
      const auto i_lo = integral_f_alpha(law, lo, config);
      const auto i_hi = integral_f_alpha(law, hi, config);
      const double err = (i_lo.error_estimate / i_lo.value + i_hi.error_estimate / i_hi.value) /
                         (hi - lo);
      return EntropyResult::finite((std::log(i_lo.value) - std::log(i_hi.value)) / (hi - lo),
                                   err);
    }
    case EntropyKind::gen_renyi_diag: {
      const auto i = integral_f_alpha(law, a, config);
      const auto j = integral_f_alpha_log(law, a, config);
      const double h = -j.value / i.value;
      const double err = (j.error_estimate + std::fabs(h) * i.error_estimate) / i.value;
      return EntropyResult::finite(h, err);
    }
    case EntropyKind::tsallis: {
      const auto i = integral_f_alpha(law, a, config);
      return EntropyResult::finite((i.value - 1.0) / (1.0 - a),
                                   i.error_estimate / std::fabs(1.0 - a));
    }
    case EntropyKind::sharma_mittal: {
      const auto i = integral_f_alpha(law, a, config);
      const double p = (1.0 - b) / (1.0 - a);
      const double e = p * std::log(i.value);
      const double err = std::fabs(p) * std::exp(e) * i.error_estimate / i.value /
                         std::fabs(1.0 - b);
      return EntropyResult::finite(std::expm1(e) / (1.0 - b), err);
    }
  }
  return EntropyResult::undefined(UndefinedReason::parameter, "unknown entropy kind");
}

}  // namespace detail

/// Entropy of `law`. Invalid indices and failed existence conditions give
/// Undefined; a rescaled law is evaluated as its base plus the scaling rule
/// unless `mode` is direct.
inline EntropyResult entropy(const Law& law, const EntropySpec& spec,
                             const QuadConfig& config = {},
                             ScaledMode mode = ScaledMode::transform) {
  if (auto v = spec_violation(spec)) {
    return EntropyResult::undefined(UndefinedReason::parameter, *v);
  }
  if (auto gate = existence_gate(degrees_of_freedom(law), spec); !gate) {
    return EntropyResult::undefined(UndefinedReason::existence_gate, gate.reason);
  }
  if (const auto* scaled = std::get_if<ScaledLaw>(&law);
      scaled != nullptr && mode == ScaledMode::transform) {
    const Law base = std::visit([](const auto& b) { return Law(b); }, scaled->base());
    return scale_transform(entropy(base, spec, config), spec, scaled->scale_c());
  }
  return detail::guarded([&] { return detail::assemble(law, spec, config); });
}

/// Closed-form entropies of the gamma law with the given shape and scale.
inline EntropyResult gamma_entropy_closed_form(double shape, double scale,
                                               const EntropySpec& spec) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
    return EntropyResult::undefined(UndefinedReason::parameter, "shape and scale must be > 0");
  }
  if (auto v = spec_violation(spec)) {
    return EntropyResult::undefined(UndefinedReason::parameter, *v);
  }
  const double s = shape;
  const double log_rate = -std::log(scale);
  const double lg_s = log_gamma(s);
  // Gamma argument of the power integral; must stay positive.
  const auto arg = [s](double a) { return a * (s - 1.0) + 1.0; };
  const auto gate_fail = [] {
    return EntropyResult::undefined(UndefinedReason::existence_gate,
                                    "requires alpha(shape - 1) + 1 > 0");
  };
  const double a = spec.alpha;
  const double b = spec.beta;

  switch (spec.kind) {
    case EntropyKind::shannon:
      return EntropyResult::finite(-log_rate + lg_s + s - digamma(s) * (s - 1.0));
    case EntropyKind::renyi:
      if (!(arg(a) > 0.0)) return gate_fail();
      return EntropyResult::finite(-log_rate - (a * lg_s - log_gamma(arg(a))) / (1.0 - a) -
                                   (1.0 - a + a * s) / (1.0 - a) * std::log(a));
    case EntropyKind::gen_renyi: {
      const double lo = std::min(a, b);
      const double hi = std::max(a, b);
      if (!(arg(lo) > 0.0) || !(arg(hi) > 0.0)) return gate_fail();
      const double inner = arg(hi) * std::log(hi) - arg(lo) * std::log(lo) +
                           log_gamma(arg(lo)) - log_gamma(arg(hi));
      return EntropyResult::finite(-log_rate + inner / (hi - lo) + lg_s);
    }
    case EntropyKind::gen_renyi_diag:
      if (!(arg(a) > 0.0)) return gate_fail();
      return EntropyResult::finite(-log_rate + lg_s + (s - 1.0) * std::log(a) -
                                   (s - 1.0) * digamma(arg(a)) + s - 1.0 + 1.0 / a);
    case EntropyKind::tsallis: {
      if (!(arg(a) > 0.0)) return gate_fail();
      const double log_inner = (a - 1.0) * log_rate + (a * (1.0 - s) - 1.0) * std::log(a) +
                               log_gamma(arg(a)) - a * lg_s;
      return EntropyResult::finite(std::expm1(log_inner) / (1.0 - a));
    }
    case EntropyKind::sharma_mittal: {
      if (!(arg(a) > 0.0)) return gate_fail();
      const double p = (1.0 - b) / (1.0 - a);
      const double log_inner = (b - 1.0) * log_rate +
                               (a * (1.0 - s) - 1.0) * p * std::log(a) - a * p * lg_s +
                               p * log_gamma(arg(a));
      return EntropyResult::finite(std::expm1(log_inner) / (1.0 - b));
    }
  }
  return EntropyResult::undefined(UndefinedReason::parameter, "unknown entropy kind");
}

/// One row of a convergence study: the varied parameter, the entropy there,
/// and |H - H_reference| (NaN unless both are finite).
struct StudyRow {
  double parameter;
  EntropyResult result;
  double gap;
};

namespace detail {

inline void require_strictly_decreasing(const std::vector<double>& grid, bool allow_zero,
                                        const char* where) {
  if (grid.empty()) domain_fail(where, "grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = grid[i];
    if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0)) {
      domain_fail(where, allow_zero ? "grid values must be >= 0" : "grid values must be > 0");
    }
    if (i > 0 && !(v < grid[i - 1])) domain_fail(where, "grid must be strictly decreasing");
  }
}

inline double gap_between(const EntropyResult& a, const EntropyResult& b) {
  if (!a.is_finite() || !b.is_finite()) return std::numeric_limits<double>::quiet_NaN();
  return std::fabs(a.value - b.value);
}

}  // namespace detail

/// Entropy of the noncentral law along a decreasing lambda grid, with the gap
/// to the central law (lambda = 0).
inline std::vector<StudyRow> lambda_convergence_study(double k, const EntropySpec& spec,
                                                      const std::vector<double>& lambda_grid,
                                                      const QuadConfig& config = {}) {
  detail::require_strictly_decreasing(lambda_grid, true, "lambda_convergence_study");
  if (!(k > 0.0)) detail::domain_fail("lambda_convergence_study", "k must be > 0");
  const EntropyResult reference = entropy(NoncentralChiSq(k, 0.0), spec, config);
  std::vector<StudyRow> rows;
  rows.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    EntropyResult r = entropy(NoncentralChiSq(k, lambda), spec, config);
    const double gap = detail::gap_between(r, reference);
    rows.push_back({lambda, std::move(r), gap});
  }
  return rows;
}

}  // namespace ncentropy

#endif  // NCENTROPY_ENTROPY_HPP
