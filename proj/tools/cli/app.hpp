// SPDX-License-Identifier: Apache-2.0
#ifndef NCENTROPY_TOOLS_CLI_APP_HPP
#define NCENTROPY_TOOLS_CLI_APP_HPP

// Command-line front end. `run` parses a full argument vector and writes
// data to `out` and diagnostics to `err`, returning the process exit code:
//
//   0  finite result / table written      3  entropy undefined
//   2  usage or parameter error           4  entropy is +infinity
//   5  Monte Carlo check failed (|z| > 4)

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncentropy/ncentropy.hpp"

namespace ncentropy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUndefined = 3;
inline constexpr int kExitInfinite = 4;
inline constexpr int kExitValidation = 5;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// Shortest "%.{precision}g"-style rendering, independent of the C locale.
inline std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

/// v rounded to `precision` significant digits, so JSON output carries
/// exactly the emitted digits.
inline double round_to_precision(double v, int precision) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_number(v, precision);
  double out = v;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

struct Output {
  bool json = false;
  int precision = 12;

  [[nodiscard]] std::string num(double v) const { return format_number(v, precision); }
  [[nodiscard]] Json jnum(double v) const {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return round_to_precision(v, precision);
  }
};

inline std::string_view state_name(EntropyState s) {
  switch (s) {
    case EntropyState::finite: return "finite";
    case EntropyState::positive_infinity: return "infinite";
    case EntropyState::undefined: return "undefined";
  }
  return "undefined";
}

inline int exit_code_for(const EntropyResult& r) {
  switch (r.state) {
    case EntropyState::finite: return kExitOk;
    case EntropyState::positive_infinity: return kExitInfinite;
    case EntropyState::undefined: return kExitUndefined;
  }
  return kExitUndefined;
}

inline std::string csv_value(const EntropyResult& r, const Output& o) {
  if (r.is_finite()) return o.num(r.value);
  if (r.is_infinite()) return "inf";
  return "";
}

inline Json result_json(const EntropyResult& r, const Output& o) {
  Json j;
  j["state"] = state_name(r.state);
  if (r.is_finite()) {
    j["value"] = o.jnum(r.value);
    j["error_estimate"] = o.jnum(r.error_estimate);
  } else if (r.is_undefined()) {
    j["reason"] = reason_code(r.reason);
    j["message"] = r.message;
  }
  return j;
}

inline void merge_into(Json& target, const Json& fields) {
  for (const auto& [key, val] : fields.items()) target[key] = val;
}

inline std::string join_csv(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    const auto& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      line += '"';
      for (char ch : c) {
        if (ch == '"') line += '"';
        line += ch;
      }
      line += '"';
    } else {
      line += c;
    }
  }
  line += '\n';
  return line;
}

/// key = value overrides for the quadrature defaults. '#' starts a comment.
inline void apply_config_file(const std::string& path, QuadConfig& config) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string{};
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const auto number = [&]() {
      double v = 0.0;
      const auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc{} || p != val.data() + val.size()) {
        throw UsageError(path + ":" + std::to_string(lineno) + ": bad number '" + val + "'");
      }
      return v;
    };
    if (key == "rel_tol") {
      config.rel_tol = number();
    } else if (key == "abs_tol") {
      config.abs_tol = number();
    } else if (key == "max_subdivisions") {
      config.max_subdivisions = static_cast<int>(number());
    } else if (key == "split_point") {
      if (val == "mode" || val == "at_mode") {
        config.split_strategy = SplitStrategy::at_mode;
      } else {
        config.split_strategy = SplitStrategy::fixed;
        config.split_point = number();
      }
    } else {
      throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
}

struct SpecArgs {
  std::string kind = "shannon";
  double alpha = 0.0;
  double beta = 0.0;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "shannon|renyi|genrenyi|genrenyi-diag|tsallis|sharma-mittal")
        ->capture_default_str();
    alpha_opt = cmd->add_option("--alpha", alpha, "first entropy index");
    beta_opt = cmd->add_option("--beta", beta, "second entropy index");
  }

  [[nodiscard]] EntropySpec spec() const {
    const auto k = parse_kind(kind);
    if (!k) throw UsageError("unknown --kind '" + kind + "'");
    EntropySpec s;
    s.kind = *k;
    if (s.uses_alpha()) {
      if (alpha_opt->count() == 0) throw UsageError("--alpha is required for " + kind);
      s.alpha = alpha;
      s.beta = alpha;
    }
    if (s.uses_beta()) {
      if (beta_opt->count() == 0) throw UsageError("--beta is required for " + kind);
      s.beta = beta;
    }
    return s;
  }
};

inline void add_spec_json(Json& j, const EntropySpec& spec, const Output& o) {
  j["kind"] = kind_name(spec.kind);
  if (spec.uses_alpha()) j["alpha"] = o.jnum(spec.alpha);
  if (spec.uses_beta()) j["beta"] = o.jnum(spec.beta);
}

inline std::string opt_num(bool present, double v, const Output& o) {
  return present ? o.num(v) : std::string{};
}

struct ProcessArgs {
  std::string process = "cir";
  double a = 1.0;
  double b = 1.0;
  double sigma = 1.0;
  double r0 = 1.0;
  double y0 = 1.0;

  void add_to(CLI::App* cmd, bool with_process) {
    if (with_process) {
      cmd->add_option("--process", process, "cir|bessel")
          ->check(CLI::IsMember({"cir", "bessel"}))
          ->capture_default_str();
    }
    cmd->add_option("--a", a, "drift level a")->capture_default_str();
    cmd->add_option("--b", b, "mean reversion b (CIR)")->capture_default_str();
    cmd->add_option("--sigma", sigma, "volatility sigma")->capture_default_str();
    cmd->add_option("--r0", r0, "initial value r0 (CIR)")->capture_default_str();
    cmd->add_option("--y0", y0, "initial value Y0 (Bessel)")->capture_default_str();
  }

  [[nodiscard]] Process make() const {
    if (process == "cir") return CIRParams(a, b, sigma, r0);
    return BesselParams(a, sigma, y0);
  }

  void to_json(Json& j, const Output& o) const {
    j["process"] = process;
    j["a"] = o.jnum(a);
    if (process == "cir") j["b"] = o.jnum(b);
    j["sigma"] = o.jnum(sigma);
    if (process == "cir") {
      j["r0"] = o.jnum(r0);
    } else {
      j["y0"] = o.jnum(y0);
    }
  }
};

namespace detail {

struct LawDescription {
  std::string dist;
  std::optional<double> k, lambda, shape, scale, c;
};

inline LawDescription describe(const ScaledLaw& law, std::string dist) {
  LawDescription d;
  d.dist = std::move(dist);
  d.c = law.scale_c();
  std::visit(
      [&d](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, CentralChiSq>) {
          d.k = b.k();
        } else if constexpr (std::is_same_v<T, NoncentralChiSq>) {
          d.k = b.k();
          d.lambda = b.lambda();
        } else {
          d.shape = b.shape();
          d.scale = b.scale();
        }
      },
      law.base());
  return d;
}

inline int cmd_entropy(const Output& o, const QuadConfig& config, const std::string& dist,
                       const std::map<std::string, std::pair<CLI::Option*, double>>& p,
                       const SpecArgs& spec_args, bool direct, std::ostream& out) {
  const auto given = [&p](const std::string& name) { return p.at(name).first->count() > 0; };
  const auto need = [&](const std::string& name) {
    if (!given(name)) throw UsageError("--" + name + " is required for --dist " + dist);
    return p.at(name).second;
  };
  const double c = given("C") ? p.at("C").second : 1.0;

  const EntropySpec spec = spec_args.spec();
  const bool process = dist == "cir" || dist == "bessel";
  const bool at_infinity = process && need("t") == std::numeric_limits<double>::infinity();

  LawDescription d;
  EntropyResult r;
  if (at_infinity) {
    // t = inf asks for the large-time limit.
    d.dist = dist;
    if (dist == "cir") {
      const CIRParams cir(need("a"), need("b"), need("sigma"), need("r0"));
      const double s2 = cir.sigma() * cir.sigma();
      d.shape = 2.0 * cir.a() / s2;
      d.scale = s2 / (2.0 * cir.b());
      r = cir_limit_entropy(cir, spec);
    } else {
      const BesselParams bes(need("a"), need("sigma"), need("y0"));
      d.k = bes.degrees_of_freedom();
      r = bessel_limit_entropy(spec);
    }
  } else {
    std::optional<ScaledLaw> law;
    if (dist == "chisq") {
      law.emplace(CentralChiSq(need("k")), c);
    } else if (dist == "ncchisq") {
      law.emplace(NoncentralChiSq(need("k"), need("lambda")), c);
    } else if (dist == "gamma") {
      law.emplace(GammaLaw(need("shape"), need("scale")), c);
    } else if (dist == "cir") {
      const CIRParams cir(need("a"), need("b"), need("sigma"), need("r0"));
      law.emplace(cir_marginal(cir, need("t")));
    } else if (dist == "bessel") {
      const BesselParams bes(need("a"), need("sigma"), need("y0"));
      law.emplace(bessel_marginal(bes, need("t")));
    } else {
      throw UsageError("unknown --dist '" + dist + "'");
    }
    d = describe(*law, dist);
    const bool unit_scale = !process && c == 1.0;
    const Law evaluated =
        unit_scale ? std::visit([](const auto& b) { return Law(b); }, law->base()) : Law(*law);
    r = entropy(evaluated, spec, config, direct ? ScaledMode::direct : ScaledMode::transform);
  }

  if (o.json) {
    Json j;
    Json inputs;
    inputs["dist"] = dist;
    for (const auto& name : {"a", "b", "sigma", "r0", "y0", "t"}) {
      if (given(name)) inputs[name] = o.jnum(p.at(name).second);
    }
    Json mapped;
    if (d.k) mapped["k"] = o.jnum(*d.k);
    if (d.lambda) mapped["lambda"] = o.jnum(*d.lambda);
    if (d.shape) mapped["shape"] = o.jnum(*d.shape);
    if (d.scale) mapped["scale"] = o.jnum(*d.scale);
    if (d.c) mapped["C"] = o.jnum(*d.c);
    inputs["law"] = mapped;
    add_spec_json(inputs, spec, o);
    j["inputs"] = inputs;
    merge_into(j, result_json(r, o));
    out << j.dump() << '\n';
  } else {
    out << join_csv({"dist", "k", "lambda", "shape", "scale", "C", "kind", "alpha", "beta",
                     "state", "value", "reason", "error_estimate"});
    out << join_csv({dist, opt_num(d.k.has_value(), d.k.value_or(0), o),
                     opt_num(d.lambda.has_value(), d.lambda.value_or(0), o),
                     opt_num(d.shape.has_value(), d.shape.value_or(0), o),
                     opt_num(d.scale.has_value(), d.scale.value_or(0), o),
                     opt_num(d.c.has_value(), d.c.value_or(0), o),
                     std::string(kind_name(spec.kind)), opt_num(spec.uses_alpha(), spec.alpha, o),
                     opt_num(spec.uses_beta(), spec.beta, o), std::string(state_name(r.state)),
                     csv_value(r, o), std::string(reason_code(r.reason)),
                     r.is_finite() ? o.num(r.error_estimate) : std::string{}});
  }
  return exit_code_for(r);
}

inline int cmd_curve(const Output& o, const QuadConfig& config, const ProcessArgs& pa,
                     const std::vector<double>& times, const SpecArgs& spec_args,
                     std::ostream& out) {
  if (times.empty()) throw UsageError("--times must list at least one time");
  const Process process = pa.make();
  const TimeGrid grid(times);
  const EntropySpec spec = spec_args.spec();
  const auto rows = entropy_curve(process, grid, spec, config);
  std::optional<EntropyResult> limit;
  if (const auto* cir = std::get_if<CIRParams>(&process)) limit = cir_limit_entropy(*cir, spec);

  if (o.json) {
    Json j;
    Json inputs;
    pa.to_json(inputs, o);
    inputs["k"] = o.jnum(std::visit([](const auto& p) { return p.degrees_of_freedom(); }, process));
    add_spec_json(inputs, spec, o);
    j["inputs"] = inputs;
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json r = result_json(row.result, o);
      Json rec;
      rec["t"] = o.jnum(row.t);
      merge_into(rec, r);
      arr.push_back(rec);
    }
    j["rows"] = arr;
    if (limit) j["limit"] = result_json(*limit, o);
    out << j.dump() << '\n';
  } else {
    out << join_csv({"t", "state", "value"});
    for (const auto& row : rows) {
      out << join_csv({o.num(row.t), std::string(state_name(row.result.state)),
                       csv_value(row.result, o)});
    }
    if (limit) {
      out << join_csv({"limit", std::string(state_name(limit->state)), csv_value(*limit, o)});
    }
  }
  return kExitOk;
}

inline void write_study(const Output& o, const std::string& column, const Json& inputs,
                        const std::vector<StudyRow>& rows, std::ostream& out) {
  if (o.json) {
    Json j;
    j["inputs"] = inputs;
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json rec;
      rec[column] = o.jnum(row.parameter);
      merge_into(rec, result_json(row.result, o));
      rec["gap"] = o.jnum(row.gap);
      arr.push_back(rec);
    }
    j["rows"] = arr;
    out << j.dump() << '\n';
  } else {
    out << join_csv({column, "state", "value", "gap"});
    for (const auto& row : rows) {
      out << join_csv({o.num(row.parameter), std::string(state_name(row.result.state)),
                       csv_value(row.result, o),
                       std::isnan(row.gap) ? std::string{} : o.num(row.gap)});
    }
  }
}

inline int cmd_limits(const Output& o, const ProcessArgs& pa, const SpecArgs& spec_args,
                      bool kind_given, std::ostream& out) {
  const Process process = pa.make();
  std::vector<EntropySpec> specs;
  if (kind_given) {
    specs.push_back(spec_args.spec());
  } else {
    const double a = spec_args.alpha_opt->count() ? spec_args.alpha : 2.0;
    const double b = spec_args.beta_opt->count() ? spec_args.beta : 3.0;
    specs = {EntropySpec::shannon(),        EntropySpec::renyi(a),
             EntropySpec::gen_renyi(a, b),  EntropySpec::gen_renyi_diag(a),
             EntropySpec::tsallis(a),       EntropySpec::sharma_mittal(a, b)};
  }
  std::vector<EntropyResult> results;
  for (const auto& s : specs) {
    if (const auto* cir = std::get_if<CIRParams>(&process)) {
      results.push_back(cir_limit_entropy(*cir, s));
    } else {
      results.push_back(bessel_limit_entropy(s));
    }
  }
  if (o.json) {
    Json j;
    Json inputs;
    pa.to_json(inputs, o);
    j["inputs"] = inputs;
    Json arr = Json::array();
    for (std::size_t i = 0; i < specs.size(); ++i) {
      Json rec;
      add_spec_json(rec, specs[i], o);
      merge_into(rec, result_json(results[i], o));
      arr.push_back(rec);
    }
    j["rows"] = arr;
    out << j.dump() << '\n';
  } else {
    out << join_csv({"kind", "alpha", "beta", "state", "value"});
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const auto& s = specs[i];
      out << join_csv({std::string(kind_name(s.kind)), opt_num(s.uses_alpha(), s.alpha, o),
                       opt_num(s.uses_beta(), s.beta, o), std::string(state_name(results[i].state)),
                       csv_value(results[i], o)});
    }
  }
  return kExitOk;
}

struct ValidationReport {
  double quadrature;
  double monte_carlo;
  double std_error;
  double z;
};

/// Monte Carlo estimate of the Shannon entropy, -mean(log f(X_i)), from exact
/// draws, compared with the quadrature value.
inline ValidationReport monte_carlo_shannon(const NoncentralChiSq& law, std::size_t n,
                                            std::uint64_t seed, const QuadConfig& config) {
  const EntropyResult q = entropy(law, EntropySpec::shannon(), config);
  if (!q.is_finite()) throw UsageError("quadrature Shannon entropy failed: " + q.message);
  Sampler sampler(law, seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = -log_pdf_noncentral(law, sampler());
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(n - 1);
  const double se = std::sqrt(var / static_cast<double>(n));
  return {q.value, mean, se, (mean - q.value) / se};
}

inline int cmd_validate(const Output& o, const QuadConfig& config, double k, double lambda,
                        long long n, std::uint64_t seed, std::ostream& out) {
  if (n < 1000) throw UsageError("--n must be at least 1000");
  const NoncentralChiSq law(k, lambda);
  const auto rep = monte_carlo_shannon(law, static_cast<std::size_t>(n), seed, config);
  const bool pass = std::fabs(rep.z) <= 4.0;
  if (o.json) {
    Json j;
    j["k"] = o.jnum(k);
    j["lambda"] = o.jnum(lambda);
    j["n"] = n;
    j["seed"] = seed;
    j["quadrature"] = o.jnum(rep.quadrature);
    j["monte_carlo"] = o.jnum(rep.monte_carlo);
    j["std_error"] = o.jnum(rep.std_error);
    j["z"] = o.jnum(rep.z);
    j["pass"] = pass;
    out << j.dump() << '\n';
  } else {
    out << join_csv({"k", "lambda", "n", "seed", "quadrature", "monte_carlo", "std_error", "z",
                     "pass"});
    out << join_csv({o.num(k), o.num(lambda), std::to_string(n), std::to_string(seed),
                     o.num(rep.quadrature), o.num(rep.monte_carlo), o.num(rep.std_error),
                     o.num(rep.z), pass ? "true" : "false"});
  }
  return pass ? kExitOk : kExitValidation;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropies of chi-squared laws and of CIR / squared Bessel marginals",
               "ncentropy"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string format = "csv";
  int precision = 12;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
  std::uint64_t seed = 20240601;
  std::string config_path;
  app.add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--precision", precision, "significant digits")
      ->check(CLI::Range(6, 17))
      ->capture_default_str();
  auto* rel_opt = app.add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
  auto* abs_opt = app.add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--config", config_path, "key=value file overriding quadrature defaults");

  // entropy
  auto* ent = app.add_subcommand("entropy", "entropy of a single law");
  std::string dist = "chisq";
  ent->add_option("--dist", dist, "chisq|ncchisq|gamma|cir|bessel")
      ->check(CLI::IsMember({"chisq", "ncchisq", "gamma", "cir", "bessel"}))
      ->capture_default_str();
  std::map<std::string, std::pair<CLI::Option*, double>> law_params;
  for (const auto& [name, help] :
       std::vector<std::pair<std::string, std::string>>{
           {"k", "degrees of freedom"}, {"lambda", "noncentrality"},
           {"shape", "gamma shape"},    {"scale", "gamma scale"},
           {"C", "scale factor"},       {"a", "process drift level"},
           {"b", "process mean reversion"}, {"sigma", "process volatility"},
           {"r0", "CIR initial value"}, {"y0", "Bessel initial value"},
           {"t", "process time"}}) {
    auto& slot = law_params[name];
    slot.second = 0.0;
    slot.first = ent->add_option("--" + name, slot.second, help);
  }
  SpecArgs ent_spec;
  ent_spec.add_to(ent);
  bool direct = false;
  ent->add_flag("--direct", direct, "integrate a rescaled density directly");

  // curve
  auto* curve = app.add_subcommand("curve", "entropy of process marginals over time");
  ProcessArgs curve_proc;
  curve_proc.add_to(curve, true);
  std::vector<double> times;
  curve->add_option("--times", times, "comma-separated increasing times")
      ->delimiter(',')
      ->required();
  SpecArgs curve_spec;
  curve_spec.add_to(curve);

  // study
  auto* study = app.add_subcommand("study", "convergence studies");
  study->require_subcommand(1);
  auto* l2z = study->add_subcommand("lambda-to-zero", "noncentral entropy as lambda -> 0");
  double study_k = 2.0;
  std::vector<double> lambda_grid = {1.0, 0.1, 0.01};
  l2z->add_option("--k", study_k, "degrees of freedom")->capture_default_str();
  l2z->add_option("--grid", lambda_grid, "strictly decreasing lambdas")->delimiter(',');
  SpecArgs l2z_spec;
  l2z_spec.add_to(l2z);

  auto* b2z = study->add_subcommand("b-to-zero", "CIR entropy at fixed t as b -> 0");
  ProcessArgs b2z_proc;
  b2z_proc.add_to(b2z, false);
  double study_t = 1.0;
  std::vector<double> b_grid = {1.0, 0.1, 0.01, 0.001};
  b2z->add_option("--t", study_t, "time")->capture_default_str();
  b2z->add_option("--grid", b_grid, "strictly decreasing values of b")->delimiter(',');
  SpecArgs b2z_spec;
  b2z_spec.add_to(b2z);

  // limits
  auto* lim = app.add_subcommand("limits", "t -> infinity entropy limits");
  ProcessArgs lim_proc;
  lim_proc.add_to(lim, true);
  SpecArgs lim_spec;
  lim_spec.add_to(lim);

  // validate
  auto* val = app.add_subcommand("validate", "Monte Carlo cross-check of the Shannon entropy");
  double val_k = 4.0;
  double val_lambda = 4.0;
  long long val_n = 1'000'000;
  val->add_option("--k", val_k, "degrees of freedom")->capture_default_str();
  val->add_option("--lambda", val_lambda, "noncentrality")->capture_default_str();
  val->add_option("--n", val_n, "sample size (>= 1000)")->capture_default_str();

  std::vector<std::string> argv_storage = {"ncentropy"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Output o{format == "json", precision};
    QuadConfig config;
    if (!config_path.empty()) apply_config_file(config_path, config);
    if (rel_opt->count()) config.rel_tol = rel_tol;
    if (abs_opt->count()) config.abs_tol = abs_tol;
    config.validate();

    if (*ent) {
      return detail::cmd_entropy(o, config, dist, law_params, ent_spec, direct, out);
    }
    if (*curve) return detail::cmd_curve(o, config, curve_proc, times, curve_spec, out);
    if (*l2z) {
      const EntropySpec spec = l2z_spec.spec();
      const auto rows = lambda_convergence_study(study_k, spec, lambda_grid, config);
      Json inputs;
      inputs["study"] = "lambda-to-zero";
      inputs["k"] = o.jnum(study_k);
      add_spec_json(inputs, spec, o);
      detail::write_study(o, "lambda", inputs, rows, out);
      return kExitOk;
    }
    if (*b2z) {
      const EntropySpec spec = b2z_spec.spec();
      const auto rows = b_to_zero_study(b2z_proc.a, b2z_proc.sigma, b2z_proc.r0, study_t,
                                        b_grid, spec, config);
      Json inputs;
      inputs["study"] = "b-to-zero";
      inputs["a"] = o.jnum(b2z_proc.a);
      inputs["sigma"] = o.jnum(b2z_proc.sigma);
      inputs["r0"] = o.jnum(b2z_proc.r0);
      inputs["t"] = o.jnum(study_t);
      add_spec_json(inputs, spec, o);
      detail::write_study(o, "b", inputs, rows, out);
      return kExitOk;
    }
    if (*lim) {
      const bool kind_given = lim->get_option("--kind")->count() > 0;
      return detail::cmd_limits(o, lim_proc, lim_spec, kind_given, out);
    }
    if (*val) return detail::cmd_validate(o, config, val_k, val_lambda, val_n, seed, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace ncentropy::cli

#endif  // NCENTROPY_TOOLS_CLI_APP_HPP
