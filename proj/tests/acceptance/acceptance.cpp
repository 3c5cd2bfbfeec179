// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines. `acceptance N` runs criterion N only; with no
// argument every criterion runs. The exit status is nonzero if any selected
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/spec_grid.hpp"
#include "cli/app.hpp"
#include "ncentropy/ncentropy.hpp"

namespace nc = ncentropy;
using nc::EntropySpec;

namespace {

struct Report {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back("FAIL " + what);
    }
  }
  void note(const std::string& what) { details.push_back(what); }
};

std::string num(double v) { return nc::cli::format_number(v, 6); }

std::vector<EntropySpec> representative_specs() {
  return {EntropySpec::shannon(),        EntropySpec::renyi(2),
          EntropySpec::gen_renyi(0.5, 2), EntropySpec::gen_renyi_diag(2),
          EntropySpec::tsallis(2),       EntropySpec::sharma_mittal(2, 3)};
}

double finite_or_nan(const nc::EntropyResult& r) { return r.is_finite() ? r.value : NAN; }

// 1. Quadrature entropy of central laws equals the gamma closed form.
void closed_form_oracle(Report& rep) {
  const auto start = std::chrono::steady_clock::now();
  const auto specs = nctest::all_specs({0.5, 0.75, 1.5, 2.0, 3.0});
  int compared = 0;
  double worst = 0.0;
  for (double k : {1.5, 2.0, 3.0, 4.5, 8.0}) {
    for (const auto& s : specs) {
      if (!nc::existence_gate(k, s)) continue;
      const auto quad = nc::entropy(nc::NoncentralChiSq(k, 0.0), s);
      const auto exact = nc::gamma_entropy_closed_form(0.5 * k, 2.0, s);
      const double rel = std::fabs(finite_or_nan(quad) - finite_or_nan(exact)) /
                         std::fabs(finite_or_nan(exact));
      rep.check(rel <= 1e-8, "k=" + num(k) + " " + nctest::describe(s) + " rel=" + num(rel));
      if (rel > worst || std::isnan(rel)) worst = rel;
      ++compared;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.check(secs < 60.0, "runtime " + num(secs) + " s");
  rep.note(std::to_string(compared) + " comparisons, worst relative error " + num(worst) +
           ", " + num(secs) + " s");
}

// 2. Gaps to the central law shrink strictly as lambda = 10^-j decreases.
void lambda_convergence(Report& rep) {
  std::vector<double> grid;
  for (int j = 0; j <= 6; ++j) grid.push_back(std::pow(10.0, -j));
  for (double k : {2.0, 4.0}) {
    for (const auto& s : representative_specs()) {
      const auto rows = nc::lambda_convergence_study(k, s, grid);
      bool decreasing = true;
      for (std::size_t i = 1; i < rows.size(); ++i) {
        decreasing = decreasing && rows[i].gap < rows[i - 1].gap;
      }
      const double last = rows.back().gap;
      const std::string tag = "k=" + num(k) + " " + nctest::describe(s);
      rep.check(decreasing, tag + " gaps not strictly decreasing");
      rep.check(last < 1e-5, tag + " gap at 1e-6 = " + num(last));
      rep.note(tag + ": gap(1) = " + num(rows.front().gap) + ", gap(1e-6) = " + num(last));
    }
  }
}

// 3. k = 1.2, Renyi(4) is Undefined; direct quadrature cannot converge.
void existence_gate(Report& rep) {
  const nc::NoncentralChiSq law(1.2, 1.0);
  const auto r = nc::entropy(law, EntropySpec::renyi(4));
  rep.check(r.is_undefined() && r.reason == nc::UndefinedReason::existence_gate,
            "entropy was not Undefined(existence-gate)");
  const auto integrand = [&law](double x) {
    return std::exp(4.0 * nc::log_pdf_noncentral(law, x));
  };
  int failures = 0;
  std::vector<double> partials;
  for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
    nc::QuadConfig cfg;
    cfg.rel_tol = tol;
    try {
      partials.push_back(nc::integrate_halfline(integrand, cfg).value);
      rep.note("rel_tol " + num(tol) + ": converged to " + num(partials.back()));
    } catch (const nc::NonConvergence& e) {
      ++failures;
      partials.push_back(e.partial().value);
      rep.note("rel_tol " + num(tol) + ": NonConvergence (" + e.what() + "), partial " +
               num(partials.back()));
    }
  }
  bool growing = true;
  for (std::size_t i = 1; i < partials.size(); ++i) growing = growing && partials[i] > partials[i - 1];
  rep.check(failures == static_cast<int>(partials.size()) || growing,
            "direct quadrature converged to a stable value");
}

// 4. CIR entropy at t = 60/b matches the stationary closed form.
void cir_limit(Report& rep) {
  for (double b : {0.5, 1.0}) {
    const nc::CIRParams p(1, b, 1, 1);
    const double t = nc::cir_large_time(p);
    for (const auto& s : representative_specs()) {
      const double h = finite_or_nan(nc::entropy(nc::cir_marginal(p, t), s));
      const double lim = finite_or_nan(nc::cir_limit_entropy(p, s));
      const double gap = std::fabs(h - lim);
      rep.check(gap < 1e-6, "b=" + num(b) + " " + nctest::describe(s) + " gap " + num(gap));
      rep.note("b=" + num(b) + " " + nctest::describe(s) + ": H = " + num(h) + ", limit = " +
               num(lim) + ", gap = " + num(gap));
    }
  }
}

// 5. Bessel Shannon entropy grows like log(sigma^2 t / 4) + H_S(X_4).
void bessel_divergence(Report& rep) {
  const nc::BesselParams p(1, 1, 1);
  const double central = finite_or_nan(nc::entropy(nc::CentralChiSq(4), EntropySpec::shannon()));
  double previous = -INFINITY;
  for (double t : {1e2, 1e3, 1e4}) {
    const double h = finite_or_nan(nc::entropy(nc::bessel_marginal(p, t), EntropySpec::shannon()));
    const double shifted = h - std::log(t / 4.0);
    const double gap = std::fabs(shifted - central);
    rep.check(h > previous, "raw Shannon value not increasing at t=" + num(t));
    if (t >= 1e3) rep.check(gap < 1e-4, "t=" + num(t) + " shifted gap " + num(gap) + " >= 1e-4");
    rep.note("t=" + num(t) + ": H = " + num(h) + ", H - log(t/4) - H_S(X_4) = " + num(gap));
    previous = h;
  }
}

// 6. Bessel Tsallis / Sharma-Mittal dichotomy.
void bessel_dichotomy(Report& rep) {
  const nc::BesselParams p(1, 1, 1);
  const auto at = [&p](double t, const EntropySpec& s) {
    return finite_or_nan(nc::entropy(nc::bessel_marginal(p, t), s));
  };
  const double t2 = at(1e4, EntropySpec::tsallis(2));
  const double sm = at(1e4, EntropySpec::sharma_mittal(2, 3));
  const double small = at(1e2, EntropySpec::tsallis(0.5));
  const double large = at(1e4, EntropySpec::tsallis(0.5));
  rep.check(std::fabs(t2 - 1.0) < 1e-3, "Tsallis(2) at 1e4 = " + num(t2));
  rep.check(std::fabs(sm - 0.5) < 1e-3, "Sharma-Mittal(2,3) at 1e4 = " + num(sm));
  rep.check(large > 5.0 * small, "Tsallis(0.5) ratio " + num(large / small));
  rep.note("Tsallis(2)@1e4 = " + num(t2) + ", SM(2,3)@1e4 = " + num(sm) +
           ", Tsallis(0.5) 1e2 -> 1e4: " + num(small) + " -> " + num(large));
}

// 7. CIR entropy approaches the Bessel entropy as b -> 0.
void b_to_zero(Report& rep) {
  std::vector<double> grid;
  for (int j = 0; j <= 5; ++j) grid.push_back(std::pow(10.0, -j));
  for (const auto& s : {EntropySpec::shannon(), EntropySpec::tsallis(2)}) {
    const auto rows = nc::b_to_zero_study(1, 1, 1, 1, grid, s);
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      decreasing = decreasing && rows[i].gap < rows[i - 1].gap;
    }
    rep.check(decreasing, nctest::describe(s) + " gaps not strictly decreasing");
    rep.check(rows.back().gap < 1e-4, nctest::describe(s) + " gap " + num(rows.back().gap));
    rep.note(nctest::describe(s) + ": gap(b=1) = " + num(rows.front().gap) +
             ", gap(b=1e-5) = " + num(rows.back().gap));
  }
}

// 8. Direct quadrature of a rescaled law equals the scaling rule.
void scaling(Report& rep) {
  const auto specs = nctest::all_specs({0.5, 2.0, 3.0});
  double worst = 0.0;
  int compared = 0;
  for (double lambda : {0.0, 4.0}) {
    for (double c : {0.1, 1.0, 7.0}) {
      const nc::ScaledLaw law(nc::NoncentralChiSq(4, lambda), c);
      for (const auto& s : specs) {
        const double t = finite_or_nan(nc::entropy(law, s, {}, nc::ScaledMode::transform));
        const double d = finite_or_nan(nc::entropy(law, s, {}, nc::ScaledMode::direct));
        const double rel = std::fabs(d - t) / std::max(std::fabs(t), 1e-300);
        rep.check(rel <= 1e-8, "lambda=" + num(lambda) + " C=" + num(c) + " " +
                                   nctest::describe(s) + " rel " + num(rel));
        worst = std::max(worst, rel);
        ++compared;
      }
    }
  }
  rep.note(std::to_string(compared) + " comparisons, worst relative difference " + num(worst));
}

// 9. Bessel and density brackets hold at random points.
void bounds(Report& rep) {
  std::mt19937_64 rng(2024);
  int bessel_violations = 0;
  {
    std::uniform_real_distribution<double> unu(-0.49, 50.0), ux(0.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
      const double nu = unu(rng);
      double x = ux(rng);
      if (x == 0.0) x = 100.0;
      const nc::BesselOrder order(nu);
      const double v = nc::log_bessel_i(order, x);
      const auto b = nc::bessel_i_log_bounds(order, x);
      if (!(b.log_lower < v && v < b.log_upper)) ++bessel_violations;
    }
  }
  int pdf_violations = 0;
  {
    std::uniform_real_distribution<double> uk(1.0, 20.0), ul(0.0, 30.0), ux(0.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
      double k = uk(rng), lambda = ul(rng), x = ux(rng);
      if (k == 1.0) k = 20.0;
      if (lambda == 0.0) lambda = 30.0;
      if (x == 0.0) x = 100.0;
      const nc::NoncentralChiSq law(k, lambda);
      const double v = nc::log_pdf_noncentral(law, x);
      const auto b = nc::pdf_log_bounds(law, x);
      if (!(b.log_lower < v && v < b.log_upper)) ++pdf_violations;
    }
  }
  rep.check(bessel_violations == 0, std::to_string(bessel_violations) + " Bessel violations");
  rep.check(pdf_violations == 0, std::to_string(pdf_violations) + " density violations");
  rep.note("Bessel bracket: " + std::to_string(bessel_violations) +
           " violations in 10000; density bracket: " + std::to_string(pdf_violations) +
           " violations in 10000");
}

// 10. Monte Carlo Shannon check through the CLI, twice.
void monte_carlo(Report& rep) {
  const std::vector<std::string> args = {"--format", "json", "--seed", "20240601", "validate",
                                         "--k", "4", "--lambda", "4", "--n", "1000000"};
  std::ostringstream out1, err1, out2, err2;
  const int code1 = nc::cli::run(args, out1, err1);
  const int code2 = nc::cli::run(args, out2, err2);
  rep.check(code1 == 0, "exit code " + std::to_string(code1));
  rep.check(out1.str() == out2.str(), "reruns differ");
  const auto doc = nc::cli::Json::parse(out1.str(), nullptr, false);
  if (doc.is_discarded() || !doc.contains("z")) {
    rep.check(false, "validate output not parseable: " + err1.str());
    return;
  }
  const double z = doc["z"].get<double>();
  rep.check(std::fabs(z) <= 4.0, "|z| = " + num(std::fabs(z)));
  rep.note("quadrature " + num(doc["quadrature"].get<double>()) + ", Monte Carlo " +
           num(doc["monte_carlo"].get<double>()) + ", z = " + num(z) + ", exit " +
           std::to_string(code2));
}

// 11. Gamma and gamma-log integral grids.
void quadrature_oracles(Report& rep) {
  double worst_gamma = 0.0, worst_log = 0.0;
  for (double nu : {0.3, 1.0, 2.5, 7.0}) {
    for (double mu : {0.25, 1.0, 3.0}) {
      const auto g = [nu, mu](double x) { return std::exp((nu - 1.0) * std::log(x) - mu * x); };
      const double exact = std::exp(nc::log_gamma(nu) - nu * std::log(mu));
      const double rel_g = std::fabs(nc::integrate_halfline(g, {}).value / exact - 1.0);
      const double exact_log = nc::gamma_log_integral(nu, mu);
      const double got_log =
          nc::integrate_halfline([&g](double x) { return g(x) * std::log(x); }, {}).value;
      const double rel_l = std::fabs(got_log - exact_log) / std::fabs(exact_log);
      const std::string tag = "nu=" + num(nu) + " mu=" + num(mu);
      rep.check(rel_g <= 1e-9, tag + " gamma rel " + num(rel_g));
      rep.check(rel_l <= 1e-8, tag + " gamma-log rel " + num(rel_l));
      worst_gamma = std::max(worst_gamma, rel_g);
      worst_log = std::max(worst_log, rel_l);
    }
  }
  rep.note("worst relative error: gamma " + num(worst_gamma) + ", gamma-log " + num(worst_log));
}

struct Criterion {
  const char* title;
  std::function<void(Report&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"closed-form oracle suite", closed_form_oracle},
      {"lambda -> 0 convergence", lambda_convergence},
      {"existence gate", existence_gate},
      {"CIR large-time limit", cir_limit},
      {"squared Bessel Shannon divergence", bessel_divergence},
      {"squared Bessel Tsallis dichotomy", bessel_dichotomy},
      {"b -> 0 convergence", b_to_zero},
      {"scaling rules", scaling},
      {"Bessel and density bounds", bounds},
      {"Monte Carlo cross-check", monte_carlo},
      {"quadrature oracles", quadrature_oracles},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }

  bool all = true;
  for (int n : selected) {
    Report rep;
    try {
      criteria[n - 1].run(rep);
    } catch (const std::exception& e) {
      rep.check(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d %s: %s\n", n, rep.pass ? "PASS" : "FAIL", criteria[n - 1].title);
    for (const auto& d : rep.details) std::printf("    %s\n", d.c_str());
    all = all && rep.pass;
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
