#pragma once

// Command-line front end. `run` parses argv and dispatches; each cmd_* writes
// to the given stream and returns the process exit code:
//   0 success, 1 check or certification failure, 2 usage error.

#include <dcc/design_io.hpp>
#include <dcc/error.hpp>
#include <dcc/optimal_state.hpp>
#include <dcc/povm.hpp>
#include <dcc/simulator.hpp>
#include <dcc/su2.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace dcc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

enum class Format { csv, json };

/// Ten significant digits, '.' decimal separator regardless of locale.
inline std::string fmt10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    std::string s(buf);
    for (auto& ch : s)
        if (ch == ',') ch = '.';
    return s;
}

inline int cmd_table(int n_max, Format format, std::ostream& out) {
    if (n_max < 1) return exit_usage;
    if (format == Format::csv) {
        out << "n,chi1_max,mean_error,per_axis_error,fidelity\n";
        for (int n = 1; n <= n_max; ++n)
            out << n << ',' << fmt10(chi1_max_closed(n)) << ',' << fmt10(min_error_closed(n)) << ','
                << fmt10(per_axis_error(n)) << ',' << fmt10(mean_fidelity(n)) << '\n';
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (int n = 1; n <= n_max; ++n)
            rows.push_back({{"n", n},
                            {"chi1_max", chi1_max_closed(n)},
                            {"mean_error", min_error_closed(n)},
                            {"per_axis_error", per_axis_error(n)},
                            {"fidelity", mean_fidelity(n)}});
        out << rows.dump(2) << '\n';
    }
    return exit_ok;
}

inline int cmd_coeffs(int n_spins, std::ostream& out) {
    if (n_spins < 1) return exit_usage;
    const CoefficientVector c = optimal_coeffs(n_spins);
    out << "two_j,a_j\n";
    for (int k = 0; k < c.spectrum.size(); ++k)
        out << c.spectrum[k].twoJ << ',' << fmt10(c.a(k)) << '\n';
    return exit_ok;
}

inline int cmd_design(int n_spins, const std::string& out_path, std::ostream& out,
                      std::ostream& err) {
    if (n_spins < 1) return exit_usage;
    try {
        const FinitePovm povm = build_product_design(n_spins);
        const DesignReport report = verify_design(povm, povm.j_max_twice);
        save_design(out_path, povm, report.max_residual);
        out << "points=" << povm.size() << " j_max_twice=" << povm.j_max_twice
            << " residual=" << fmt10(report.max_residual) << '\n';
    } catch (const Error& e) {
        err << "design: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_ok;
}

inline nlohmann::json summary_to_json(const SimulationSummary& s) {
    nlohmann::json j;
    j["n_spins"] = s.n_spins;
    j["trials"] = s.trials;
    j["seed"] = s.seed;
    j["design_size"] = s.design_size;
    j["mean_h"] = s.mean_h;
    j["stderr_h"] = s.stderr_h ? nlohmann::json(*s.stderr_h) : nlohmann::json(nullptr);
    j["analytic_h"] = s.analytic_h;
    j["z_score"] = s.z_score ? nlohmann::json(*s.z_score) : nlohmann::json(nullptr);
    return j;
}

struct SimulateConfig {
    int n_spins = 1;
    long long trials = 1;
    std::uint64_t seed = 0;
    std::optional<std::string> design_path;
    Format format = Format::json;
    int threads = 1;
};

inline int cmd_simulate(const SimulateConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.n_spins < 1 || cfg.trials < 1 || cfg.threads < 1) return exit_usage;
    SimulationSummary s;
    try {
        FinitePovm povm;
        if (cfg.design_path) {
            povm = load_certified_design(*cfg.design_path);
            if (povm.n_spins != cfg.n_spins) {
                err << "simulate: design is for N = " << povm.n_spins << ", requested N = "
                    << cfg.n_spins << '\n';
                return exit_failure;
            }
        } else {
            povm = build_product_design(cfg.n_spins);
        }
        s = run_trials(optimal_coeffs(cfg.n_spins), povm, cfg.trials, cfg.seed, cfg.threads);
    } catch (const Error& e) {
        err << "simulate: " << e.what() << '\n';
        return exit_failure;
    }

    if (cfg.format == Format::json) {
        out << summary_to_json(s).dump(2) << '\n';
    } else {
        auto opt = [](const std::optional<double>& v) { return v ? fmt10(*v) : std::string(); };
        out << "n_spins,trials,seed,design_size,mean_h,stderr_h,analytic_h,z_score\n"
            << s.n_spins << ',' << s.trials << ',' << s.seed << ',' << s.design_size << ','
            << fmt10(s.mean_h) << ',' << opt(s.stderr_h) << ',' << fmt10(s.analytic_h) << ','
            << opt(s.z_score) << '\n';
    }
    if (s.z_score && std::abs(*s.z_score) > 3.0) return exit_failure;
    return exit_ok;
}

namespace detail {

struct CheckLog {
    std::ostream& out;
    bool ok = true;

    // Records value <= tolerance.
    void bound(const std::string& name, double value, double tolerance) {
        const bool pass = value <= tolerance;
        ok = ok && pass;
        out << (pass ? "PASS " : "FAIL ") << name << ": " << fmt10(value) << " <= "
            << fmt10(tolerance) << '\n';
    }

    void flag(const std::string& name, bool pass) {
        ok = ok && pass;
        out << (pass ? "PASS " : "FAIL ") << name << '\n';
    }
};

}  // namespace detail

/// Runs every check applicable to N and reports one line per check.
inline int cmd_verify(int n_spins, std::ostream& out) {
    if (n_spins < 1) return exit_usage;
    detail::CheckLog log{out};
    std::mt19937_64 rng(0x5eed0000u + static_cast<unsigned>(n_spins));
    const double closed_mu = 2.0 * std::cos(two_pi / (n_spins + 3));

    const TridiagonalSpec m = build_M(n_spins);
    log.bound("top eigenvalue of M vs 2cos(2pi/(N+3))", std::abs(lambda_max_numeric(m) - closed_mu),
              1e-10);
    log.bound("characteristic polynomial at -cos(2pi/(N+3))",
              std::abs(charpoly_eval(m, -0.5 * closed_mu)), 1e-10);

    const CoefficientVector a = optimal_coeffs(n_spins);
    log.bound("eigenvector residual |M a - mu a|",
              (m.apply(a.a) - closed_mu * a.a).cwiseAbs().maxCoeff(), 1e-10);
    log.bound("coefficient normalization |sum a^2 - 1|", std::abs(a.norm_squared() - 1.0), 1e-12);
    log.flag("coefficients strictly positive", (a.a.array() > 0.0).all());

    log.bound("quadrature <chi_1> vs 1 + 2cos(2pi/(N+3))",
              std::abs(chi1_quadrature(a) - chi1_max_closed(n_spins)), 1e-8);
    log.bound("quadrature <chi_1> vs 1 + a^T M a", std::abs(chi1_quadrature(a) - chi1_bound(a)),
              1e-8);
    log.bound("6 - 2<chi_1> vs <h>_min",
              std::abs(6.0 - 2.0 * chi1_max_closed(n_spins) - min_error_closed(n_spins)), 1e-12);
    log.bound("1 - <h>/8 vs fidelity",
              std::abs(1.0 - min_error_closed(n_spins) / 8.0 - mean_fidelity(n_spins)), 1e-12);
    log.bound("<h>/12 vs per-axis error",
              std::abs(min_error_closed(n_spins) / 12.0 - per_axis_error(n_spins)), 1e-12);

    double char_defect = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto [lhs, rhs] = character_sq_identity(two_pi * i / 999.0);
        char_defect = std::max(char_defect, std::abs(lhs - rhs));
    }
    log.bound("chi_{1/2}^2 = 1 + chi_1 on 1000 grid points", char_defect, 1e-12);

    FinitePovm povm;
    try {
        povm = build_product_design(n_spins);
    } catch (const CertificationError& e) {
        log.flag(std::string("design construction: ") + e.what(), false);
        return exit_failure;
    }
    log.bound("design orthogonality residual (" + std::to_string(povm.size()) + " points)",
              verify_design(povm, povm.j_max_twice).max_residual, design_tolerance);
    log.bound("design weights sum to 1", std::abs(povm.weight_sum() - 1.0), 1e-12);

    double norm_defect = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto p = outcome_probabilities(a, povm, haar_sample(rng));
        double s = 0.0;
        for (double x : p) s += x;
        norm_defect = std::max(norm_defect, std::abs(s - 1.0));
    }
    log.bound("outcome probabilities sum to 1 (20 Haar samples)", norm_defect, 1e-9);

    if (n_spins <= max_explicit_spins)
        log.bound("completeness ||sum O_r - I||_max", completeness_check(n_spins, povm), 1e-9);
    if (n_spins <= 3) {
        std::uniform_int_distribution<std::size_t> pick(0, povm.size() - 1);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Rotation g = haar_sample(rng);
            const std::size_t r = pick(rng);
            const double fast = outcome_probabilities(a, povm, g)[r];
            worst = std::max(worst, std::abs(fast - explicit_probability(a, povm, r, g)));
        }
        log.bound("character path vs explicit probabilities (50 pairs)", worst, 1e-10);
    }
    if (n_spins >= 3 && n_spins <= 4)
        log.bound("multiplicity-free overlap", multiplicity_check(n_spins, rng), 1e-10);

    out << (log.ok ? "all checks passed\n" : "some checks FAILED\n");
    return log.ok ? exit_ok : exit_failure;
}

/// Parses argv and runs the selected subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement-assisted reference-frame alignment: optimal states, covariant "
                 "measurements and protocol simulation"};
    app.require_subcommand(1);

    int n_max = 1;
    std::string table_format = "csv";
    auto* table = app.add_subcommand("table", "closed-form optima for N = 1..n_max");
    table->add_option("--n-max", n_max, "largest number of spins")->required();
    table->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json"}));

    int n_spins = 1;
    auto* coeffs = app.add_subcommand("coeffs", "optimal amplitudes a_j");
    coeffs->add_option("N", n_spins, "number of spins")->required();

    std::string out_path;
    auto* design = app.add_subcommand("design", "build and certify a finite covariant design");
    design->add_option("N", n_spins, "number of spins")->required();
    design->add_option("--out", out_path, "output JSON file")->required();

    SimulateConfig sim;
    std::string sim_format = "json";
    std::string design_path;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the alignment protocol");
    simulate->add_option("N", sim.n_spins, "number of spins")->required();
    simulate->add_option("--trials", sim.trials, "number of trials")->required();
    simulate->add_option("--seed", sim.seed, "64-bit seed")->required();
    simulate->add_option("--design", design_path, "design file from `design`");
    simulate->add_option("--format", sim_format)->check(CLI::IsMember({"csv", "json"}));
    simulate->add_option("--threads", sim.threads, "worker threads (result is independent)");

    auto* verify = app.add_subcommand("verify", "run every consistency check for N");
    verify->add_option("N", n_spins, "number of spins")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return exit_usage;
    }

    int code = exit_ok;
    auto usage_if = [&](int c) {
        if (c == exit_usage) err << "invalid arguments\n";
        return c;
    };
    if (*table) {
        code = usage_if(cmd_table(n_max, table_format == "csv" ? Format::csv : Format::json, out));
    } else if (*coeffs) {
        code = usage_if(cmd_coeffs(n_spins, out));
    } else if (*design) {
        code = usage_if(cmd_design(n_spins, out_path, out, err));
    } else if (*simulate) {
        if (!design_path.empty()) sim.design_path = design_path;
        sim.format = sim_format == "csv" ? Format::csv : Format::json;
        code = usage_if(cmd_simulate(sim, out, err));
    } else if (*verify) {
        code = usage_if(cmd_verify(n_spins, out));
    }
    return code;
}

}  // namespace dcc::cli
