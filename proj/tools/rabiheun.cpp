// Command-line front end: single-point quasienergy queries, full-period
// traces, triangle sweeps against the ODE oracle, quasienergy branch fans
// with gap location, and limit-identity checks. CSV goes to --out (or
// stdout), JSON summaries to stdout (and --json when given).
//
// Exit codes: 0 success, 1 identity-check failure, 2 invalid arguments,
// 3 convergence failure.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rabiheun/evolution.hpp"
#include "rabiheun/floquet.hpp"
#include "rabiheun/heun.hpp"
#include "rabiheun/limits.hpp"
#include "rabiheun/ode.hpp"
#include "rabiheun/sweep.hpp"

using nlohmann::json;
using namespace rabiheun;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_identity = 1;
constexpr int exit_bad_args = 2;
constexpr int exit_no_convergence = 3;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_cplx(cplx z) {
    std::string s = fmt(z.real());
    s += (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
    return s;
}

// Equivalent scaled drive frequency on the omega0 + omega + F = 1 section.
double scaled_omega(const PhysicalParams& p) { return 1.0 / (1.0 + p.f + p.nu); }

// Series evaluation degrades below the omega floor; refuse unless --force.
bool guard_params(const PhysicalParams& p, bool force) {
    if (p.f < 0.0 || p.nu < 0.0) {
        std::cerr << "error: f and nu must be nonnegative (the spectrum depends on |f|, |nu| "
                     "only; pass the magnitudes)\n";
        return false;
    }
    if (scaled_omega(p) <= omega_floor && !force) {
        std::cerr << "error: f + nu too large (scaled omega <= 3/128); series evaluation "
                     "degrades here. Use --force to evaluate anyway.\n";
        return false;
    }
    return true;
}

// Writes to the path when given, else to stdout.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(std::cout);
        return exit_ok;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return exit_bad_args;
    }
    write(out);
    return out.good() ? exit_ok : exit_bad_args;
}

void emit_json(const json& j, const std::string& json_path) {
    std::cout << j.dump(2) << "\n";
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        out << j.dump(2) << "\n";
    }
}

int cmd_quasi(double f, double nu, int terms, bool force, bool as_json,
              const std::string& json_path) {
    const PhysicalParams p{f, nu};
    if (!guard_params(p, force)) return exit_bad_args;

    const TruncationControl ctrl{terms, 1e-14, 5};
    const EtaHalf eta = eta_at_half(p, ctrl);
    const QuarterData q = quarter_data(p, ctrl);

    double r = std::numeric_limits<double>::quiet_NaN();
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double eps = std::numeric_limits<double>::quiet_NaN();
    bool alpha_degenerate = false;
    bool broken = false;
    try {
        const MonodromyData m = r_alpha(q);
        r = m.r;
        alpha = m.alpha;
        alpha_degenerate = m.alpha_degenerate;
        eps = quasienergy(m).epsilon;
    } catch (const std::runtime_error& e) {
        std::cerr << "warning: " << e.what() << "\n";
        broken = true;
    }

    if (as_json || !json_path.empty()) {
        json j{{"f", f},
               {"nu", nu},
               {"terms", terms},
               {"eps", eps},
               {"r", r},
               {"alpha", alpha},
               {"alpha_degenerate", alpha_degenerate},
               {"eta_pp", {{"re", eta.pp.value.real()}, {"im", eta.pp.value.imag()}}},
               {"eta_mp", {{"re", eta.mp.value.real()}, {"im", eta.mp.value.imag()}}},
               {"terms_used", q.terms_used},
               {"converged", q.converged}};
        emit_json(j, json_path);
    } else {
        std::cout << "f        = " << fmt(f) << "\n"
                  << "nu       = " << fmt(nu) << "\n"
                  << "eps      = " << fmt(eps) << "\n"
                  << "r        = " << fmt(r) << "\n"
                  << "alpha    = " << fmt(alpha)
                  << (alpha_degenerate ? "  (degenerate: |r| = 1)" : "") << "\n"
                  << "eta_pp   = " << fmt_cplx(eta.pp.value) << "\n"
                  << "eta_mp   = " << fmt_cplx(eta.mp.value) << "\n"
                  << "terms    = " << q.terms_used << " of " << terms << "\n"
                  << "converged= " << (q.converged ? "true" : "false") << "\n";
    }
    if (!q.converged || broken) {
        std::cerr << "warning: series did not meet the convergence rule; values are suspect\n";
        return exit_no_convergence;
    }
    return exit_ok;
}

int cmd_trace(double f, double nu, int samples, int terms, bool force, const std::string& out) {
    const PhysicalParams p{f, nu};
    if (!guard_params(p, force)) return exit_bad_args;
    if (samples < 2) {
        std::cerr << "error: --samples must be >= 2\n";
        return exit_bad_args;
    }

    const TruncationControl ctrl{terms, 1e-14, 5};
    const MonodromyData m = r_alpha(quarter_data(p, ctrl));
    const auto points = trace(p, m, samples, ctrl);

    bool all_converged = true;
    const int rc = with_output(out, [&](std::ostream& os) {
        os << "tau,u1,v1,u2,v2,norm_error\n";
        for (const auto& tp : points) {
            all_converged = all_converged && tp.converged;
            os << fmt(tp.tau) << ',' << fmt(tp.psi.u1()) << ',' << fmt(tp.psi.v1()) << ','
               << fmt(tp.psi.u2()) << ',' << fmt(tp.psi.v2()) << ','
               << fmt(std::abs(tp.psi.norm_sq() - 1.0)) << "\n";
        }
    });
    if (rc != exit_ok) return rc;
    if (!all_converged) {
        std::cerr << "warning: some samples did not converge\n";
        return exit_no_convergence;
    }
    return exit_ok;
}

int cmd_sweep(int depth, double omega_min, int terms, bool with_oracle, int oracle_steps,
              unsigned threads, const std::string& out, const std::string& json_path) {
    if (depth < 3) {
        std::cerr << "error: --depth must be >= 3\n";
        return exit_bad_args;
    }
    const SimplexGrid grid = SimplexGrid::make(depth, omega_min);
    SweepOptions opt;
    opt.terms = terms;
    opt.with_oracle = with_oracle;
    opt.oracle_steps_per_period = oracle_steps;
    opt.threads = threads;
    const auto records = run_sweep(grid, opt);
    const SweepSummary sum = summarize(grid, records, opt);

    const int rc = with_output(out, [&](std::ostream& os) {
        os << "omega0,omega,F,f,nu,eps_series,eps_oracle,deviation,terms_used,converged\n";
        for (const auto& rec : records) {
            const PhysicalParams p = rec.point.reduced();
            os << fmt(rec.point.omega0) << ',' << fmt(rec.point.omega) << ','
               << fmt(rec.point.F_amp) << ',' << fmt(p.f) << ',' << fmt(p.nu) << ','
               << fmt(rec.eps_series) << ',' << fmt(rec.eps_oracle) << ','
               << fmt(rec.deviation) << ',' << rec.terms_used << ','
               << (rec.converged ? 1 : 0) << "\n";
        }
    });
    if (rc != exit_ok) return rc;

    emit_json(json{{"max_deviation", sum.max_deviation},
                   {"points_total", sum.points_total},
                   {"points_kept", sum.points_kept},
                   {"terms", sum.terms}},
              json_path);
    return exit_ok;
}

int cmd_branches(double F_amp, double omega0, double omega_lo, double omega_hi, int samples,
                 int n_min, int n_max, int terms, unsigned threads, bool force,
                 const std::string& out, const std::string& json_path) {
    if (!(omega_lo > 0.0 && omega_hi > omega_lo)) {
        std::cerr << "error: need 0 < --omega-lo < --omega-hi\n";
        return exit_bad_args;
    }
    if (omega_lo <= omega_floor && !force) {
        std::cerr << "error: --omega-lo must exceed 3/128 (accuracy guard); "
                     "use --force to override\n";
        return exit_bad_args;
    }

    BranchScanOptions opt;
    opt.omega_lo = omega_lo;
    opt.omega_hi = omega_hi;
    opt.samples = samples;
    opt.n_min = n_min;
    opt.n_max = n_max;
    opt.ctrl = TruncationControl{terms, 1e-14, 5};
    opt.threads = threads;
    const auto points = branch_scan(F_amp, omega0, opt);

    bool all_converged = true;
    const int rc = with_output(out, [&](std::ostream& os) {
        os << "omega,n,sign,energy\n";
        for (const auto& bp : points) {
            all_converged = all_converged && bp.converged;
            os << fmt(bp.omega) << ',' << bp.n << ',' << (bp.sign > 0 ? "+" : "-") << ','
               << fmt(bp.energy) << "\n";
        }
    });
    if (rc != exit_ok) return rc;

    const GapScanResult gap =
        locate_min_gap(F_amp, omega0, omega_lo, omega_hi, std::max(64, samples), opt.ctrl);
    emit_json(json{{"omega_at_min_gap", gap.omega_at_min}, {"min_gap", gap.min_gap}},
              json_path);
    if (!all_converged) {
        std::cerr << "warning: some omega samples did not converge\n";
        return exit_no_convergence;
    }
    return exit_ok;
}

int cmd_limits(double f_max, int samples, const std::string& json_path) {
    if (f_max < 0.0 || f_max > limits_f_max) {
        std::cerr << "error: --f-max must lie in [0, 30]\n";
        return exit_bad_args;
    }
    if (samples < 1) {
        std::cerr << "error: --samples must be >= 1\n";
        return exit_bad_args;
    }

    const TruncationControl ctrl = TruncationControl::trace_default();
    double worst_integral = 0.0;  // quadrature / series vs closed form
    double worst_eta = 0.0;       // nu=0 series vs closed form
    double worst_slope = 0.0;     // small-nu quasienergy slope vs J0(f)/2, relative

    std::printf("%-10s %-14s %-14s %-14s\n", "f", "integral_err", "eta_mp_err", "slope_rel_err");
    for (int i = 0; i < samples; ++i) {
        const double f =
            samples == 1 ? f_max : f_max * static_cast<double>(i) / (samples - 1);
        const LimitCheckReport rep = check_limit_identities(f, ctrl);
        const double integral_err =
            std::max(std::abs(rep.integral_quadrature - rep.integral_closed),
                     rep.max_abs_error);
        const double eta_err = std::abs(rep.eta_mp_series - rep.eta_mp_closed);

        constexpr double nu_probe = 1e-4;
        const double slope =
            quasienergy(r_alpha(quarter_data({f, nu_probe}, ctrl))).epsilon / nu_probe;
        const double target = 0.5 * bessel_j0(f);
        const double slope_err = std::abs(slope - target) /
                                 std::max(std::abs(target), 1e-3);

        worst_integral = std::max(worst_integral, integral_err);
        worst_eta = std::max(worst_eta, eta_err);
        worst_slope = std::max(worst_slope, slope_err);
        std::printf("%-10.4f %-14.3e %-14.3e %-14.3e\n", f, integral_err, eta_err, slope_err);
    }

    const bool pass =
        worst_integral < 1e-9 && worst_eta < 1e-8 && worst_slope < 1e-4;
    emit_json(json{{"max_integral_identity_error", worst_integral},
                   {"max_eta_mp_error", worst_eta},
                   {"max_slope_relative_error", worst_slope},
                   {"pass", pass}},
              json_path);
    return pass ? exit_ok : exit_identity;
}

int cmd_oracle(double f, double nu, int steps, bool as_json, const std::string& json_path) {
    const PhysicalParams p{f, nu};
    if (p.f < 0.0 || p.nu < 0.0) {
        std::cerr << "error: f and nu must be nonnegative\n";
        return exit_bad_args;
    }
    const IntegratorConfig cfg{steps};
    const Mat2 mono = numeric_monodromy(p, cfg);
    const MonodromyData m = numeric_r_alpha(p, cfg);
    const double eps = numeric_quasienergy(p, cfg).epsilon;

    if (as_json || !json_path.empty()) {
        json j{{"f", f},
               {"nu", nu},
               {"steps_per_period", steps},
               {"monodromy",
                {{"m11", {{"re", mono(0, 0).real()}, {"im", mono(0, 0).imag()}}},
                 {"m12", {{"re", mono(0, 1).real()}, {"im", mono(0, 1).imag()}}},
                 {"m21", {{"re", mono(1, 0).real()}, {"im", mono(1, 0).imag()}}},
                 {"m22", {{"re", mono(1, 1).real()}, {"im", mono(1, 1).imag()}}}}},
               {"r", m.r},
               {"alpha", m.alpha},
               {"eps", eps}};
        emit_json(j, json_path);
    } else {
        std::cout << "U(2pi,0) = [" << fmt_cplx(mono(0, 0)) << ", " << fmt_cplx(mono(0, 1))
                  << "; " << fmt_cplx(mono(1, 0)) << ", " << fmt_cplx(mono(1, 1)) << "]\n"
                  << "r        = " << fmt(m.r) << "\n"
                  << "alpha    = " << fmt(m.alpha) << "\n"
                  << "eps      = " << fmt(eps) << "\n";
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasienergies, monodromy and full-period evolution of the linearly "
                 "driven two-level system via confluent Heun series, cross-checked "
                 "against a direct integrator"};
    app.require_subcommand(1);

    // quasi
    double f = 0.0, nu = 0.0;
    double q_omega0 = 0.0, q_omega = 0.0, q_F = 0.0;
    int terms = 100;
    bool force = false, as_json = false;
    std::string json_path;
    auto* quasi = app.add_subcommand("quasi", "Quasienergy and auxiliary quantities at (f, nu)");
    auto* opt_f = quasi->add_option("--f", f, "Drive amplitude over drive frequency");
    auto* opt_nu = quasi->add_option("--nu", nu, "Larmor over drive frequency");
    auto* opt_w0 = quasi->add_option("--omega0", q_omega0, "Larmor frequency (with --omega, --F)");
    auto* opt_w = quasi->add_option("--omega", q_omega, "Drive frequency (with --omega0, --F)");
    auto* opt_F = quasi->add_option("--F", q_F, "Drive amplitude (with --omega0, --omega)");
    quasi->add_option("--terms", terms, "Series term cap")->check(CLI::PositiveNumber);
    quasi->add_flag("--force", force, "Evaluate past the omega > 3/128 guard");
    quasi->add_flag("--json", as_json, "JSON output");
    quasi->add_option("--json-out", json_path, "Also write JSON to this path");

    // trace
    double tf = 0.0, tnu = 0.0;
    int tsamples = 512, tterms = 1000;
    bool tforce = false;
    std::string tout;
    auto* tr = app.add_subcommand("trace", "Full-period state samples as CSV");
    tr->add_option("--f", tf)->required();
    tr->add_option("--nu", tnu)->required();
    tr->add_option("--samples", tsamples, "Grid points on [0, 2pi]");
    tr->add_option("--terms", tterms, "Series term cap")->check(CLI::PositiveNumber);
    tr->add_flag("--force", tforce, "Evaluate past the omega > 3/128 guard");
    tr->add_option("--out", tout, "CSV path (stdout if omitted)");

    // sweep
    int depth = 43;
    double omega_min = omega_floor;
    int sterms = 100, osteps = 20000;
    unsigned threads = 0;
    bool no_oracle = false;
    std::string sout, sjson;
    auto* sw = app.add_subcommand("sweep", "Triangle sweep: series vs oracle quasienergy");
    sw->add_option("--depth", depth, "Barycentric subdivision depth");
    sw->add_option("--omega-min", omega_min, "Scaled-frequency exclusion threshold");
    sw->add_option("--terms", sterms, "Series term cap")->check(CLI::PositiveNumber);
    sw->add_flag("--no-oracle", no_oracle, "Skip the ODE oracle column");
    sw->add_option("--oracle-steps", osteps, "Integrator steps per period");
    sw->add_option("--threads", threads, "Worker threads (0 = auto)");
    sw->add_option("--out", sout, "CSV path (stdout if omitted)");
    sw->add_option("--json-out", sjson, "Also write the JSON summary to this path");

    // branches
    double bF = 0.5, bomega0 = 1.0, olo = 0.0, ohi = 0.0;
    int bsamples = 201, bnmin = -2, bnmax = 2, bterms = 100;
    unsigned bthreads = 0;
    bool bforce = false;
    std::string bout, bjson;
    auto* br = app.add_subcommand("branches", "Derived quasienergy branches over an omega range");
    br->add_option("--F", bF, "Drive amplitude")->required();
    br->add_option("--omega0", bomega0, "Larmor frequency")->required();
    br->add_option("--omega-lo", olo, "Lower end of the omega range")->required();
    br->add_option("--omega-hi", ohi, "Upper end of the omega range")->required();
    br->add_option("--samples", bsamples, "Omega grid points");
    br->add_option("--n-min", bnmin, "Smallest branch index");
    br->add_option("--n-max", bnmax, "Largest branch index");
    br->add_option("--terms", bterms, "Series term cap")->check(CLI::PositiveNumber);
    br->add_option("--threads", bthreads, "Worker threads (0 = auto)");
    br->add_flag("--force", bforce, "Scan past the omega > 3/128 guard");
    br->add_option("--out", bout, "CSV path (stdout if omitted)");
    br->add_option("--json-out", bjson, "Also write the gap JSON to this path");

    // limits
    double f_max = 5.0;
    int lsamples = 21;
    std::string ljson;
    auto* lm = app.add_subcommand("limits", "Small-Larmor-limit identity checks");
    lm->add_option("--f-max", f_max, "Largest f in the check grid");
    lm->add_option("--samples", lsamples, "Grid size on [0, f_max]");
    lm->add_option("--json-out", ljson, "Also write the JSON report to this path");

    // oracle
    double of = 0.0, onu = 0.0;
    int orsteps = 20000;
    bool ojson = false;
    std::string ojson_path;
    auto* orc = app.add_subcommand("oracle", "Raw numeric monodromy from the direct integrator");
    orc->add_option("--f", of)->required();
    orc->add_option("--nu", onu)->required();
    orc->add_option("--steps", orsteps, "Integrator steps per period");
    orc->add_flag("--json", ojson, "JSON output");
    orc->add_option("--json-out", ojson_path, "Also write JSON to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message/help
        return e.get_exit_code() == 0 ? exit_ok : exit_bad_args;
    }

    try {
        if (quasi->parsed()) {
            const bool reduced_given = opt_f->count() > 0 && opt_nu->count() > 0;
            const bool dimensional_given =
                opt_w0->count() > 0 && opt_w->count() > 0 && opt_F->count() > 0;
            if (reduced_given == dimensional_given) {
                std::cerr << "error: give either --f and --nu, or the full triple "
                             "--omega0 --omega --F\n";
                return exit_bad_args;
            }
            if (dimensional_given) {
                const PhysicalParams p = DimensionalParams{q_omega0, q_omega, q_F}.reduced();
                f = p.f;
                nu = p.nu;
            }
            return cmd_quasi(f, nu, terms, force, as_json, json_path);
        }
        if (tr->parsed()) return cmd_trace(tf, tnu, tsamples, tterms, tforce, tout);
        if (sw->parsed())
            return cmd_sweep(depth, omega_min, sterms, !no_oracle, osteps, threads, sout, sjson);
        if (br->parsed())
            return cmd_branches(bF, bomega0, olo, ohi, bsamples, bnmin, bnmax, bterms, bthreads,
                                bforce, bout, bjson);
        if (lm->parsed()) return cmd_limits(f_max, lsamples, ljson);
        if (orc->parsed()) return cmd_oracle(of, onu, orsteps, ojson, ojson_path);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_args;
    } catch (const std::runtime_error& e) {
        // broken-series signals (e.g. |r| far beyond 1)
        std::cerr << "error: " << e.what() << "\n";
        return exit_no_convergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_args;
    }
    return exit_bad_args;
}
