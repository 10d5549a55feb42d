// End-to-end checks of the command-line tool: subcommands, exit codes,
// CSV/JSON shapes, determinism. Takes the binary path as argv[1].
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

int checks_failed = 0;
std::string cli;

#define EXPECT(cond, msg)                                                       \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __LINE__ << ": " << msg << "\n";          \
            ++checks_failed;                                                    \
        }                                                                       \
    } while (0)

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_file = "cli_stdout.tmp";
    const std::string cmd = cli + " " + args + " > " + out_file + " 2> cli_stderr.tmp";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (status == -1) ? -1 : WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

void quasi_checks() {
    RunResult r = run("quasi --f 0.5 --nu 1.0 --terms 100 --json");
    EXPECT(r.exit_code == 0, "quasi reference point should exit 0, got " << r.exit_code);
    const json j = json::parse(r.out, nullptr, false);
    EXPECT(!j.is_discarded(), "quasi --json output should parse");
    if (!j.is_discarded()) {
        EXPECT(std::abs(j["r"].get<double>() - (-0.924176)) < 1e-5, "quasi r digits");
        EXPECT(std::abs(j["alpha"].get<double>() - (-1.75978)) < 1e-5, "quasi alpha digits");
        EXPECT(j["converged"].get<bool>(), "quasi should converge");
    }

    r = run("quasi --f 0 --nu 0 --json");
    EXPECT(r.exit_code == 0, "trivial quasi exit code");
    const json j0 = json::parse(r.out, nullptr, false);
    if (!j0.is_discarded()) {
        EXPECT(j0["eps"].get<double>() == 0.0, "eps(0,0) = 0");
        EXPECT(j0["r"].get<double>() == 0.0, "r(0,0) = 0");
    }

    r = run("quasi --f 0 --nu 0.5 --json");
    const json jh = json::parse(r.out, nullptr, false);
    if (!jh.is_discarded())
        EXPECT(std::abs(jh["eps"].get<double>() - 0.25) < 1e-10, "free-precession eps = 1/4");

    // the dimensional triple reduces to the same point: f = F/omega, nu = omega0/omega
    r = run("quasi --omega0 2 --omega 2 --F 1 --json");
    EXPECT(r.exit_code == 0, "dimensional quasi exit code");
    const json jd = json::parse(r.out, nullptr, false);
    if (!jd.is_discarded()) {
        EXPECT(std::abs(jd["r"].get<double>() - (-0.924176)) < 1e-5,
               "dimensional input reduces to the reference point");
    }

    EXPECT(run("quasi --f -1 --nu 0").exit_code == 2, "negative f rejected with exit 2");
    EXPECT(run("quasi --nu 1").exit_code == 2, "missing --f rejected with exit 2");
    EXPECT(run("quasi --f 1 --nu 1 --omega0 1 --omega 1 --F 1").exit_code == 2,
           "mixing reduced and dimensional input rejected");
    EXPECT(run("quasi --f 30 --nu 30").exit_code == 2, "guarded region rejected with exit 2");
    EXPECT(run("quasi --f 30 --nu 30 --force").exit_code == 3,
           "forced guarded evaluation reports non-convergence with exit 3");
}

void trace_checks() {
    RunResult r = run("trace --f 0 --nu 1 --samples 9 --out cli_trace.csv");
    EXPECT(r.exit_code == 0, "trace exit code");
    const std::string csv = slurp("cli_trace.csv");
    EXPECT(count_lines(csv) == 10, "trace CSV has header + 9 rows");
    EXPECT(csv.rfind("tau,u1,v1,u2,v2,norm_error\n", 0) == 0, "trace CSV header");

    // determinism: identical bytes on a rerun
    run("trace --f 0 --nu 1 --samples 9 --out cli_trace2.csv");
    EXPECT(slurp("cli_trace2.csv") == csv, "trace CSV is byte-identical across runs");

    // u1 column follows cos(tau/2) for the free case
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string tau_s, u1_s;
        std::getline(cells, tau_s, ',');
        std::getline(cells, u1_s, ',');
        EXPECT(std::abs(std::stod(u1_s) - std::cos(0.5 * std::stod(tau_s))) < 1e-10,
               "free-case u1 column");
    }

    EXPECT(run("trace --f 0 --nu 1 --samples 1").exit_code == 2, "samples < 2 rejected");
    EXPECT(run("trace --f 0 --nu 1 --out /nonexistent_dir_zz/t.csv").exit_code == 2,
           "unwritable output path rejected");

    // reference-point trace: psi2 purely imaginary at the pi row (odd sample
    // count puts a row exactly at tau = pi), psi1 real at the final row
    r = run("trace --f 0.5 --nu 1 --samples 513 --terms 1000 --out cli_trace_ref.csv");
    EXPECT(r.exit_code == 0, "reference trace exit code");
    {
        std::istringstream lines(slurp("cli_trace_ref.csv"));
        std::string line, mid_row, last_row;
        std::getline(lines, line);  // header
        for (int i = 0; std::getline(lines, line); ++i) {
            if (i == 256) mid_row = line;
            last_row = line;
        }
        auto cell = [](const std::string& row, int idx) {
            std::istringstream cs(row);
            std::string c;
            for (int i = 0; i <= idx; ++i) std::getline(cs, c, ',');
            return std::stod(c);
        };
        EXPECT(std::abs(cell(mid_row, 3)) < 1e-6, "u2 vanishes at the tau = pi row");
        EXPECT(std::abs(cell(last_row, 2)) < 1e-6, "v1 vanishes at the tau = 2pi row");
        EXPECT(std::abs(cell(last_row, 5)) < 1e-8, "norm error stays tiny at the final row");
    }
}

void sweep_checks() {
    RunResult r = run("sweep --depth 8 --no-oracle --out cli_sweep.csv");
    EXPECT(r.exit_code == 0, "sweep exit code");
    const json j = json::parse(r.out, nullptr, false);
    EXPECT(!j.is_discarded(), "sweep summary JSON parses");
    if (!j.is_discarded()) {
        EXPECT(j.contains("max_deviation") && j.contains("points_total") &&
                   j.contains("points_kept") && j.contains("terms"),
               "sweep summary keys");
        EXPECT(j["points_total"].get<int>() == 21, "depth-8 interior count");
        EXPECT(j["points_kept"].get<int>() == 21, "depth-8 kept count");
        EXPECT(j["terms"].get<int>() == 100, "sweep terms key");
    }
    const std::string csv = slurp("cli_sweep.csv");
    EXPECT(count_lines(csv) == 22, "sweep CSV rows");
    EXPECT(csv.rfind("omega0,omega,F,f,nu,eps_series,eps_oracle,deviation,terms_used,converged\n",
                     0) == 0,
           "sweep CSV header");

    r = run("sweep --depth 8 --oracle-steps 2000 --out cli_sweep_oracle.csv");
    EXPECT(r.exit_code == 0, "oracle sweep exit code");
    const json jo = json::parse(r.out, nullptr, false);
    if (!jo.is_discarded())
        EXPECT(jo["max_deviation"].get<double>() < 1.3e-4, "small-grid sweep deviation bound");

    EXPECT(run("sweep --depth 2").exit_code == 2, "tiny depth rejected");
}

void branches_checks() {
    RunResult r = run(
        "branches --F 0.5 --omega0 1 --omega-lo 0.34 --omega-hi 0.37 --samples 31 "
        "--n-min -1 --n-max 1 --out cli_branches.csv");
    EXPECT(r.exit_code == 0, "branches exit code");
    const json j = json::parse(r.out, nullptr, false);
    EXPECT(!j.is_discarded(), "branches gap JSON parses");
    if (!j.is_discarded()) {
        EXPECT(std::abs(j["omega_at_min_gap"].get<double>() - 0.355776) < 1e-3,
               "gap located near 0.355776");
        EXPECT(j["min_gap"].get<double>() > 0.0, "gap is positive");
    }
    const std::string csv = slurp("cli_branches.csv");
    EXPECT(count_lines(csv) == 1 + 31 * 6, "branches CSV rows");
    EXPECT(csv.rfind("omega,n,sign,energy\n", 0) == 0, "branches CSV header");

    EXPECT(run("branches --F 0.5 --omega0 1 --omega-lo 0.01 --omega-hi 0.37").exit_code == 2,
           "omega-lo below the guard rejected");
}

void limits_checks() {
    RunResult r = run("limits --f-max 5 --samples 11");
    EXPECT(r.exit_code == 0, "limits exit code");
    EXPECT(r.out.find("\"pass\": true") != std::string::npos, "limits identities pass");
    EXPECT(run("limits --f-max 40").exit_code == 2, "limits f-max guard");
    // At the edge of the guarded domain the ascending series loses ~11 digits
    // to cancellation, so the 1e-9 identity tolerance must fail with exit 1.
    EXPECT(run("limits --f-max 30 --samples 4").exit_code == 1,
           "degraded identities at f=30 exit 1");
}

void oracle_checks() {
    RunResult r = run("oracle --f 0.5 --nu 1 --json");
    EXPECT(r.exit_code == 0, "oracle exit code");
    const json j = json::parse(r.out, nullptr, false);
    EXPECT(!j.is_discarded(), "oracle JSON parses");
    if (!j.is_discarded()) {
        EXPECT(std::abs(j["r"].get<double>() - (-0.924176)) < 1e-5, "oracle r digits");
        EXPECT(std::abs(j["monodromy"]["m11"]["re"].get<double>() - (-0.708202)) < 1e-5,
               "oracle monodromy diagonal");
    }
}

void arg_checks() {
    EXPECT(run("").exit_code == 2, "missing subcommand rejected");
    EXPECT(run("unknown-subcommand").exit_code == 2, "unknown subcommand rejected");
    EXPECT(run("quasi --f 0.5 --nu 1 --bogus-flag").exit_code == 2, "unknown flag rejected");
    EXPECT(run("--help").exit_code == 0, "--help exits 0");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_checks <path-to-cli>\n";
        return 2;
    }
    cli = argv[1];

    quasi_checks();
    trace_checks();
    sweep_checks();
    branches_checks();
    limits_checks();
    oracle_checks();
    arg_checks();

    if (checks_failed == 0) {
        std::printf("cli_checks: all checks passed\n");
        return 0;
    }
    std::printf("cli_checks: %d check(s) failed\n", checks_failed);
    return 1;
}
