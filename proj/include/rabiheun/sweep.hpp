// Parameter-sweep machinery behind the CLI: the barycentric grid on the
// scaled-variable triangle omega0 + omega + F = 1, series-vs-oracle
// quasienergy records, the derived branch fan over an omega range, and the
// avoided-crossing gap locator.
#pragma once

#include <vector>

#include "rabiheun/floquet.hpp"
#include "rabiheun/types.hpp"

namespace rabiheun {

// Interior lattice points (i, j, k)/depth, i+j+k = depth, i,j,k >= 1, read
// as (omega0, omega, F); points with omega <= omega_min are filtered out.
// A depth-d lattice has (d-1)(d-2)/2 interior points before filtering.
struct SimplexGrid {
    int depth = 0;
    double omega_min = omega_floor;
    int total_interior = 0;
    std::vector<DimensionalParams> points;

    static SimplexGrid make(int depth, double omega_min = omega_floor);
};

struct SweepRecord {
    DimensionalParams point;
    double eps_series = 0.0;
    double eps_oracle = 0.0;
    double deviation = 0.0;  // |eps_series - eps_oracle|
    int terms_used = 0;
    bool converged = true;
};

struct SweepOptions {
    int terms = 100;
    bool with_oracle = true;
    int oracle_steps_per_period = 20000;
    unsigned threads = 0;  // 0 = hardware concurrency
};

// One record per grid point, in grid order regardless of thread count.
// Without the oracle, eps_oracle and deviation are NaN.
std::vector<SweepRecord> run_sweep(const SimplexGrid& grid, const SweepOptions& opt);

struct SweepSummary {
    double max_deviation = 0.0;
    int points_total = 0;  // interior points before the omega filter
    int points_kept = 0;
    int terms = 0;
};

SweepSummary summarize(const SimplexGrid& grid, const std::vector<SweepRecord>& records,
                       const SweepOptions& opt);

struct BranchPoint {
    double omega = 0.0;
    int n = 0;
    int sign = +1;
    double energy = 0.0;
    bool converged = true;
};

struct BranchScanOptions {
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    int samples = 0;
    int n_min = 0;
    int n_max = 0;
    TruncationControl ctrl = TruncationControl::quasienergy_default();
    unsigned threads = 0;
};

// Branch fan E = sign * omega * eps(omega) + n * omega on a uniform omega
// grid, for fixed drive amplitude F_amp and Larmor frequency omega0.
std::vector<BranchPoint> branch_scan(double F_amp, double omega0, const BranchScanOptions& opt);

struct GapScanResult {
    double omega_at_min = 0.0;
    double min_gap = 0.0;
};

// Minimum inter-branch gap. Adjacent branches of the fan are separated by
// 2|E| and omega - 2|E| alternately, so the gap function is
//   g(omega) = omega * min(2|eps|, 1 - 2|eps|);
// a coarse scan brackets the smallest local minimum, then golden-section
// refines it.
GapScanResult locate_min_gap(double F_amp, double omega0, double omega_lo, double omega_hi,
                             int coarse_samples, const TruncationControl& ctrl);

}  // namespace rabiheun
