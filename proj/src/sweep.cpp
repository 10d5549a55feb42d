#include "rabiheun/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "rabiheun/ode.hpp"

namespace rabiheun {

namespace {

unsigned pick_threads(unsigned requested, std::size_t jobs) {
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

// Index-claiming parallel for; results land at their own index, so output
// order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t jobs, unsigned threads, Fn&& body) {
    if (jobs == 0) return;
    const unsigned n = pick_threads(threads, jobs);
    if (n <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

double eps_at(double F_amp, double omega0, double omega, const TruncationControl& ctrl,
              int* terms_used, bool* converged) {
    const DimensionalParams d{omega0, omega, F_amp};
    const QuarterData q = quarter_data(d.reduced(), ctrl);
    if (terms_used) *terms_used = q.terms_used;
    if (converged) *converged = q.converged;
    return quasienergy(r_alpha(q)).epsilon;
}

}  // namespace

SimplexGrid SimplexGrid::make(int depth, double omega_min) {
    if (depth < 3)
        throw std::domain_error("SimplexGrid: depth must be >= 3 to have interior points");
    SimplexGrid g;
    g.depth = depth;
    g.omega_min = omega_min;
    const double d = static_cast<double>(depth);
    for (int i = 1; i <= depth - 2; ++i) {
        for (int j = 1; j <= depth - 1 - i; ++j) {
            const int k = depth - i - j;
            ++g.total_interior;
            const double omega = j / d;
            if (omega > omega_min)
                g.points.push_back({i / d, omega, k / d});
        }
    }
    return g;
}

std::vector<SweepRecord> run_sweep(const SimplexGrid& grid, const SweepOptions& opt) {
    std::vector<SweepRecord> records(grid.points.size());
    const TruncationControl ctrl{opt.terms, 1e-14, 5};
    const IntegratorConfig cfg{opt.oracle_steps_per_period};
    parallel_for(grid.points.size(), opt.threads, [&](std::size_t i) {
        const DimensionalParams& d = grid.points[i];
        SweepRecord& rec = records[i];
        rec.point = d;
        rec.eps_series = eps_at(d.F_amp, d.omega0, d.omega, ctrl, &rec.terms_used, &rec.converged);
        if (opt.with_oracle) {
            rec.eps_oracle = numeric_quasienergy(d.reduced(), cfg).epsilon;
            rec.deviation = std::abs(rec.eps_series - rec.eps_oracle);
        } else {
            rec.eps_oracle = std::numeric_limits<double>::quiet_NaN();
            rec.deviation = std::numeric_limits<double>::quiet_NaN();
        }
    });
    return records;
}

SweepSummary summarize(const SimplexGrid& grid, const std::vector<SweepRecord>& records,
                       const SweepOptions& opt) {
    SweepSummary s;
    s.points_total = grid.total_interior;
    s.points_kept = static_cast<int>(records.size());
    s.terms = opt.terms;
    for (const auto& rec : records)
        if (std::isfinite(rec.deviation)) s.max_deviation = std::max(s.max_deviation, rec.deviation);
    return s;
}

std::vector<BranchPoint> branch_scan(double F_amp, double omega0, const BranchScanOptions& opt) {
    if (opt.samples < 2)
        throw std::domain_error("branch_scan: need at least 2 omega samples");
    if (!(opt.omega_lo > 0.0 && opt.omega_hi > opt.omega_lo))
        throw std::domain_error("branch_scan: need 0 < omega_lo < omega_hi");
    if (opt.n_min > opt.n_max)
        throw std::domain_error("branch_scan: empty n range");

    const int per_omega = 2 * (opt.n_max - opt.n_min + 1);
    std::vector<BranchPoint> out(static_cast<std::size_t>(opt.samples) * per_omega);
    parallel_for(static_cast<std::size_t>(opt.samples), opt.threads, [&](std::size_t s) {
        const double frac = static_cast<double>(s) / static_cast<double>(opt.samples - 1);
        const double omega = opt.omega_lo + frac * (opt.omega_hi - opt.omega_lo);
        const BranchFan fan =
            branch_energies({omega0, omega, F_amp}, opt.n_min, opt.n_max, opt.ctrl);
        std::size_t base = s * static_cast<std::size_t>(per_omega);
        for (const BranchEnergy& be : fan.energies)
            out[base++] = {omega, be.n, be.sign, be.energy, fan.converged};
    });
    return out;
}

GapScanResult locate_min_gap(double F_amp, double omega0, double omega_lo, double omega_hi,
                             int coarse_samples, const TruncationControl& ctrl) {
    if (coarse_samples < 3)
        throw std::domain_error("locate_min_gap: need at least 3 coarse samples");

    const auto gap = [&](double omega) {
        const double e = std::abs(eps_at(F_amp, omega0, omega, ctrl, nullptr, nullptr));
        return omega * std::min(2.0 * e, 1.0 - 2.0 * e);
    };

    // Coarse scan for the global minimum, then bracket one sample either side.
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0;
    const double step = (omega_hi - omega_lo) / (coarse_samples - 1);
    for (int i = 0; i < coarse_samples; ++i) {
        const double g = gap(omega_lo + i * step);
        if (g < best) {
            best = g;
            best_i = i;
        }
    }
    double lo = omega_lo + std::max(0, best_i - 1) * step;
    double hi = omega_lo + std::min(coarse_samples - 1, best_i + 1) * step;

    constexpr double golden = 0.6180339887498949;
    double c = hi - golden * (hi - lo);
    double d = lo + golden * (hi - lo);
    double gc = gap(c), gd = gap(d);
    while (hi - lo > 1e-10) {
        if (gc < gd) {
            hi = d;
            d = c;
            gd = gc;
            c = hi - golden * (hi - lo);
            gc = gap(c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + golden * (hi - lo);
            gd = gap(d);
        }
    }
    const double omega_at = 0.5 * (lo + hi);
    return {omega_at, gap(omega_at)};
}

}  // namespace rabiheun
