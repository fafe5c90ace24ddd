#include "umbrella/chaos.hpp"

#include <algorithm>
#include <cmath>

#include "umbrella/parallel.hpp"

namespace umbrella {

namespace {

constexpr double kSeedNudge = 1e-9;

double normalized_distance(const BilliardTable& table, const PhasePoint& a,
                           const PhasePoint& b) {
    const double ds = wrap_signed((a.s - b.s) / table.total_length, 1.0);
    const double dt = (a.theta - b.theta) / kPi;
    return std::hypot(ds, dt);
}

PhasePoint displaced_along_s(const BilliardTable& table, const PhasePoint& x,
                             double dx_norm) {
    double s = x.s + dx_norm * table.total_length;
    s = std::fmod(s, table.total_length);
    if (s < 0.0) s += table.total_length;
    return {s, x.theta};
}

/// Grid seed at cell center (i, j). The fixed 1e-9 offset keeps seeds off
/// corners and breaks exact commensurability between the cell grid and the
/// sliding map on tables whose perimeter is a rational multiple of the cell
/// size; otherwise whole rows of seeds land exactly on corner preimages.
PhasePoint grid_seed(const BilliardTable& table, int k, int i, int j) {
    double s = (i + 0.5) * table.total_length / k + kSeedNudge;
    if (s >= table.total_length) s -= table.total_length;
    const double theta = (j + 0.5) * kPi / k;
    return {s, theta};
}

}  // namespace

LiResult lyapunov_indicator_detail(const BilliardTable& table, const PhasePoint& x,
                                   const LyapunovConfig& cfg) {
    if (cfg.dx <= 0.0 || cfg.n < 1) throw InvalidSpec("invalid Lyapunov config");
    PhasePoint a = x;
    PhasePoint b = displaced_along_s(table, x, cfg.dx);

    LiResult res;
    for (int i = 0; i < cfg.n; ++i) {
        const StepResult ra = map_step(table, a);
        const StepResult rb = map_step(table, b);
        if (ra.status != StepStatus::Ok || rb.status != StepStatus::Ok) break;
        a = ra.event.next;
        b = rb.event.next;
        ++res.steps;
    }
    if (res.steps == 0)
        throw DegenerateSeed("both orbits must survive at least one step");
    res.complete = res.steps == cfg.n;
    res.value = std::log(normalized_distance(table, a, b) / cfg.dx) / res.steps;
    return res;
}

double lyapunov_indicator(const BilliardTable& table, const PhasePoint& x,
                          const LyapunovConfig& cfg) {
    return lyapunov_indicator_detail(table, x, cfg).value;
}

ScaledLyapunov scaled_lyapunov_detail(const BilliardTable& table,
                                      const LyapunovConfig& cfg, int threads) {
    if (cfg.k < 2) throw InvalidSpec("grid side must be at least 2");
    const long total = static_cast<long>(cfg.k) * cfg.k;
    std::vector<double> li(static_cast<std::size_t>(total));
    std::vector<std::uint8_t> ok(static_cast<std::size_t>(total), 0);

    parallel_for(total, threads, [&](long idx) {
        const int i = static_cast<int>(idx % cfg.k);
        const int j = static_cast<int>(idx / cfg.k);
        const PhasePoint seed = grid_seed(table, cfg.k, i, j);
        try {
            const LiResult r = lyapunov_indicator_detail(table, seed, cfg);
            if (r.complete) {
                li[static_cast<std::size_t>(idx)] = r.value;
                ok[static_cast<std::size_t>(idx)] = 1;
            }
        } catch (const DegenerateSeed&) {
        }
    });

    ScaledLyapunov out;
    out.total = static_cast<int>(total);
    double sum = 0.0;
    int used = 0;
    for (long idx = 0; idx < total; ++idx) {
        if (ok[static_cast<std::size_t>(idx)]) {
            sum += li[static_cast<std::size_t>(idx)];
            ++used;
        }
    }
    out.skipped = out.total - used;
    out.lambda_bar = used > 0 ? sum / used : 0.0;
    return out;
}

double scaled_lyapunov(const BilliardTable& table, const LyapunovConfig& cfg) {
    return scaled_lyapunov_detail(table, cfg).lambda_bar;
}

namespace {

SeedVerdict judge_seed(const BilliardTable& table, const PhasePoint& seed,
                       const IslandOptions& opts) {
    PhasePoint cur = seed;
    Vec2 w{std::sqrt(0.5), std::sqrt(0.5)};
    double log_sum = 0.0;
    long steps = 0;
    long visited = 0;
    const int cg = opts.coverage_grid;
    std::vector<bool> seen(static_cast<std::size_t>(cg) * cg, false);

    for (long i = 0; i < opts.n_long; ++i) {
        const StepWithTangent st = map_step_with_tangent(table, cur);
        if (st.step.status != StepStatus::Ok) break;
        cur = st.step.event.next;
        w = st.derivative * w;
        const double g = w.norm();
        log_sum += std::log(g);
        w = w / g;
        ++steps;

        const int ci = std::min(cg - 1, static_cast<int>(cur.s / table.total_length * cg));
        const int cj = std::min(cg - 1, static_cast<int>(cur.theta / kPi * cg));
        const std::size_t cell = static_cast<std::size_t>(cj) * cg + ci;
        if (!seen[cell]) {
            seen[cell] = true;
            ++visited;
        }
    }
    if (steps < opts.n_long / 2) return SeedVerdict::Skipped;
    const double li = log_sum / steps;
    const double coverage =
        static_cast<double>(visited) / (static_cast<double>(cg) * cg);
    return (li < opts.li_threshold && coverage < opts.coverage_threshold)
               ? SeedVerdict::Regular
               : SeedVerdict::Chaotic;
}

}  // namespace

IslandReport island_detect(const BilliardTable& table, const IslandOptions& opts,
                           int threads) {
    if (opts.grid < 2 || opts.n_long < 1000)
        throw InvalidSpec("island detection needs grid >= 2 and n_long >= 1000");
    const int k = opts.grid;
    const long total = static_cast<long>(k) * k;

    IslandReport report;
    report.grid = k;
    report.cells.assign(static_cast<std::size_t>(total), SeedVerdict::Skipped);

    parallel_for(total, threads, [&](long idx) {
        const int i = static_cast<int>(idx % k);
        const int j = static_cast<int>(idx / k);
        const PhasePoint seed = grid_seed(table, k, i, j);
        report.cells[static_cast<std::size_t>(idx)] = judge_seed(table, seed, opts);
    });

    double weight_regular = 0.0, weight_all = 0.0;
    for (long idx = 0; idx < total; ++idx) {
        const int j = static_cast<int>(idx / k);
        const double w = std::sin((j + 0.5) * kPi / k);
        weight_all += w;
        switch (report.cells[static_cast<std::size_t>(idx)]) {
            case SeedVerdict::Regular: weight_regular += w; break;
            case SeedVerdict::Skipped: ++report.skipped; break;
            default: break;
        }
    }
    report.regular_fraction = weight_regular / weight_all;
    report.islands_found = report.regular_fraction > opts.detection_fraction;
    return report;
}

BoundaryEstimate ergodic_boundary_scan(double theta2, double B1, double theta1_lo,
                                       double theta1_hi, double step,
                                       Family umbrella_family,
                                       const IslandOptions& opts, int threads) {
    if (!(step > 0.0) || !(theta1_hi > theta1_lo))
        throw InvalidSpec("scan range and step must be positive");

    auto verdict = [&](double theta1) {
        TableSpec spec = table_of_theta(ThetaPair{theta1, theta2});
        if (B1 > 0.0) {
            if (spec.family == Family::Moon) {
                if (umbrella_family != Family::UmbrellaMoon1 &&
                    umbrella_family != Family::UmbrellaMoon2)
                    throw InvalidSpec("moon pairs deform into umbrella-moon families");
                spec.family = umbrella_family;
            } else if (spec.family == Family::Lemon) {
                spec.family = Family::UmbrellaLemon;
            } else {
                throw InvalidSpec("no umbrella deformation for this pair");
            }
            spec.B1 = B1;
        }
        return island_detect(build_table(spec), opts, threads).islands_found;
    };

    double lo = theta1_lo, hi = theta1_hi;
    const bool v_lo = verdict(lo);
    const bool v_hi = verdict(hi);
    if (v_lo == v_hi)
        throw NoTransition("island verdict does not change across the range");
    while (hi - lo > step) {
        const double mid = 0.5 * (lo + hi);
        (verdict(mid) == v_lo ? lo : hi) = mid;
    }
    return {theta2, lo, hi, B1};
}

std::vector<SweepPoint> lyapunov_curve(const TableSpec& spec_template,
                                       const std::vector<double>& b_values,
                                       const LyapunovConfig& cfg, int threads) {
    std::vector<SweepPoint> out(b_values.size());
    // Parallelism lives inside each scaled_lyapunov call; the sweep loop is
    // serial so the output order and content never depend on thread count.
    for (std::size_t i = 0; i < b_values.size(); ++i) {
        SweepPoint& p = out[i];
        p.B = b_values[i];
        p.B1 = spec_template.B1;
        TableSpec spec = spec_template;
        spec.B = b_values[i];
        try {
            const BilliardTable table = build_table(spec);
            const ScaledLyapunov sl = scaled_lyapunov_detail(table, cfg, threads);
            p.lambda_bar = sl.lambda_bar;
            p.skipped_seeds = sl.skipped;
            p.valid = true;
        } catch (const InvalidSpec&) {
            p.valid = false;
        }
    }
    return out;
}

std::vector<double> expand_range(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw InvalidSpec("bad range");
    std::vector<double> values;
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) values.push_back(lo + i * step);
    return values;
}

}  // namespace umbrella
