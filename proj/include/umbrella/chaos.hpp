#pragma once

#include <cstdint>
#include <vector>

#include "umbrella/dynamics.hpp"
#include "umbrella/theta.hpp"

namespace umbrella {

/// Finite-time Lyapunov indicator configuration; defaults match the
/// reference experiment (separation 1e-6, n = 10, 40 x 40 grid).
struct LyapunovConfig {
    double dx = 1e-6;  // initial phase separation, normalized coordinates
    int n = 10;        // iterations
    int k = 40;        // grid side for the scaled exponent
};

struct LiResult {
    double value = 0.0;
    int steps = 0;       // completed iterations
    bool complete = false;
};

/// Two-orbit finite-time Lyapunov indicator (1/n) ln(|eta_n| / |eta_0|).
/// The companion starts displaced by dx along +s in normalized coordinates;
/// distances are Euclidean in (s/|boundary|, theta/pi). Orbits that die
/// early report the indicator over the completed steps.
LiResult lyapunov_indicator_detail(const BilliardTable& table, const PhasePoint& x,
                                   const LyapunovConfig& cfg);
double lyapunov_indicator(const BilliardTable& table, const PhasePoint& x,
                          const LyapunovConfig& cfg);

struct ScaledLyapunov {
    double lambda_bar = 0.0;
    int skipped = 0;  // seeds excluded for early termination
    int total = 0;
};

/// Mean indicator over a k x k uniform grid of (s, theta) cell centers.
/// Seeds on singularities are nudged by 1e-9 in s; seeds whose orbits
/// terminate are excluded from the mean but counted. Deterministic for a
/// fixed config regardless of the thread count.
ScaledLyapunov scaled_lyapunov_detail(const BilliardTable& table,
                                      const LyapunovConfig& cfg, int threads = 0);
double scaled_lyapunov(const BilliardTable& table, const LyapunovConfig& cfg);

enum class SeedVerdict : std::uint8_t { Regular = 0, Chaotic = 1, Skipped = 2 };

struct IslandOptions {
    int grid = 32;                     // seed grid side
    long n_long = 5000;                // iterations per seed
    double li_threshold = 0.05;        // long-run tangent-map indicator
    int coverage_grid = 100;           // phase-space occupancy histogram side
    double coverage_threshold = 0.1;   // visited-cell fraction
    double detection_fraction = 0.005; // regular measure needed to report islands
};

struct IslandReport {
    double regular_fraction = 0.0;  // sin(theta)-weighted share of regular seeds
    bool islands_found = false;
    std::vector<SeedVerdict> cells;  // row-major k x k, s fastest
    int grid = 0;
    int skipped = 0;
};

/// Flags a seed regular when its long-run averaged tangent-map growth rate
/// stays under li_threshold and its orbit visits less than the coverage
/// threshold of phase-space cells. Islands are reported when the weighted
/// regular fraction exceeds the detection fraction.
IslandReport island_detect(const BilliardTable& table, const IslandOptions& opts = {},
                           int threads = 0);

struct BoundaryEstimate {
    double theta2 = 0.0;
    double theta1_low = 0.0;
    double theta1_high = 0.0;
    double B1 = 0.0;
};

/// Bisection of the island verdict over theta1 at fixed theta2, down to the
/// requested step width. For B1 > 0 the two-arc table taken from the theta
/// pair is deformed into the given umbrella family before detection.
/// Throws NoTransition when both range ends agree.
BoundaryEstimate ergodic_boundary_scan(double theta2, double B1, double theta1_lo,
                                       double theta1_hi, double step,
                                       Family umbrella_family = Family::UmbrellaMoon1,
                                       const IslandOptions& opts = {}, int threads = 0);

struct SweepPoint {
    double B = 0.0;
    double B1 = 0.0;
    double lambda_bar = 0.0;
    int skipped_seeds = 0;
    bool valid = false;  // false when the table could not be built
};

/// Scaled exponent sampled over a list of B values for a spec template.
/// Invalid parameter points are kept in the output with valid = false.
std::vector<SweepPoint> lyapunov_curve(const TableSpec& spec_template,
                                       const std::vector<double>& b_values,
                                       const LyapunovConfig& cfg, int threads = 0);

/// Helper for range expansion lo:hi:step (inclusive of hi within rounding).
std::vector<double> expand_range(double lo, double hi, double step);

}  // namespace umbrella
