#pragma once

#include <vector>

#include "umbrella/dynamics.hpp"

namespace umbrella {

enum class StabilityClass { Hyperbolic, Parabolic, Elliptic };

const char* stability_name(StabilityClass c);

/// A refined periodic orbit with the trace of the chained tangent map
/// over one period and its stability class.
struct PeriodicOrbit {
    std::vector<PhasePoint> cycle;
    int period = 0;
    double trace = 0.0;
    StabilityClass classification = StabilityClass::Parabolic;
    double residual = 0.0;  // phase distance between T^k(x) and x
};

/// Newton refinement of a k-periodic seed down to residual 1e-9, with step
/// halving when the residual does not decrease. Throws NoConvergence or
/// SingularOrbit.
PhasePoint refine_periodic(const BilliardTable& table, const PhasePoint& seed, int k);

/// Refines x, chains the tangent matrices along the cycle and classifies by
/// |trace| against 2 with a parabolic band of half-width tol.
PeriodicOrbit classify(const BilliardTable& table, const PhasePoint& x, int k,
                       double tol = 1e-8);

/// The axial 2-periodic point of a lemon table: the perpendicular bounce
/// along the line through both circle centers, anchored on the unit arc.
PhasePoint axial_two_periodic(const TableSpec& spec);

/// The pair of 2-periodic orbits of an umbrella-lemon table that replace the
/// axial orbit of the base lemon, one per duplicated lobe, ordered by s.
std::vector<PeriodicOrbit> split_pair(const BilliardTable& table);

/// A periodic orbit of a moon-family table with m sliding collisions on the
/// unit arc between two perpendicular reversals on the dispersing boundary,
/// so the reversal chords extend through a framing-disk center. Period is
/// 2m + 2. Found by bisection over the sliding angle, then refined.
PeriodicOrbit radial_orbit(const BilliardTable& table, int m);

}  // namespace umbrella
