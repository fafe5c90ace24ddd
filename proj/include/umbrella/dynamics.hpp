#pragma once

#include <vector>

#include "umbrella/table.hpp"

namespace umbrella {

/// Birkhoff coordinates: arc length s in [0, |boundary|) and the angle
/// theta in (0, pi) from the positive tangent to the outgoing velocity.
struct PhasePoint {
    double s = 0.0;
    double theta = 0.0;
};

struct CollisionEvent {
    PhasePoint next;
    double free_path = 0.0;
    int arc_index = -1;
};

enum class StepStatus { Ok, CornerHit, Grazing, NumericFailure };

struct StepResult {
    StepStatus status = StepStatus::NumericFailure;
    CollisionEvent event;  // meaningful only when status == Ok
};

/// One application of the billiard map; singular outcomes are reported in
/// the status rather than thrown.
StepResult map_step(const BilliardTable& table, const PhasePoint& x);

struct MapSingularity : ComputationError {
    StepStatus kind;
    MapSingularity(StepStatus k, const std::string& what)
        : ComputationError(what), kind(k) {}
};

/// Throwing wrapper around map_step.
CollisionEvent billiard_map(const BilliardTable& table, const PhasePoint& x);

/// Derivative of the billiard map at x in (s, theta) coordinates. Built from
/// the signed curvatures at departure and arrival, the free path and both
/// angles; det equals sin(theta)/sin(theta1).
Mat2 tangent_map(const BilliardTable& table, const PhasePoint& x);

/// map_step plus the tangent matrix of that same step.
struct StepWithTangent {
    StepResult step;
    Mat2 derivative;  // valid only when step.status == Ok
};
StepWithTangent map_step_with_tangent(const BilliardTable& table, const PhasePoint& x);

enum class OrbitEnd { Completed, CornerHit, Grazing, NumericFailure };

struct Orbit {
    std::vector<PhasePoint> points;  // seed first, then each collision
    OrbitEnd terminated = OrbitEnd::Completed;
};

/// Up to n applications of the map; stops at the first singularity and
/// records why. Termination is data, not an error.
Orbit iterate(const BilliardTable& table, const PhasePoint& x, long n);

/// Unnormalized invariant density sin(theta).
inline double measure_density(const PhasePoint& x) { return std::sin(x.theta); }

/// Time reversal (s, theta) -> (s, pi - theta).
inline PhasePoint reversed(const PhasePoint& x) { return {x.s, kPi - x.theta}; }

/// Phase-space distance with s wrapped around the perimeter, in raw units.
double phase_distance(const BilliardTable& table, const PhasePoint& a,
                      const PhasePoint& b);

/// Phase point at a Cartesian boundary location on a given arc, with the
/// outgoing direction dir. Useful for constructing exact seeds.
PhasePoint phase_point_at(const BilliardTable& table, int arc_index,
                          const Vec2& position, const Vec2& dir);

}  // namespace umbrella
