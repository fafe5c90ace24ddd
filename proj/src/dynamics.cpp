#include "umbrella/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace umbrella {

namespace {

constexpr double kMinFlight = 1e-12;     // rejects re-hits of the departure point
constexpr double kGrazingTol = 1e-12;    // on sin(theta1)
constexpr double kCornerTol = 1e-12;     // arc-length distance to a corner
constexpr double kSpanTol = 1e-12;       // angular slack for span membership

struct Candidate {
    double tau = std::numeric_limits<double>::infinity();
    int arc = -1;
    double phi = 0.0;
};

}  // namespace

StepResult map_step(const BilliardTable& table, const PhasePoint& x) {
    StepResult out;
    if (!(x.s >= 0.0) || x.s >= table.total_length || !(x.theta > 0.0) ||
        !(x.theta < kPi)) {
        out.status = StepStatus::NumericFailure;
        return out;
    }
    if (std::sin(x.theta) < kGrazingTol) {
        out.status = StepStatus::Grazing;
        return out;
    }

    const BoundaryPoint bp = boundary_eval(table, x.s);
    const Vec2 n = bp.tangent.perp();  // inward normal
    const Vec2 v = std::cos(x.theta) * bp.tangent + std::sin(x.theta) * n;
    const Vec2 p = bp.position;

    Candidate best, second;
    for (int i = 0; i < static_cast<int>(table.arcs.size()); ++i) {
        const ArcSegment& arc = table.arcs[i];
        const Vec2 rel = p - arc.circle.center;
        const double b = v.dot(rel);
        const double c = rel.norm2() - arc.circle.radius * arc.circle.radius;
        const double disc = b * b - c;
        if (disc <= 0.0) continue;
        const double sq = std::sqrt(disc);
        // Stable quadratic roots of tau^2 + 2 b tau + c = 0.
        double roots[2];
        if (b >= 0.0) {
            roots[0] = -b - sq;
            roots[1] = (roots[0] != 0.0) ? c / roots[0] : -b + sq;
        } else {
            roots[1] = -b + sq;
            roots[0] = (roots[1] != 0.0) ? c / roots[1] : -b - sq;
        }
        for (double tau : roots) {
            if (!(tau > kMinFlight)) continue;
            const Vec2 q = p + tau * v;
            const Vec2 qr = q - arc.circle.center;
            const double phi = std::atan2(qr.y, qr.x);
            if (!arc.spans_angle(phi, kSpanTol)) continue;
            if (tau < best.tau) {
                second = best;
                best = {tau, i, phi};
            } else if (tau < second.tau) {
                second = {tau, i, phi};
            }
        }
    }

    if (best.arc < 0) {
        out.status = StepStatus::NumericFailure;
        return out;
    }
    // A near-tie between two arcs means the flight line passes through the
    // corner they share.
    if (second.arc >= 0 && second.arc != best.arc &&
        second.tau - best.tau < kMinFlight) {
        out.status = StepStatus::CornerHit;
        return out;
    }

    const ArcSegment& hit = table.arcs[best.arc];
    const double local = hit.local_s(p + best.tau * v);
    double s1 = hit.s_offset + local;
    if (s1 >= table.total_length) s1 -= table.total_length;
    if (table.corner_distance(s1) < kCornerTol) {
        out.status = StepStatus::CornerHit;
        return out;
    }

    const BoundaryPoint bp1 = boundary_eval(table, s1);
    const Vec2 n1 = bp1.tangent.perp();
    const Vec2 v1 = v - 2.0 * v.dot(n1) * n1;
    const double theta1 = std::atan2(bp1.tangent.cross(v1), bp1.tangent.dot(v1));
    if (!(theta1 > 0.0) || !(theta1 < kPi) || std::sin(theta1) < kGrazingTol) {
        out.status = StepStatus::Grazing;
        return out;
    }

    out.status = StepStatus::Ok;
    out.event.next = {s1, theta1};
    out.event.free_path = best.tau;
    out.event.arc_index = best.arc;
    return out;
}

CollisionEvent billiard_map(const BilliardTable& table, const PhasePoint& x) {
    const StepResult r = map_step(table, x);
    switch (r.status) {
        case StepStatus::Ok: return r.event;
        case StepStatus::CornerHit:
            throw MapSingularity(r.status, "flight line hits a corner");
        case StepStatus::Grazing:
            throw MapSingularity(r.status, "grazing collision");
        case StepStatus::NumericFailure:
            throw MapSingularity(r.status, "no forward intersection found");
    }
    throw MapSingularity(StepStatus::NumericFailure, "unreachable");
}

namespace {

Mat2 tangent_from_step(const BilliardTable& table, const PhasePoint& x,
                       const CollisionEvent& ev) {
    const double k0 = boundary_eval(table, x.s).curvature;
    const double k1 = boundary_eval(table, ev.next.s).curvature;
    const double st = std::sin(x.theta);
    const double st1 = std::sin(ev.next.theta);
    const double tau = ev.free_path;
    // d s1 = ((tau k0 - sin t) ds + tau dt) / sin t1
    // d t1 = -(dt + k0 ds) + k1 ds1
    Mat2 m;
    m.m00 = (tau * k0 - st) / st1;
    m.m01 = tau / st1;
    m.m10 = -k0 + k1 * m.m00;
    m.m11 = -1.0 + k1 * m.m01;
    return m;
}

}  // namespace

Mat2 tangent_map(const BilliardTable& table, const PhasePoint& x) {
    const CollisionEvent ev = billiard_map(table, x);
    return tangent_from_step(table, x, ev);
}

StepWithTangent map_step_with_tangent(const BilliardTable& table,
                                      const PhasePoint& x) {
    StepWithTangent out;
    out.step = map_step(table, x);
    if (out.step.status == StepStatus::Ok)
        out.derivative = tangent_from_step(table, x, out.step.event);
    return out;
}

Orbit iterate(const BilliardTable& table, const PhasePoint& x, long n) {
    Orbit orbit;
    orbit.points.reserve(static_cast<std::size_t>(std::min<long>(n, 1 << 20)) + 1);
    orbit.points.push_back(x);
    PhasePoint cur = x;
    for (long i = 0; i < n; ++i) {
        const StepResult r = map_step(table, cur);
        if (r.status != StepStatus::Ok) {
            switch (r.status) {
                case StepStatus::CornerHit: orbit.terminated = OrbitEnd::CornerHit; break;
                case StepStatus::Grazing: orbit.terminated = OrbitEnd::Grazing; break;
                default: orbit.terminated = OrbitEnd::NumericFailure; break;
            }
            return orbit;
        }
        cur = r.event.next;
        orbit.points.push_back(cur);
    }
    orbit.terminated = OrbitEnd::Completed;
    return orbit;
}

double phase_distance(const BilliardTable& table, const PhasePoint& a,
                      const PhasePoint& b) {
    const double ds = wrap_signed(a.s - b.s, table.total_length);
    return std::hypot(ds, a.theta - b.theta);
}

PhasePoint phase_point_at(const BilliardTable& table, int arc_index,
                          const Vec2& position, const Vec2& dir) {
    const ArcSegment& arc = table.arcs.at(static_cast<std::size_t>(arc_index));
    double s = arc.s_offset + arc.local_s(position);
    if (s >= table.total_length) s -= table.total_length;
    const BoundaryPoint bp = boundary_eval(table, s);
    const Vec2 u = dir.normalized();
    const double theta = std::atan2(bp.tangent.cross(u), bp.tangent.dot(u));
    return {s, theta};
}

}  // namespace umbrella
