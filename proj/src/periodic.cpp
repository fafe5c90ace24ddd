#include "umbrella/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace umbrella {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr int kMaxNewton = 50;
constexpr int kMaxHalvings = 20;

struct CycleEval {
    PhasePoint image;       // T^k(x)
    Mat2 monodromy;         // chained tangent matrices
    std::vector<PhasePoint> points;
};

std::optional<CycleEval> eval_cycle(const BilliardTable& table, const PhasePoint& x,
                                    int k) {
    CycleEval ev;
    ev.monodromy = Mat2::identity();
    ev.points.reserve(static_cast<std::size_t>(k));
    PhasePoint cur = x;
    for (int i = 0; i < k; ++i) {
        ev.points.push_back(cur);
        const StepWithTangent st = map_step_with_tangent(table, cur);
        if (st.step.status != StepStatus::Ok) return std::nullopt;
        ev.monodromy = st.derivative * ev.monodromy;
        cur = st.step.event.next;
    }
    ev.image = cur;
    return ev;
}

Vec2 cycle_defect(const BilliardTable& table, const PhasePoint& x,
                  const PhasePoint& image) {
    return {wrap_signed(image.s - x.s, table.total_length), image.theta - x.theta};
}

/// Solves (M - I) d = -f, falling back to a damped least-squares step when
/// the system is near singular (parabolic cycles).
Vec2 newton_direction(const Mat2& monodromy, const Vec2& f) {
    const Mat2 j = monodromy - Mat2::identity();
    const double det = j.det();
    const double scale = std::abs(j.m00) + std::abs(j.m01) + std::abs(j.m10) +
                         std::abs(j.m11) + 1e-300;
    if (std::abs(det) > 1e-12 * scale * scale) {
        return {(-f.x * j.m11 + f.y * j.m01) / det,
                (-f.y * j.m00 + f.x * j.m10) / det};
    }
    const Mat2 jt{j.m00, j.m10, j.m01, j.m11};
    const Mat2 n = jt * j;
    const double mu = 1e-12 * (n.m00 + n.m11 + 1e-300);
    const Mat2 reg{n.m00 + mu, n.m01, n.m10, n.m11 + mu};
    const Vec2 rhs = jt * Vec2{-f.x, -f.y};
    const double rdet = reg.det();
    return {(rhs.x * reg.m11 - rhs.y * reg.m01) / rdet,
            (rhs.y * reg.m00 - rhs.x * reg.m10) / rdet};
}

PhasePoint wrap_phase(const BilliardTable& table, PhasePoint x) {
    x.s = std::fmod(x.s, table.total_length);
    if (x.s < 0.0) x.s += table.total_length;
    return x;
}

}  // namespace

const char* stability_name(StabilityClass c) {
    switch (c) {
        case StabilityClass::Hyperbolic: return "hyperbolic";
        case StabilityClass::Parabolic: return "parabolic";
        case StabilityClass::Elliptic: return "elliptic";
    }
    return "?";
}

PhasePoint refine_periodic(const BilliardTable& table, const PhasePoint& seed, int k) {
    if (k < 1) throw InvalidSpec("period must be positive");
    PhasePoint x = wrap_phase(table, seed);
    auto ev = eval_cycle(table, x, k);
    if (!ev) throw SingularOrbit("seed cycle hits a corner or grazes");
    Vec2 f = cycle_defect(table, x, ev->image);
    double fnorm = f.norm();

    for (int it = 0; it < kMaxNewton; ++it) {
        if (fnorm < kResidualTol) return x;
        const Vec2 d = newton_direction(ev->monodromy, f);
        double step = 1.0;
        bool improved = false;
        for (int h = 0; h <= kMaxHalvings; ++h, step *= 0.5) {
            PhasePoint trial = wrap_phase(table, {x.s + step * d.x, x.theta + step * d.y});
            if (!(trial.theta > 0.0) || !(trial.theta < kPi)) continue;
            auto trial_ev = eval_cycle(table, trial, k);
            if (!trial_ev) continue;  // stepped across a singularity line
            const Vec2 tf = cycle_defect(table, trial, trial_ev->image);
            if (tf.norm() < fnorm) {
                x = trial;
                ev = std::move(trial_ev);
                f = tf;
                fnorm = f.norm();
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (fnorm < kResidualTol) return x;
    throw NoConvergence("periodic refinement stalled at residual " +
                        std::to_string(fnorm));
}

PeriodicOrbit classify(const BilliardTable& table, const PhasePoint& x, int k,
                       double tol) {
    const PhasePoint fixed = refine_periodic(table, x, k);
    const auto ev = eval_cycle(table, fixed, k);
    if (!ev) throw SingularOrbit("refined cycle hits a corner or grazes");

    PeriodicOrbit orbit;
    orbit.cycle = ev->points;
    orbit.period = k;
    orbit.trace = ev->monodromy.trace();
    orbit.residual = cycle_defect(table, fixed, ev->image).norm();
    const double excess = std::abs(orbit.trace) - 2.0;
    if (excess > tol)
        orbit.classification = StabilityClass::Hyperbolic;
    else if (excess < -tol)
        orbit.classification = StabilityClass::Elliptic;
    else
        orbit.classification = StabilityClass::Parabolic;
    return orbit;
}

PhasePoint axial_two_periodic(const TableSpec& spec) {
    if (spec.family != Family::Lemon || spec.B1 != 0.0)
        throw InvalidSpec("axial 2-periodic point is defined for base lemons");
    const BilliardTable table = build_table(spec);
    // Perpendicular bounce between (1, 0) on the unit arc and (B - R, 0) on
    // the second arc; anchored at the unit-arc end.
    return phase_point_at(table, 0, Vec2{1.0, 0.0}, Vec2{-1.0, 0.0});
}

std::vector<PeriodicOrbit> split_pair(const BilliardTable& table) {
    const TableSpec& spec = table.spec;
    const bool lemon_like = spec.family == Family::UmbrellaLemon ||
                            (spec.family == Family::NUmbrella && spec.n == 2);
    if (!lemon_like || spec.B1 <= 0.0)
        throw InvalidSpec("split pair requires an umbrella lemon with B1 > 0");

    const Circle second{{spec.B, 0.0}, spec.R};
    std::vector<PeriodicOrbit> out;
    for (double side : {-1.0, 1.0}) {
        const Circle lobe{{0.0, side * 0.5 * spec.B1}, 1.0};
        // The chord through both centers meets each circle perpendicularly,
        // so the bounce between the two far points is exactly 2-periodic.
        const Vec2 u = (second.center - lobe.center).normalized();
        const Vec2 on_lobe = lobe.center + u;
        const int lobe_arc = side < 0.0 ? 0 : 1;
        try {
            const PhasePoint seed = phase_point_at(table, lobe_arc, on_lobe, -u);
            const PhasePoint fixed = refine_periodic(table, seed, 2);
            out.push_back(classify(table, fixed, 2));
        } catch (const ComputationError&) {
            throw NotFound("split-pair orbit not found on one lobe");
        }
    }
    std::sort(out.begin(), out.end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
        return a.cycle.front().s < b.cycle.front().s;
    });
    return out;
}

PeriodicOrbit radial_orbit(const BilliardTable& table, int m) {
    if (m < 1) throw InvalidSpec("sliding count must be at least 1");
    const TableSpec& spec = table.spec;
    if (spec.family != Family::Moon && spec.family != Family::UmbrellaMoon1 &&
        spec.family != Family::UmbrellaMoon2)
        throw InvalidSpec("radial orbits are defined for moon-family tables");

    // Umbrella deformations are reached by continuation from the base moon.
    if (spec.B1 > 0.0) {
        TableSpec base(Family::Moon, spec.R, spec.B);
        const PeriodicOrbit base_orbit = radial_orbit(build_table(base), m);
        try {
            const PhasePoint fixed =
                refine_periodic(table, base_orbit.cycle.front(), base_orbit.period);
            return classify(table, fixed, base_orbit.period);
        } catch (const ComputationError&) {
            throw NotFound("radial orbit does not persist at this B1");
        }
    }

    const int period = 2 * m + 2;
    const Circle second{{spec.B, 0.0}, spec.R};
    const ArcSegment& unit_arc = table.arcs[1];
    const ArcSegment& disp_arc = table.arcs[0];

    // Sliding chain on the unit circle, symmetric about the axis: collisions
    // at polar angles pi + (m + 1 - 2 j) t for j = 1..m, all with tangent
    // angle t. The end chord, extended, must pass through the dispersing
    // circle's center; that is the one-parameter shooting condition.
    auto chain_start = [&](double t) {
        const double psi = kPi + (m - 1) * t;
        return Vec2{std::cos(psi), std::sin(psi)};
    };
    auto chain_dir = [&](double t) {
        const double psi = kPi + (m - 1) * t;
        const Vec2 a{std::cos(psi), std::sin(psi)};
        const Vec2 b{std::cos(psi + 2.0 * t), std::sin(psi + 2.0 * t)};
        return (b - a).normalized();
    };
    auto miss = [&](double t) {
        return chain_dir(t).cross(second.center - chain_start(t));
    };
    auto chain_on_arc = [&](double t) {
        for (int j = 1; j <= m; ++j) {
            const double psi = kPi + (m + 1 - 2 * j) * t;
            if (!unit_arc.spans_angle(wrap_angle(psi), -1e-9)) return false;
        }
        return true;
    };

    const double t_max = kPi / std::max(1, m) - 1e-6;
    const int scan = 400;
    double prev_t = 1e-4, prev_f = miss(prev_t);
    for (int i = 1; i <= scan; ++i) {
        const double t = 1e-4 + (t_max - 1e-4) * i / scan;
        const double f = miss(t);
        if (std::isfinite(prev_f) && std::isfinite(f) && prev_f * f < 0.0) {
            double lo = prev_t, hi = t, flo = prev_f;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = miss(mid);
                if (flo * fm <= 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            const double t_star = 0.5 * (lo + hi);
            if (chain_on_arc(t_star)) {
                // Launch point: the perpendicular hit on the dispersing arc,
                // on the ray from the chain end through the center.
                const Vec2 d = chain_dir(t_star);
                const Vec2 hit = second.center - spec.R * d;
                if (disp_arc.spans_angle(
                        std::atan2(hit.y - second.center.y, hit.x - second.center.x),
                        1e-9)) {
                    try {
                        const PhasePoint seed = phase_point_at(table, 0, hit, -d);
                        const PhasePoint fixed = refine_periodic(table, seed, period);
                        return classify(table, fixed, period);
                    } catch (const ComputationError&) {
                        // fall through to the next bracket
                    }
                }
            }
        }
        prev_t = t;
        prev_f = f;
    }
    throw NotFound("no radial orbit for this sliding count");
}

}  // namespace umbrella
