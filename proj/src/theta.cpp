#include "umbrella/theta.hpp"

#include <cmath>

namespace umbrella {

namespace {

constexpr double kDegenerateTol = 1e-12;

bool in_triangle(const ThetaPair& p) { return p.theta2 >= std::abs(p.theta1); }

}  // namespace

ThetaPair reduce_theta(const ThetaPair& pair) {
    const ThetaPair candidates[4] = {
        {pair.theta1, pair.theta2},
        {pair.theta2, pair.theta1},
        {-pair.theta1, -pair.theta2},
        {-pair.theta2, -pair.theta1},
    };
    for (const auto& c : candidates)
        if (in_triangle(c)) return c;
    return pair;  // unreachable for finite input
}

ThetaPair theta_of_table(const TableSpec& spec) {
    if (spec.B1 != 0.0)
        throw InvalidSpec("theta angles are defined for base (B1 = 0) tables");
    if (spec.family != Family::Lemon && spec.family != Family::Moon &&
        spec.family != Family::Flower)
        throw InvalidSpec("theta angles require a two-arc family");

    // Corner geometry of the base pair; build_table validates the spec.
    const BilliardTable table = build_table(spec);
    const double xc = (1.0 + spec.B * spec.B - spec.R * spec.R) / (2.0 * spec.B);
    const double yc = std::sqrt(1.0 - xc * xc);

    // Half-extents of each arc seen from the corner chord. alpha is the polar
    // angle of the upper corner on the unit circle, phi_plus the angle of the
    // same corner on the second circle.
    const double alpha = std::atan2(yc, xc);
    const double phi_plus = std::atan2(yc, xc - spec.B);

    ThetaPair raw;
    switch (spec.family) {
        case Family::Lemon:
            raw = {-alpha, kPi - phi_plus};
            break;
        case Family::Moon:
            raw = {kPi - alpha, kPi - phi_plus};
            break;
        case Family::Flower:
            raw = {kPi - alpha, -phi_plus};
            break;
        default:
            throw InvalidSpec("unreachable");
    }
    return reduce_theta(raw);
}

ThetaGeometry theta_geometry(const ThetaPair& pair_in) {
    const ThetaPair pair = reduce_theta(pair_in);
    const double t1 = pair.theta1, t2 = pair.theta2;
    if (!(t2 > kDegenerateTol) || t2 >= kPi - kDegenerateTol ||
        std::abs(t1) < kDegenerateTol || std::abs(t1) >= kPi - kDegenerateTol)
        throw InvalidSpec("degenerate theta pair: zero-extent arc");
    if (std::abs(t2 - t1) < kDegenerateTol ||
        std::abs((t2 - t1) - kPi) < kDegenerateTol)
        throw InvalidSpec("degenerate theta pair: arcs coincide");

    ThetaGeometry g;
    g.half_chord = std::sin(std::abs(t1));
    const double h = g.half_chord;
    g.circle1 = Circle{{h, -h / std::tan(t1)}, 1.0};
    g.circle2 = Circle{{h, -h / std::tan(t2)}, h / std::sin(t2)};
    return g;
}

TableSpec table_of_theta(const ThetaPair& pair_in) {
    const ThetaPair pair = reduce_theta(pair_in);
    const ThetaGeometry g = theta_geometry(pair);
    const double dist = std::abs(g.circle1.center.y - g.circle2.center.y);
    const double r2 = g.circle2.radius;

    TableSpec spec;
    if (pair.theta1 < 0.0) {
        // Opposite bulges: intersection of the disks below the vertex angle
        // pi, union of them (two-petal flower) above.
        spec.family = (pair.theta2 - pair.theta1 < kPi) ? Family::Lemon
                                                        : Family::Flower;
        const double rmin = std::min(1.0, r2);
        spec.R = std::max(1.0, r2) / rmin;
        spec.B = dist / rmin;
    } else {
        // Same-side bulges: a moon whose dispersing circle carries theta1.
        if (std::sin(pair.theta1) > std::sin(pair.theta2) * (1.0 + 1e-12))
            throw InvalidSpec(
                "moon-like pair with dispersing radius below the focusing one "
                "has no R >= 1 representation");
        spec.family = Family::Moon;
        spec.R = 1.0 / r2;  // r2 = sin(theta1)/sin(theta2) <= 1
        spec.B = dist / r2;
    }
    spec.B1 = 0.0;
    return spec;
}

}  // namespace umbrella
