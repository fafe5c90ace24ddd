#pragma once

#include <string>
#include <vector>

#include "umbrella/errors.hpp"
#include "umbrella/geometry.hpp"

namespace umbrella {

/// Table families. Lemon is the intersection of two disks, Moon the unit disk
/// minus the second disk, Flower the union of both (two-petal tables reached
/// through the theta parametrization). The umbrella families duplicate one
/// framing circle and separate the copies by B1 orthogonally to the center
/// axis; NUmbrella generalizes the lemon-type duplication to n >= 2 copies.
/// Circle is a one-arc calibration table.
enum class Family {
    Lemon,
    Moon,
    Flower,
    Circle,
    UmbrellaLemon,
    UmbrellaMoon1,  // duplicated focusing (unit) circle; fast transition
    UmbrellaMoon2,  // duplicated dispersing (radius R) circle; slow transition
    NUmbrella,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);
bool is_umbrella(Family f);

struct TableSpec {
    Family family = Family::Lemon;
    double R = 1.0;   // radius of the second circle, R >= 1
    double B = 1.0;   // separation of the base circle centers
    double B1 = 0.0;  // separation of the duplicated centers, 0 for base tables
    int n = 0;        // lobe count, NUmbrella only (n >= 2)

    TableSpec() = default;
    TableSpec(Family f, double R_, double B_, double B1_ = 0.0, int n_ = 0)
        : family(f), R(R_), B(B_), B1(B1_), n(n_) {}
};

enum class ArcOrientation { Focusing, Dispersing };

/// One circular piece of the boundary. The traversal runs counterclockwise
/// around the table, which is counterclockwise around the arc's own circle
/// for focusing pieces (dphi > 0) and clockwise for dispersing ones
/// (dphi < 0).
struct ArcSegment {
    Circle circle;
    double phi_start = 0.0;  // angle of the arc's first endpoint on its circle
    double dphi = 0.0;       // signed angular extent
    ArcOrientation orientation = ArcOrientation::Focusing;
    double s_offset = 0.0;   // arc-length position of the first endpoint

    double angle_start() const { return phi_start; }
    double angle_end() const { return phi_start + dphi; }
    double length() const { return circle.radius * std::abs(dphi); }
    double signed_curvature() const {
        return (dphi >= 0.0 ? 1.0 : -1.0) / circle.radius;
    }

    /// Angle on the circle at local arc length l in [0, length()].
    double phi_at(double l) const {
        return phi_start + (dphi >= 0.0 ? 1.0 : -1.0) * l / circle.radius;
    }
    Vec2 point_at(double l) const {
        const double phi = phi_at(l);
        return circle.center + circle.radius * Vec2{std::cos(phi), std::sin(phi)};
    }
    /// Local arc length of a point assumed to lie on the arc.
    double local_s(const Vec2& p) const;
    /// True if the circle angle phi falls inside the arc span.
    bool spans_angle(double phi, double tol_rad = 1e-12) const;
};

struct BoundaryPoint {
    Vec2 position;
    Vec2 tangent;      // unit, counterclockwise traversal direction
    double curvature;  // +1/r focusing, -1/r dispersing
    int arc_index;
};

enum class CornerSide { After, Before };

class BilliardTable {
  public:
    TableSpec spec;
    std::vector<ArcSegment> arcs;
    double total_length = 0.0;
    std::vector<double> corners;       // sorted arc-length positions
    std::vector<Vec2> corner_points;   // matching Cartesian corners

    // Membership model of the defining region, independent of the arcs:
    // inside <=> in every all_of disk, in at least one any_of disk (if any),
    // and in no none_of disk.
    std::vector<Circle> all_of;
    std::vector<Circle> any_of;
    std::vector<Circle> none_of;

    int arc_index_at(double s) const;
    bool contains(const Vec2& p, double tol = 0.0) const;
    double corner_distance(double s) const;  // cyclic distance to nearest corner

    BoundaryPoint boundary_point(double s, CornerSide side = CornerSide::After) const;
};

/// Builds the table for a spec. Throws InvalidSpec when the parameters do not
/// produce a single, simply connected region of the canonical form.
BilliardTable build_table(const TableSpec& spec);

/// Single full-circle table used for calibration.
BilliardTable make_circle_table(double radius = 1.0);

/// Supremum of B1 for which the umbrella table stays valid, found by
/// bisection of build_table validity over [0, 2]. At most 2 by construction.
double max_offset(const TableSpec& spec);

/// Position, tangent and signed curvature at arc length s in [0, total).
/// Throws OutOfRange outside that interval. At a corner the side flag picks
/// the outgoing (After) or incoming (Before) arc.
BoundaryPoint boundary_eval(const BilliardTable& table, double s,
                            CornerSide side = CornerSide::After);

}  // namespace umbrella
