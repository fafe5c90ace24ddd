#pragma once

#include "umbrella/table.hpp"

namespace umbrella {

/// Signed tangent angles of the two arcs of a base (B1 = 0) table, measured
/// at the left vertex once both vertices are aligned on a horizontal axis.
/// Angles are tangent-chord angles: positive arcs bulge to the upper side,
/// magnitudes above pi/2 are major arcs. Scale free by construction.
struct ThetaPair {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

/// The normalized two-arc geometry a reduced pair denotes: the theta1 circle
/// has radius exactly 1 and the vertices sit at (0,0) and (2h,0).
struct ThetaGeometry {
    Circle circle1;  // radius 1
    Circle circle2;
    double half_chord;  // h
};

/// Reduces a pair to the fundamental triangle theta2 >= |theta1| using the
/// label-swap and double-reflection identifications.
ThetaPair reduce_theta(const ThetaPair& pair);

/// Tangent angles of a two-arc table, reduced to the fundamental triangle.
/// Umbrella specs are rejected; callers pass the base spec and keep its
/// angles for B1 > 0 deformations.
ThetaPair theta_of_table(const TableSpec& spec);

ThetaGeometry theta_geometry(const ThetaPair& pair);

/// Inverse of theta_of_table up to the identifications: the two-arc spec in
/// standard (R >= 1) form. Lemon, flower and moon pairs are all reachable;
/// moon-like pairs whose dispersing circle would be smaller than the
/// focusing one have no R >= 1 representation and are rejected.
TableSpec table_of_theta(const ThetaPair& pair);

}  // namespace umbrella
