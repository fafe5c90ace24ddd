#include "umbrella/table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace umbrella {

namespace {

constexpr double kClosureTol = 1e-10;
constexpr double kMinExtent = 1e-9;  // radians; arcs below this are degenerate

[[noreturn]] void fail(const std::string& msg) { throw InvalidSpec(msg); }

std::string describe(const TableSpec& s) {
    std::ostringstream os;
    os << family_name(s.family) << "(R=" << s.R << ", B=" << s.B << ", B1=" << s.B1;
    if (s.family == Family::NUmbrella) os << ", n=" << s.n;
    os << ")";
    return os.str();
}

/// Base two-circle geometry: unit circle at the origin, second circle of
/// radius R at (B, 0). Crossing points are (xc, +yc) and (xc, -yc).
struct BasePair {
    Circle unit;
    Circle second;
    double xc;
    double yc;
};

BasePair base_pair(const TableSpec& spec) {
    if (spec.R < 1.0) fail(describe(spec) + ": R must be at least 1");
    if (spec.B <= 0.0) fail(describe(spec) + ": B must be positive");
    BasePair g;
    g.unit = Circle{{0.0, 0.0}, 1.0};
    g.second = Circle{{spec.B, 0.0}, spec.R};
    if (spec.B >= spec.R + 1.0)
        fail(describe(spec) + ": disks are disjoint, no two-arc region");
    if (spec.B <= spec.R - 1.0)
        fail(describe(spec) + ": unit disk nested in the second disk");
    g.xc = (1.0 + spec.B * spec.B - spec.R * spec.R) / (2.0 * spec.B);
    const double y2 = 1.0 - g.xc * g.xc;
    if (y2 <= kMinExtent * kMinExtent)
        fail(describe(spec) + ": circles are tangent, degenerate corners");
    g.yc = std::sqrt(y2);
    return g;
}

ArcSegment make_arc(const Circle& c, const Vec2& from, const Vec2& to,
                    ArcOrientation orientation) {
    ArcSegment arc;
    arc.circle = c;
    arc.orientation = orientation;
    arc.phi_start = std::atan2(from.y - c.center.y, from.x - c.center.x);
    const double phi_end = std::atan2(to.y - c.center.y, to.x - c.center.x);
    if (orientation == ArcOrientation::Focusing)
        arc.dphi = wrap_angle_positive(phi_end - arc.phi_start);
    else
        arc.dphi = -wrap_angle_positive(arc.phi_start - phi_end);
    if (std::abs(arc.dphi) < kMinExtent)
        fail("degenerate arc of zero angular extent");
    return arc;
}

/// Fills cumulative offsets and corner lists, then verifies the chain closes.
void finalize(BilliardTable& t) {
    double s = 0.0;
    t.corners.clear();
    t.corner_points.clear();
    const bool closed_single = t.arcs.size() == 1;
    for (auto& arc : t.arcs) {
        arc.s_offset = s;
        if (!closed_single) {
            t.corners.push_back(s);
            t.corner_points.push_back(arc.point_at(0.0));
        }
        s += arc.length();
    }
    t.total_length = s;

    for (std::size_t i = 0; i < t.arcs.size(); ++i) {
        const Vec2 end = t.arcs[i].point_at(t.arcs[i].length());
        const Vec2 next = t.arcs[(i + 1) % t.arcs.size()].point_at(0.0);
        if ((end - next).norm() > kClosureTol)
            fail("boundary does not close: arc endpoints mismatch");
    }
    // Every arc interior must lie on the defining region's boundary. Sampled
    // points catch mis-assembled tables that still close up.
    for (const auto& arc : t.arcs) {
        for (double u : {0.25, 0.5, 0.75}) {
            const Vec2 p = arc.point_at(u * arc.length());
            if (!t.contains(p, 1e-9)) fail("arc sample escapes the table region");
        }
    }
}

BilliardTable build_lemon(const TableSpec& spec) {
    const BasePair g = base_pair(spec);
    const Vec2 p_hi{g.xc, g.yc}, p_lo{g.xc, -g.yc};
    BilliardTable t;
    t.spec = spec;
    t.arcs.push_back(make_arc(g.unit, p_lo, p_hi, ArcOrientation::Focusing));
    t.arcs.push_back(make_arc(g.second, p_hi, p_lo, ArcOrientation::Focusing));
    t.all_of = {g.unit, g.second};
    finalize(t);
    return t;
}

BilliardTable build_moon(const TableSpec& spec) {
    const BasePair g = base_pair(spec);
    const Vec2 p_hi{g.xc, g.yc}, p_lo{g.xc, -g.yc};
    BilliardTable t;
    t.spec = spec;
    t.arcs.push_back(make_arc(g.second, p_lo, p_hi, ArcOrientation::Dispersing));
    t.arcs.push_back(make_arc(g.unit, p_hi, p_lo, ArcOrientation::Focusing));
    t.all_of = {g.unit};
    t.none_of = {g.second};
    finalize(t);
    return t;
}

BilliardTable build_flower(const TableSpec& spec) {
    const BasePair g = base_pair(spec);
    const Vec2 p_hi{g.xc, g.yc}, p_lo{g.xc, -g.yc};
    BilliardTable t;
    t.spec = spec;
    t.arcs.push_back(make_arc(g.second, p_lo, p_hi, ArcOrientation::Focusing));
    t.arcs.push_back(make_arc(g.unit, p_hi, p_lo, ArcOrientation::Focusing));
    t.any_of = {g.unit, g.second};
    finalize(t);
    return t;
}

void check_umbrella_b1(const TableSpec& spec) {
    if (spec.B1 < 0.0) fail(describe(spec) + ": B1 must be nonnegative");
    if (spec.B1 >= 2.0) fail(describe(spec) + ": B1 must stay below 2");
}

/// Lemon-type umbrella with n unit lobes evenly spaced over width B1 along
/// the axis orthogonal to the base center line. UmbrellaLemon is n = 2.
BilliardTable build_numbrella(const TableSpec& spec, int n) {
    check_umbrella_b1(spec);
    if (n < 2) fail(describe(spec) + ": lobe count must be at least 2");
    if (spec.B1 == 0.0) {
        TableSpec base(Family::Lemon, spec.R, spec.B);
        BilliardTable t = build_lemon(base);
        t.spec = spec;
        return t;
    }
    if (spec.R < 1.0) fail(describe(spec) + ": R must be at least 1");
    if (spec.B <= 0.0) fail(describe(spec) + ": B must be positive");

    const double delta = spec.B1 / (n - 1);
    if (delta >= 2.0) fail(describe(spec) + ": adjacent lobes do not overlap");
    const Circle second{{spec.B, 0.0}, spec.R};
    std::vector<Circle> lobes(n);
    for (int i = 0; i < n; ++i)
        lobes[i] = Circle{{0.0, -0.5 * spec.B1 + i * delta}, 1.0};

    // Ribs: crossings of adjacent lobes on the side facing the second disk.
    const double x_rib = std::sqrt(1.0 - 0.25 * delta * delta);
    std::vector<Vec2> ribs(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        ribs[i] = Vec2{x_rib, 0.5 * (lobes[i].center.y + lobes[i + 1].center.y)};
        if (second.boundary_depth(ribs[i]) >= 0.0)
            fail(describe(spec) + ": lobe junction leaves the second disk");
    }

    // Bottom corner: the crossing of the second circle with the lowest lobe
    // that lies outside every other lobe. The sibling crossing must be
    // swallowed by the other lobes or the boundary gains extra corners.
    const auto hits = circle_intersections(second, lobes.front());
    if (!hits) fail(describe(spec) + ": second circle misses the outer lobe");
    auto outside_others = [&](const Vec2& p) {
        for (int j = 1; j < n; ++j)
            if (lobes[j].boundary_depth(p) < 0.0) return false;
        return true;
    };
    const bool first_out = outside_others(hits->first);
    const bool second_out = outside_others(hits->second);
    if (first_out == second_out)
        fail(describe(spec) + ": lobe arrangement is not simply connected");
    const Vec2 k_bot = first_out ? hits->first : hits->second;
    if (k_bot.y >= 0.0) fail(describe(spec) + ": outer corner on the wrong side");
    const Vec2 k_top{k_bot.x, -k_bot.y};

    BilliardTable t;
    t.spec = spec;
    Vec2 from = k_bot;
    for (int i = 0; i < n; ++i) {
        const Vec2 to = (i + 1 < n) ? ribs[i] : k_top;
        t.arcs.push_back(make_arc(lobes[i], from, to, ArcOrientation::Focusing));
        from = to;
    }
    t.arcs.push_back(make_arc(second, k_top, k_bot, ArcOrientation::Focusing));
    t.all_of = {second};
    t.any_of = lobes;
    finalize(t);
    return t;
}

/// Moon umbrella that duplicates the dispersing (radius R) disk; the slow
/// transition type.
BilliardTable build_umbrella_moon2(const TableSpec& spec) {
    check_umbrella_b1(spec);
    if (spec.B1 == 0.0) {
        TableSpec base(Family::Moon, spec.R, spec.B);
        BilliardTable t = build_moon(base);
        t.spec = spec;
        return t;
    }
    if (spec.R < 1.0) fail(describe(spec) + ": R must be at least 1");
    if (spec.B <= 0.0) fail(describe(spec) + ": B must be positive");
    if (spec.B1 >= 2.0 * spec.R) fail(describe(spec) + ": duplicated disks disjoint");

    const Circle unit{{0.0, 0.0}, 1.0};
    const Circle lobe_hi{{spec.B, 0.5 * spec.B1}, spec.R};
    const Circle lobe_lo{{spec.B, -0.5 * spec.B1}, spec.R};

    const double reach = std::sqrt(spec.R * spec.R - 0.25 * spec.B1 * spec.B1);
    const Vec2 rib{spec.B - reach, 0.0};
    if (std::abs(rib.x) >= 1.0)
        fail(describe(spec) + ": duplicated disks cross outside the unit disk");

    const auto hits = circle_intersections(unit, lobe_hi);
    if (!hits) fail(describe(spec) + ": duplicated disk misses the unit circle");
    const bool first_out = lobe_lo.boundary_depth(hits->first) > 0.0;
    const bool second_out = lobe_lo.boundary_depth(hits->second) > 0.0;
    if (first_out == second_out)
        fail(describe(spec) + ": bite arrangement is not simply connected");
    const Vec2 k_hi = first_out ? hits->first : hits->second;
    if (k_hi.y <= 0.0) fail(describe(spec) + ": upper corner on the wrong side");
    const Vec2 k_lo{k_hi.x, -k_hi.y};

    BilliardTable t;
    t.spec = spec;
    t.arcs.push_back(make_arc(lobe_lo, k_lo, rib, ArcOrientation::Dispersing));
    t.arcs.push_back(make_arc(lobe_hi, rib, k_hi, ArcOrientation::Dispersing));
    t.arcs.push_back(make_arc(unit, k_hi, k_lo, ArcOrientation::Focusing));
    t.all_of = {unit};
    t.none_of = {lobe_hi, lobe_lo};
    finalize(t);
    return t;
}

/// Moon umbrella that duplicates the focusing (unit) disk; the type whose
/// islands dissipate fastest as B1 grows.
BilliardTable build_umbrella_moon1(const TableSpec& spec) {
    check_umbrella_b1(spec);
    if (spec.B1 == 0.0) {
        TableSpec base(Family::Moon, spec.R, spec.B);
        BilliardTable t = build_moon(base);
        t.spec = spec;
        return t;
    }
    if (spec.R < 1.0) fail(describe(spec) + ": R must be at least 1");
    if (spec.B <= 0.0) fail(describe(spec) + ": B must be positive");

    const Circle second{{spec.B, 0.0}, spec.R};
    const Circle lobe_hi{{0.0, 0.5 * spec.B1}, 1.0};
    const Circle lobe_lo{{0.0, -0.5 * spec.B1}, 1.0};

    const double x_rib = std::sqrt(1.0 - 0.25 * spec.B1 * spec.B1);
    const Vec2 rib{-x_rib, 0.0};
    if (second.boundary_depth(rib) <= 0.0)
        fail(describe(spec) + ": second disk separates the two lobes");
    // The right lobe junction must be removed by the second disk; otherwise
    // a corridor opens between the lobes and two extra corners appear.
    if (second.boundary_depth(Vec2{x_rib, 0.0}) >= 0.0)
        fail(describe(spec) + ": lobes meet outside the second disk");

    const auto hits = circle_intersections(second, lobe_hi);
    if (!hits) fail(describe(spec) + ": second circle misses the upper lobe");
    const bool first_out = lobe_lo.boundary_depth(hits->first) > 0.0;
    const bool second_out = lobe_lo.boundary_depth(hits->second) > 0.0;
    if (first_out == second_out)
        fail(describe(spec) + ": lobe arrangement is not simply connected");
    const Vec2 k_hi = first_out ? hits->first : hits->second;
    if (k_hi.y <= 0.0) fail(describe(spec) + ": upper corner on the wrong side");
    const Vec2 k_lo{k_hi.x, -k_hi.y};

    BilliardTable t;
    t.spec = spec;
    t.arcs.push_back(make_arc(second, k_lo, k_hi, ArcOrientation::Dispersing));
    t.arcs.push_back(make_arc(lobe_hi, k_hi, rib, ArcOrientation::Focusing));
    t.arcs.push_back(make_arc(lobe_lo, rib, k_lo, ArcOrientation::Focusing));
    t.any_of = {lobe_hi, lobe_lo};
    t.none_of = {second};
    finalize(t);
    return t;
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Lemon: return "lemon";
        case Family::Moon: return "moon";
        case Family::Flower: return "flower";
        case Family::Circle: return "circle";
        case Family::UmbrellaLemon: return "umbrella-lemon";
        case Family::UmbrellaMoon1: return "umbrella-moon1";
        case Family::UmbrellaMoon2: return "umbrella-moon2";
        case Family::NUmbrella: return "n-umbrella";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "lemon") return Family::Lemon;
    if (name == "moon") return Family::Moon;
    if (name == "flower") return Family::Flower;
    if (name == "circle") return Family::Circle;
    if (name == "umbrella-lemon" || name == "ulemon") return Family::UmbrellaLemon;
    if (name == "umbrella-moon1" || name == "moon1") return Family::UmbrellaMoon1;
    if (name == "umbrella-moon2" || name == "moon2") return Family::UmbrellaMoon2;
    if (name == "n-umbrella" || name == "numbrella") return Family::NUmbrella;
    throw InvalidSpec("unknown table family: " + name);
}

bool is_umbrella(Family f) {
    return f == Family::UmbrellaLemon || f == Family::UmbrellaMoon1 ||
           f == Family::UmbrellaMoon2 || f == Family::NUmbrella;
}

double ArcSegment::local_s(const Vec2& p) const {
    const Vec2 r = p - circle.center;
    const double phi = std::atan2(r.y, r.x);
    const double fwd = (dphi >= 0.0) ? wrap_angle(phi - phi_start)
                                     : wrap_angle(phi_start - phi);
    // Endpoint roundoff can wrap to just under 2*pi.
    const double span = std::abs(dphi);
    const double clipped = (fwd > span && fwd > kPi + 0.5 * span) ? 0.0
                         : std::min(fwd, span);
    return clipped * circle.radius;
}

bool ArcSegment::spans_angle(double phi, double tol_rad) const {
    const double fwd = (dphi >= 0.0) ? wrap_angle(phi - phi_start)
                                     : wrap_angle(phi_start - phi);
    return fwd <= std::abs(dphi) + tol_rad || fwd >= kTwoPi - tol_rad;
}

int BilliardTable::arc_index_at(double s) const {
    int lo = 0, hi = static_cast<int>(arcs.size()) - 1;
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (arcs[mid].s_offset <= s) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

bool BilliardTable::contains(const Vec2& p, double tol) const {
    for (const auto& c : all_of)
        if (c.boundary_depth(p) > tol) return false;
    if (!any_of.empty()) {
        bool in_any = false;
        for (const auto& c : any_of)
            if (c.boundary_depth(p) <= tol) { in_any = true; break; }
        if (!in_any) return false;
    }
    for (const auto& c : none_of)
        if (c.boundary_depth(p) < -tol) return false;
    return true;
}

double BilliardTable::corner_distance(double s) const {
    if (corners.empty()) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (double c : corners)
        best = std::min(best, std::abs(wrap_signed(s - c, total_length)));
    return best;
}

BoundaryPoint BilliardTable::boundary_point(double s, CornerSide side) const {
    return boundary_eval(*this, s, side);
}

BilliardTable build_table(const TableSpec& spec) {
    switch (spec.family) {
        case Family::Lemon:
            if (spec.B1 != 0.0) fail(describe(spec) + ": base family requires B1 = 0");
            return build_lemon(spec);
        case Family::Moon:
            if (spec.B1 != 0.0) fail(describe(spec) + ": base family requires B1 = 0");
            return build_moon(spec);
        case Family::Flower:
            if (spec.B1 != 0.0) fail(describe(spec) + ": base family requires B1 = 0");
            return build_flower(spec);
        case Family::Circle:
            if (spec.R <= 0.0) fail("circle table needs a positive radius");
            return make_circle_table(spec.R);
        case Family::UmbrellaLemon:
            return build_numbrella(spec, 2);
        case Family::NUmbrella:
            return build_numbrella(spec, spec.n);
        case Family::UmbrellaMoon1:
            return build_umbrella_moon1(spec);
        case Family::UmbrellaMoon2:
            return build_umbrella_moon2(spec);
    }
    fail("unhandled family");
}

BilliardTable make_circle_table(double radius) {
    BilliardTable t;
    t.spec = TableSpec(Family::Circle, radius, 0.0);
    ArcSegment arc;
    arc.circle = Circle{{0.0, 0.0}, radius};
    arc.phi_start = 0.0;
    arc.dphi = kTwoPi;
    arc.orientation = ArcOrientation::Focusing;
    t.arcs.push_back(arc);
    t.all_of = {arc.circle};
    finalize(t);
    return t;
}

double max_offset(const TableSpec& spec) {
    if (!is_umbrella(spec.family))
        fail(describe(spec) + ": max offset is defined for umbrella families only");
    auto valid = [&](double b1) {
        TableSpec probe = spec;
        probe.B1 = b1;
        try {
            build_table(probe);
            return true;
        } catch (const InvalidSpec&) {
            return false;
        }
    };
    if (!valid(0.0)) fail(describe(spec) + ": base table is already invalid");
    double hi = 2.0;
    if (valid(hi - 1e-12)) return hi;
    double lo = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double mid = 0.5 * (lo + hi);
        (valid(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

BoundaryPoint boundary_eval(const BilliardTable& table, double s, CornerSide side) {
    if (!(s >= 0.0) || s >= table.total_length)
        throw OutOfRange("arc length parameter outside [0, |boundary|)");
    int idx = table.arc_index_at(s);
    double local = s - table.arcs[idx].s_offset;
    if (side == CornerSide::Before && local == 0.0) {
        idx = (idx + static_cast<int>(table.arcs.size()) - 1) %
              static_cast<int>(table.arcs.size());
        local = table.arcs[idx].length();
    }
    const ArcSegment& arc = table.arcs[idx];
    const double phi = arc.phi_at(local);
    const Vec2 radial{std::cos(phi), std::sin(phi)};
    const double dir = arc.dphi >= 0.0 ? 1.0 : -1.0;
    BoundaryPoint bp;
    bp.position = arc.circle.center + arc.circle.radius * radial;
    bp.tangent = dir * radial.perp();
    bp.curvature = arc.signed_curvature();
    bp.arc_index = idx;
    return bp;
}

}  // namespace umbrella
