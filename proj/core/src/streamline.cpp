#include "hamflow/streamline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "hamflow/error.hpp"

namespace hamflow {

namespace {

// Fixed neighbor enumeration, clockwise from east in the y-down frame.
constexpr int kNeighbor[8][2] = {
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 unit_at(const DirectionField& df, std::size_t i, TraceDirection dir) {
    const double a = df.angle[i];
    const double s = dir == TraceDirection::Forward ? 1.0 : -1.0;
    return {s * std::cos(a), s * std::sin(a)};
}

inline std::uint64_t point_key(const LatticePoint& p) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.row)) << 32) |
           static_cast<std::uint32_t>(p.col);
}

}  // namespace

StepOutcome step(const DirectionField& df, LatticePoint p, TraceDirection dir) {
    if (!df.in_bounds(p.col, p.row)) {
        throw std::invalid_argument("step: point out of bounds");
    }
    if (df.stationary(p.col, p.row)) {
        return {StepKind::Stationary, {}};
    }

    const Vec2 vp = unit_at(df, df.index(p.col, p.row), dir);
    const double zx = p.col + 0.5 * vp.x;
    const double zy = p.row + 0.5 * vp.y;

    // Inverse-square-distance blend over the cell corners around z. The
    // current point is always one of the four corners, so a non-stationary p
    // contributes unless the blend cancels.
    const int x0 = static_cast<int>(std::floor(zx));
    const int y0 = static_cast<int>(std::floor(zy));
    Vec2 vz;
    bool on_grid_point = false;
    for (int dy = 0; dy <= 1 && !on_grid_point; ++dy) {
        for (int dx = 0; dx <= 1; ++dx) {
            const int cx = x0 + dx;
            const int cy = y0 + dy;
            if (!df.in_bounds(cx, cy) || df.stationary(cx, cy)) continue;
            const double ddx = cx - zx;
            const double ddy = cy - zy;
            const double d2 = ddx * ddx + ddy * ddy;
            const Vec2 vc = unit_at(df, df.index(cx, cy), dir);
            if (d2 < 1e-18) {
                // z coincides with this corner: its vector wins outright.
                vz = vc;
                on_grid_point = true;
                break;
            }
            vz.x += vc.x / d2;
            vz.y += vc.y / d2;
        }
    }
    if (vz.x * vz.x + vz.y * vz.y < 1e-18) {
        return {StepKind::Stationary, {}};
    }

    // Best-aligned 8-neighbor of p, measured from the midpoint. Ties keep
    // the earliest entry of the fixed enumeration.
    int best = -1;
    double best_cos = -2.0;
    for (int k = 0; k < 8; ++k) {
        const double dx = p.col + kNeighbor[k][0] - zx;
        const double dy = p.row + kNeighbor[k][1] - zy;
        const double c = (dx * vz.x + dy * vz.y) / std::sqrt(dx * dx + dy * dy);
        if (c > best_cos) {
            best_cos = c;
            best = k;
        }
    }
    const LatticePoint next{p.col + kNeighbor[best][0], p.row + kNeighbor[best][1]};
    if (!df.in_bounds(next.col, next.row)) {
        return {StepKind::OutOfBounds, {}};
    }
    return {StepKind::Next, next};
}

Orbit trace_orbit(const DirectionField& df, LatticePoint seed, std::size_t max_len,
                  const ScalarField* intensity) {
    if (!df.in_bounds(seed.col, seed.row)) {
        throw std::invalid_argument("trace_orbit: seed out of bounds");
    }
    if (df.stationary(seed.col, seed.row)) {
        throw std::invalid_argument("trace_orbit: stationary seed (" + std::to_string(seed.col) +
                                    "," + std::to_string(seed.row) + ")");
    }
    if (max_len < 2) {
        throw std::invalid_argument("trace_orbit: max_len must be >= 2");
    }

    Orbit orbit;
    orbit.points.push_back(seed);
    orbit.seed_level = intensity ? intensity->at(seed.col, seed.row) : 0.0;

    std::unordered_set<std::uint64_t> visited;
    visited.insert(point_key(seed));

    // Forward until a stop; only an exact return to the seed closes.
    LatticePoint cur = seed;
    while (true) {
        const StepOutcome out = step(df, cur, TraceDirection::Forward);
        if (out.kind != StepKind::Next) break;
        if (out.next == seed) {
            orbit.closed = true;
            break;
        }
        if (visited.contains(point_key(out.next))) break;
        if (orbit.points.size() >= max_len) break;
        orbit.points.push_back(out.next);
        visited.insert(point_key(out.next));
        cur = out.next;
    }

    if (!orbit.closed) {
        std::vector<LatticePoint> tail;  // backward side, seed-adjacent first
        cur = seed;
        while (true) {
            const StepOutcome out = step(df, cur, TraceDirection::Backward);
            if (out.kind != StepKind::Next) break;
            if (visited.contains(point_key(out.next))) break;
            if (orbit.points.size() + tail.size() >= max_len) break;
            tail.push_back(out.next);
            visited.insert(point_key(out.next));
            cur = out.next;
        }
        if (!tail.empty()) {
            std::vector<LatticePoint> merged(tail.rbegin(), tail.rend());
            merged.insert(merged.end(), orbit.points.begin(), orbit.points.end());
            orbit.points = std::move(merged);
            orbit.seed_index = tail.size();
        }
    }
    return orbit;
}

std::vector<Orbit> extract_all_orbits(const DirectionField& df, std::size_t min_len,
                                      std::size_t max_len, const ScalarField* intensity) {
    if (min_len < 1) {
        throw std::invalid_argument("extract_all_orbits: min_len must be >= 1");
    }
    if (max_len == 0) {
        max_len = 4 * (static_cast<std::size_t>(df.width) + df.height);
    }

    std::vector<Orbit> accepted;
    std::vector<char> covered(static_cast<std::size_t>(df.width) * df.height, 0);
    for (int row = 0; row < df.height; ++row) {
        for (int col = 0; col < df.width; ++col) {
            const std::size_t i = df.index(col, row);
            if (covered[i] || df.stationary(col, row)) continue;
            Orbit orbit = trace_orbit(df, {col, row}, max_len, intensity);
            for (const LatticePoint& p : orbit.points) {
                covered[df.index(p.col, p.row)] = 1;
            }
            if (orbit.points.size() >= min_len) {
                accepted.push_back(std::move(orbit));
            }
        }
    }
    return accepted;
}

double shoelace_sum(const Orbit& orbit) {
    const auto& pts = orbit.points;
    double s = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const LatticePoint& a = pts[k];
        const LatticePoint& b = pts[(k + 1) % pts.size()];
        s += static_cast<double>(a.col) * b.row - static_cast<double>(b.col) * a.row;
    }
    return s;
}

Orbit orient_positive(const Orbit& orbit) {
    if (!orbit.closed || orbit.points.size() < 4) {
        throw std::invalid_argument("orient_positive: need a closed orbit of >= 4 points");
    }
    const double s = shoelace_sum(orbit);
    if (s == 0.0) {
        throw NumericError("orient_positive: degenerate polygon (zero shoelace sum)");
    }
    if (s > 0.0) return orbit;

    // Reverse the cycle keeping the first point first, so the seed index
    // maps to (n - i) mod n.
    Orbit out = orbit;
    const std::size_t n = orbit.points.size();
    for (std::size_t k = 1; k < n; ++k) {
        out.points[k] = orbit.points[n - k];
    }
    out.seed_index = orbit.seed_index == 0 ? 0 : n - orbit.seed_index;
    return out;
}

}  // namespace hamflow
