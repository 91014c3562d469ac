#include "hamflow/topo_index.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hamflow/error.hpp"

namespace hamflow {

std::string to_string(const ConleyType& t) {
    switch (t.kind) {
        case ConleyKind::Disk: return "D2";
        case ConleyKind::TwoPointSet: return "S0";
        case ConleyKind::Sphere: return "S2";
        case ConleyKind::WedgeOfCircles:
            return t.circles == 1 ? "S1" : "S1^" + std::to_string(t.circles);
    }
    return "?";
}

double angle_diff(double a2, double a1) {
    // Inputs in [0, 2pi) keep d within (-2pi, 2pi); one wrap suffices.
    double d = a2 - a1;
    constexpr double pi = std::numbers::pi;
    if (d > pi) d -= 2.0 * pi;
    if (d <= -pi) d += 2.0 * pi;
    return d;
}

double poincare_index(const Orbit& orbit, const DirectionField& df, StationaryPolicy policy) {
    if (!orbit.closed || orbit.points.size() < 4) {
        throw std::invalid_argument("poincare_index: need a closed orbit of >= 4 points");
    }
    const std::size_t n = orbit.points.size();
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const LatticePoint& a = orbit.points[k];
        const LatticePoint& b = orbit.points[(k + 1) % n];
        const bool a_stat = df.stationary(a.col, a.row);
        const bool b_stat = df.stationary(b.col, b.row);
        if (a_stat || b_stat) {
            if (policy == StationaryPolicy::Strict) {
                throw NumericError("poincare_index: stationary pixel on orbit at (" +
                                   std::to_string(a_stat ? a.col : b.col) + "," +
                                   std::to_string(a_stat ? a.row : b.row) + ")");
            }
            continue;  // ZeroStep
        }
        sum += angle_diff(df.angle_at(b.col, b.row), df.angle_at(a.col, a.row));
    }
    return sum / (2.0 * std::numbers::pi);
}

BoundaryFlow boundary_flow(const Orbit& orbit, const VectorField& vf) {
    if (!orbit.closed || orbit.points.size() < 4) {
        throw std::invalid_argument("boundary_flow: need a closed orbit of >= 4 points");
    }
    const std::size_t n = orbit.points.size();
    const auto& pts = orbit.points;

    double cx = 0.0, cy = 0.0;
    for (const LatticePoint& p : pts) {
        cx += p.col;
        cy += p.row;
    }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);

    // Candidate normals: tangent rotated 90 degrees; one global sign flip
    // makes them point outward on average.
    std::vector<double> nx(n), ny(n);
    std::vector<char> degenerate(n, 0);
    double outward = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const LatticePoint& prev = pts[(k + n - 1) % n];
        const LatticePoint& next = pts[(k + 1) % n];
        const double tx = (next.col - prev.col) / 2.0;
        const double ty = (next.row - prev.row) / 2.0;
        if (tx == 0.0 && ty == 0.0) {
            degenerate[k] = 1;
            continue;
        }
        nx[k] = -ty;
        ny[k] = tx;
        outward += nx[k] * (pts[k].col - cx) + ny[k] * (pts[k].row - cy);
    }
    if (outward < 0.0) {
        for (std::size_t k = 0; k < n; ++k) {
            nx[k] = -nx[k];
            ny[k] = -ny[k];
        }
    }

    BoundaryFlow flow;
    flow.exit_flags.assign(n, 0);
    std::vector<char> known(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        if (degenerate[k]) continue;
        const double dot = vf.u_at(pts[k].col, pts[k].row) * nx[k] +
                           vf.v_at(pts[k].col, pts[k].row) * ny[k];
        flow.exit_flags[k] = dot > 0.0 ? 1 : 0;  // zero counts as entering
        known[k] = 1;
    }
    // Degenerate tangents inherit the predecessor's flag; two cyclic passes
    // settle any chain that wraps.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < n; ++k) {
            if (known[k]) continue;
            const std::size_t prev = (k + n - 1) % n;
            if (known[prev]) {
                flow.exit_flags[k] = flow.exit_flags[prev];
                known[k] = 1;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (flow.exit_flags[k]) {
            ++flow.exiting_count;
        } else {
            ++flow.entering_count;
        }
    }
    return flow;
}

double continuous_conley(const BoundaryFlow& flow) {
    if (flow.exit_flags.empty()) {
        throw std::invalid_argument("continuous_conley: empty boundary");
    }
    return static_cast<double>(flow.exiting_count) /
           static_cast<double>(flow.exit_flags.size());
}

ConleyType discrete_conley(const BoundaryFlow& flow) {
    const std::size_t n = flow.exit_flags.size();
    if (n == 0) {
        throw std::invalid_argument("discrete_conley: empty boundary");
    }
    // Count cyclic maximal runs of exiting pixels.
    int runs = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const bool cur = flow.exit_flags[k] != 0;
        const bool prev = flow.exit_flags[(k + n - 1) % n] != 0;
        if (cur && !prev) ++runs;
    }
    if (runs == 0 && flow.exiting_count == n) runs = 1;  // all exiting: one full run

    if (runs == 0) return {ConleyKind::TwoPointSet, 0};
    if (runs == 1) {
        return flow.entering_count == 0 ? ConleyType{ConleyKind::Sphere, 0}
                                        : ConleyType{ConleyKind::Disk, 0};
    }
    return {ConleyKind::WedgeOfCircles, runs - 1};
}

}  // namespace hamflow
