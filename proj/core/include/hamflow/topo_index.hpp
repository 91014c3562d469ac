#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hamflow/streamline.hpp"

namespace hamflow {

enum class ConleyKind { Disk, TwoPointSet, WedgeOfCircles, Sphere };

/// Homotopy type produced by the discrete pseudo Conley index:
/// D^2, S^0, S^2, or a wedge of n >= 1 circles.
struct ConleyType {
    ConleyKind kind = ConleyKind::Disk;
    int circles = 0;  // n >= 1 when kind == WedgeOfCircles
    bool operator==(const ConleyType&) const = default;
};

std::string to_string(const ConleyType& t);

/// Exit/enter classification of every boundary pixel of a closed orbit.
struct BoundaryFlow {
    std::vector<char> exit_flags;  // cyclic, 1 = exiting; one per orbit point
    std::size_t entering_count = 0;
    std::size_t exiting_count = 0;
};

/// a2 - a1 wrapped into (-pi, pi]. Inputs in [0, 2pi).
double angle_diff(double a2, double a1);

enum class StationaryPolicy {
    Strict,   // stationary pixel on the orbit -> NumericError
    ZeroStep  // steps touching a stationary pixel contribute zero
};

/// Winding number, in turns, of the direction field along a closed
/// positively oriented orbit of >= 4 points: (1/2pi) times the cyclic sum of
/// angle_diff over consecutive orbit pixels, including the closing step.
double poincare_index(const Orbit& orbit, const DirectionField& df,
                      StationaryPolicy policy = StationaryPolicy::Strict);

/// Classifies each orbit pixel as exiting or entering. The tangent at point
/// k is the central difference of its cyclic neighbors; the candidate normal
/// is that tangent rotated 90 degrees, with one global sign chosen so that
/// normals point outward on average (positive mean dot with the offset from
/// the centroid). A pixel is exiting iff dot(vf, normal) > 0; a zero dot
/// product counts as entering. A degenerate tangent inherits the
/// predecessor's flag.
BoundaryFlow boundary_flow(const Orbit& orbit, const VectorField& vf);

/// card(exit set) / card(boundary), in [0, 1].
double continuous_conley(const BoundaryFlow& flow);

/// Counts cyclic maximal runs of exiting pixels: 0 runs -> S^0; 1 run and
/// nothing entering -> S^2; 1 exiting and 1 entering run -> D^2; N >= 2
/// runs -> wedge of N-1 circles.
ConleyType discrete_conley(const BoundaryFlow& flow);

}  // namespace hamflow
