#pragma once

#include <cstddef>
#include <vector>

#include "hamflow/vector_field.hpp"

namespace hamflow {

struct LatticePoint {
    int col = 0;
    int row = 0;
    bool operator==(const LatticePoint&) const = default;
};

/// Lattice-constrained solution curve. All points are distinct and
/// consecutive points are 8-neighbors (Chebyshev distance 1). For a closed
/// orbit the forward step from the last point returns to the first, so the
/// point list is one full cycle without a repeated endpoint.
struct Orbit {
    std::vector<LatticePoint> points;
    bool closed = false;
    std::size_t seed_index = 0;  // position of the seed within points
    double seed_level = 0.0;     // intensity at the seed, when known
};

enum class StepKind { Next, OutOfBounds, Stationary };

struct StepOutcome {
    StepKind kind = StepKind::Stationary;
    LatticePoint next;  // meaningful only when kind == Next
};

enum class TraceDirection { Forward, Backward };

/// One move of the midpoint stepper on the unit-normalized field: advance
/// half a pixel along the direction at p, blend the four lattice vectors
/// around that midpoint with inverse-square-distance weights (stationary or
/// out-of-bounds corners contribute zero), and return the 8-neighbor of p
/// best aligned with the blended vector. Angle ties break toward the lowest
/// index in the fixed enumeration E, SE, S, SW, W, NW, N, NE.
///
/// Returns Stationary when p is stationary or the blend vanishes, and
/// OutOfBounds when the chosen neighbor would leave the lattice.
StepOutcome step(const DirectionField& df, LatticePoint p,
                 TraceDirection dir = TraceDirection::Forward);

/// Complete orbit through seed: iterate step() forward until out-of-bounds,
/// stationary, a revisit, or max_len points. Only an exact return to the
/// seed closes the orbit; any other revisit truncates it open. Open orbits
/// get the backward trace (step() on the reversed field) prepended under the
/// same stopping rules.
///
/// seed_level is read from *intensity when provided. Throws
/// std::invalid_argument for a stationary or out-of-bounds seed.
Orbit trace_orbit(const DirectionField& df, LatticePoint seed, std::size_t max_len,
                  const ScalarField* intensity = nullptr);

/// Scans the lattice in row-major order; every non-stationary pixel not yet
/// covered by a previously traced orbit seeds trace_orbit. Orbits shorter
/// than min_len are discarded but their points still mark coverage.
/// max_len == 0 selects the default 4 * (width + height).
std::vector<Orbit> extract_all_orbits(const DirectionField& df, std::size_t min_len,
                                      std::size_t max_len = 0,
                                      const ScalarField* intensity = nullptr);

/// Shoelace sum over the cyclic point sequence in (col, row) coordinates.
double shoelace_sum(const Orbit& orbit);

/// Returns the orbit with its cycle ordered so the shoelace sum is positive,
/// reversing the point order if needed; idempotent. Requires a closed orbit
/// of >= 4 points; throws NumericError when the polygon is degenerate
/// (zero shoelace sum).
Orbit orient_positive(const Orbit& orbit);

}  // namespace hamflow
