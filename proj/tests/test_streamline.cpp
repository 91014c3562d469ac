#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hamflow/error.hpp"
#include "hamflow/streamline.hpp"
#include "test_support.hpp"

using namespace hamflow;
using namespace testsupport;

TEST_SUITE_BEGIN("streamline");

TEST_CASE("step advances straight in a uniform field") {
    const DirectionField df = uniform_direction_field(12, 12, 1.0, 0.0);
    const StepOutcome out = step(df, {5, 5});
    REQUIRE(out.kind == StepKind::Next);
    CHECK(out.next == LatticePoint{6, 5});
}

TEST_CASE("step takes the diagonal in a diagonal field") {
    // Hand evaluation: midpoint (5.354, 5.354), blended vector (1,1)/sqrt(2),
    // and the SE neighbor minimizes the angle.
    const double s = std::sqrt(0.5);
    const DirectionField df = uniform_direction_field(12, 12, s, s);
    const StepOutcome out = step(df, {5, 5});
    REQUIRE(out.kind == StepKind::Next);
    CHECK(out.next == LatticePoint{6, 6});
}

TEST_CASE("step stops at the boundary") {
    const DirectionField df = uniform_direction_field(8, 8, 1.0, 0.0);
    CHECK(step(df, {7, 3}).kind == StepKind::OutOfBounds);
}

TEST_CASE("step reports stationary on a zero field") {
    const DirectionField df = uniform_direction_field(8, 8, 0.0, 0.0);
    CHECK(step(df, {4, 4}).kind == StepKind::Stationary);
}

TEST_CASE("backward step reverses the uniform field") {
    const DirectionField df = uniform_direction_field(12, 12, 1.0, 0.0);
    const StepOutcome out = step(df, {5, 5}, TraceDirection::Backward);
    REQUIRE(out.kind == StepKind::Next);
    CHECK(out.next == LatticePoint{4, 5});
}

TEST_CASE("trace on the ramp yields a full vertical column") {
    // Hamiltonian flow of I=x is the uniform field (0,1): straight down.
    const ScalarField ramp = ramp_x(20);
    const DirectionField df = normalize(derive_systems(ramp).hamiltonian, 1e-9);
    const Orbit o = trace_orbit(df, {10, 10}, 4 * 40, &ramp);
    CHECK_FALSE(o.closed);
    REQUIRE(o.points.size() == 20);
    for (int row = 0; row < 20; ++row) {
        CHECK(o.points[row] == LatticePoint{10, row});
    }
    CHECK(o.seed_index == 10);
    CHECK(o.seed_level == 10.0);
}

TEST_CASE("trace on the bowl closes and follows the seed level set") {
    // Orbits of the Hamiltonian system are level curves; the traced orbit
    // must stay within 15% of the seed level (level-set oracle).
    const ScalarField bowl = bowl_field(41);
    const DirectionField df = normalize(derive_systems(bowl).hamiltonian, 1e-9);
    const int c = 20;
    const Orbit o = trace_orbit(df, {c + 8, c}, 4 * 82, &bowl);
    CHECK(o.closed);
    CHECK(o.points.size() >= 8);
    CHECK(o.seed_level == 64.0);
    for (const LatticePoint& p : o.points) {
        CHECK(std::fabs(bowl.at(p.col, p.row) - 64.0) <= 0.15 * 64.0);
    }
}

TEST_CASE("stationary seed is rejected") {
    const DirectionField df = uniform_direction_field(8, 8, 0.0, 0.0);
    CHECK_THROWS_AS(trace_orbit(df, {4, 4}, 100), std::invalid_argument);
}

TEST_CASE("trace respects max_len") {
    const DirectionField df = uniform_direction_field(50, 50, 1.0, 0.0);
    const Orbit o = trace_orbit(df, {25, 25}, 10);
    CHECK(o.points.size() == 10);
}

TEST_CASE("extract_all_orbits on a constant image is empty") {
    const ScalarField flat = make_field(16, 16, [](int, int) { return 9.0; });
    const DirectionField df = normalize(derive_systems(flat).hamiltonian, 1e-9);
    CHECK(extract_all_orbits(df, 2).empty());
}

TEST_CASE("extract_all_orbits on the ramp yields one orbit per column") {
    // Enumeration oracle: the uniform downward field makes orbits disjoint
    // vertical lines, seeded along row 0 in column order.
    const ScalarField ramp = ramp_x(20);
    const DirectionField df = normalize(derive_systems(ramp).hamiltonian, 1e-9);
    const std::vector<Orbit> orbits = extract_all_orbits(df, 2, 0, &ramp);
    REQUIRE(orbits.size() == 20);
    for (int col = 0; col < 20; ++col) {
        CHECK(orbits[col].points.size() == 20);
        CHECK(orbits[col].points.front().col == col);
        CHECK_FALSE(orbits[col].closed);
    }
}

TEST_CASE("extract_all_orbits covers every non-stationary pixel and terminates") {
    const ScalarField bump = gaussian_bump(31, 6.0);
    const DirectionField df = normalize(derive_systems(bump).hamiltonian, 1e-9);
    const std::vector<Orbit> orbits = extract_all_orbits(df, 1);

    std::set<std::pair<int, int>> covered;
    for (const Orbit& o : orbits) {
        for (const LatticePoint& p : o.points) covered.insert({p.col, p.row});
        // adjacency invariant, including closure for closed orbits
        const std::size_t n = o.points.size();
        const std::size_t last = o.closed ? n : n - 1;
        for (std::size_t k = 0; k < last; ++k) {
            const auto& a = o.points[k];
            const auto& b = o.points[(k + 1) % n];
            CHECK(std::max(std::abs(a.col - b.col), std::abs(a.row - b.row)) == 1);
        }
    }
    // min_len 1 discards nothing, so accepted orbits cover every
    // non-stationary pixel.
    for (int row = 0; row < 31; ++row) {
        for (int col = 0; col < 31; ++col) {
            if (!df.stationary(col, row)) {
                CHECK(covered.contains(std::pair{col, row}));
            }
        }
    }
}

TEST_CASE("extract_all_orbits is deterministic") {
    const ScalarField bump = gaussian_bump(31, 6.0);
    const DirectionField df = normalize(derive_systems(bump).hamiltonian, 1e-9);
    const auto a = extract_all_orbits(df, 4);
    const auto b = extract_all_orbits(df, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].points.size() == b[i].points.size());
        CHECK(a[i].closed == b[i].closed);
        CHECK(std::equal(a[i].points.begin(), a[i].points.end(), b[i].points.begin()));
    }
}

TEST_CASE("bowl landscape produces closed orbits") {
    const ScalarField bowl = bowl_field(41);
    const DirectionField df = normalize(derive_systems(bowl).hamiltonian, 1e-9);
    const std::vector<Orbit> orbits = extract_all_orbits(df, 8, 0, &bowl);
    int closed = 0;
    for (const Orbit& o : orbits) {
        if (o.closed) ++closed;
    }
    CHECK(closed >= 1);
}

TEST_CASE("orient_positive flips a negatively wound diamond") {
    Orbit o;
    o.closed = true;
    // Diamond listed with negative shoelace sum in the (col,row) frame.
    o.points = {{2, 1}, {1, 0}, {0, 1}, {1, 2}};
    REQUIRE(shoelace_sum(o) < 0);
    const Orbit fixed = orient_positive(o);
    CHECK(shoelace_sum(fixed) > 0);
    CHECK(fixed.points.front() == o.points.front());  // cycle start preserved

    // Idempotence.
    const Orbit again = orient_positive(fixed);
    CHECK(std::equal(again.points.begin(), again.points.end(), fixed.points.begin()));
}

TEST_CASE("orient_positive rejects degenerate polygons") {
    Orbit o;
    o.closed = true;
    o.points = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};  // collinear: zero area
    CHECK_THROWS_AS(orient_positive(o), NumericError);
}

TEST_CASE("orient_positive keeps seed_index on the seed") {
    Orbit o;
    o.closed = true;
    o.points = {{2, 1}, {1, 0}, {0, 1}, {1, 2}};
    o.seed_index = 2;
    const LatticePoint seed = o.points[o.seed_index];
    const Orbit fixed = orient_positive(o);
    CHECK(fixed.points[fixed.seed_index] == seed);
}

TEST_SUITE_END();
