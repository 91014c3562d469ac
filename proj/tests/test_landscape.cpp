#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hamflow/error.hpp"
#include "hamflow/image_io.hpp"
#include "hamflow/scalar_field.hpp"
#include "hamflow/vector_field.hpp"
#include "test_support.hpp"

using namespace hamflow;
using namespace testsupport;

TEST_SUITE_BEGIN("landscape");

TEST_CASE("pgm binary load copies pixels") {
    TempDir dir("pgm");
    const std::string path = dir.file("t.pgm");
    const unsigned char pix[4] = {0, 255, 128, 64};
    std::string data = "P5\n2 2\n255\n";
    data.append(reinterpret_cast<const char*>(pix), 4);
    write_text(path, data);

    const ScalarField f = load_scalar_field(path);
    CHECK(f.width == 2);
    CHECK(f.height == 2);
    CHECK(f.values == std::vector<double>{0, 255, 128, 64});
}

TEST_CASE("pgm ascii load with comments") {
    TempDir dir("pgm2");
    const std::string path = dir.file("t.pgm");
    write_text(path, "P2\n# a comment\n3 2\n255\n0 10 20\n30 40 50\n");
    const ScalarField f = load_scalar_field(path);
    CHECK(f.width == 3);
    CHECK(f.at(2, 1) == 50);
}

TEST_CASE("pgm maxval rescales to [0,255]") {
    TempDir dir("pgm3");
    const std::string path = dir.file("t.pgm");
    write_text(path, "P2\n2 2\n15\n0 15 5 10\n");
    const ScalarField f = load_scalar_field(path);
    CHECK(f.at(1, 0) == doctest::Approx(255.0));
    CHECK(f.at(0, 1) == doctest::Approx(5.0 * 255.0 / 15.0));
}

TEST_CASE("truncated pgm header is a data error") {
    TempDir dir("pgm4");
    const std::string path = dir.file("t.pgm");
    write_text(path, "P5\n2 ");
    CHECK_THROWS_AS(load_scalar_field(path), DataError);
}

TEST_CASE("degenerate 1x5 image rejected") {
    TempDir dir("pgm5");
    const std::string path = dir.file("t.pgm");
    write_text(path, "P2\n1 5\n255\n1 2 3 4 5\n");
    CHECK_THROWS_WITH_AS(load_scalar_field(path),
                         doctest::Contains("zero-dimension or degenerate"), DataError);
}

TEST_CASE("missing file is a data error") {
    CHECK_THROWS_AS(load_scalar_field("/nonexistent/nope.pgm"), DataError);
}

TEST_CASE("png round trip") {
    TempDir dir("png");
    const std::string path = dir.file("t.png");
    const ScalarField f = make_field(5, 4, [](int c, int r) { return double((c * 7 + r * 13) % 256); });
    save_png(f, path);
    const ScalarField g = load_scalar_field(path);
    REQUIRE(g.width == 5);
    REQUIRE(g.height == 4);
    CHECK(g.values == f.values);
}

TEST_CASE("field cache round trip preserves doubles exactly") {
    TempDir dir("cache");
    const std::string path = dir.file("t.hsf");
    const ScalarField f = make_field(3, 2, [](int c, int r) { return 0.1 * c + 1e-7 * r + 3.25; });
    save_field_cache(f, path);
    const ScalarField g = load_scalar_field(path);  // magic sniffing dispatch
    CHECK(g.values == f.values);
}

TEST_CASE("smooth sigma zero is the identity") {
    const ScalarField f = gaussian_bump(11, 2.0);
    const ScalarField g = smooth(f, 0.0);
    CHECK(g.values == f.values);
}

TEST_CASE("smooth preserves constant fields") {
    const ScalarField f = make_field(9, 9, [](int, int) { return 42.0; });
    const ScalarField g = smooth(f, 2.0);
    for (double v : g.values) CHECK(v == doctest::Approx(42.0).epsilon(1e-12));
}

TEST_CASE("smooth delta image matches the brute-force kernel") {
    // Oracle: normalized truncated kernel computed directly.
    const double sigma = 1.0;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    const double g00 = k[radius] * k[radius];

    ScalarField f(15, 15, 0.0);
    f.at(7, 7) = 255.0;
    const ScalarField s = smooth(f, sigma);
    CHECK(s.at(7, 7) == doctest::Approx(255.0 * g00).epsilon(1e-12));
    // Off-center sample against the same kernel.
    CHECK(s.at(8, 7) == doctest::Approx(255.0 * k[radius + 1] * k[radius]).epsilon(1e-12));
}

TEST_CASE("smooth rejects negative sigma") {
    CHECK_THROWS_AS(smooth(bowl_field(5), -1.0), NumericError);
}

TEST_CASE("gradient of a constant field is zero") {
    const VectorField g = gradient(make_field(8, 8, [](int, int) { return 3.0; }));
    for (double v : g.u) CHECK(v == 0.0);
    for (double v : g.v) CHECK(v == 0.0);
}

TEST_CASE("gradient of the ramp I=x is (1,0) everywhere") {
    const VectorField g = gradient(ramp_x(8));
    for (int row = 0; row < 8; ++row) {
        for (int col = 0; col < 8; ++col) {
            CHECK(g.u_at(col, row) == 1.0);  // one-sided edges agree on a linear field
            CHECK(g.v_at(col, row) == 0.0);
        }
    }
}

TEST_CASE("central differences are exact on the bowl") {
    // I = x^2 + y^2 on a 21x21 grid centered at the origin; the analytic
    // gradient at (x,y)=(3,4) is (6,8) and central differences reproduce
    // quadratics exactly.
    const ScalarField f = bowl_field(21);
    const VectorField g = gradient(f);
    const int c = 10;
    CHECK(g.u_at(c + 3, c + 4) == 6.0);
    CHECK(g.v_at(c + 3, c + 4) == 8.0);
}

TEST_CASE("derive_systems on ramp and bowl") {
    const SystemPair ramp = derive_systems(ramp_x(8));
    CHECK(ramp.neg_grad.u_at(4, 4) == -1.0);
    CHECK(ramp.neg_grad.v_at(4, 4) == 0.0);
    CHECK(ramp.hamiltonian.u_at(4, 4) == 0.0);
    CHECK(ramp.hamiltonian.v_at(4, 4) == 1.0);

    const SystemPair bowl = derive_systems(bowl_field(21));
    const int c = 10;
    CHECK(bowl.neg_grad.u_at(c + 3, c + 4) == -6.0);
    CHECK(bowl.neg_grad.v_at(c + 3, c + 4) == -8.0);
    CHECK(bowl.hamiltonian.u_at(c + 3, c + 4) == -8.0);
    CHECK(bowl.hamiltonian.v_at(c + 3, c + 4) == 6.0);
}

TEST_CASE("orthogonality and rotation identity hold exactly on random fields") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 255.0);
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField f = make_field(16, 12, [&](int, int) { return uni(rng); });
        const SystemPair sys = derive_systems(f);
        for (std::size_t i = 0; i < sys.neg_grad.u.size(); ++i) {
            const double dot = sys.neg_grad.u[i] * sys.hamiltonian.u[i] +
                               sys.neg_grad.v[i] * sys.hamiltonian.v[i];
            CHECK(dot == 0.0);
            // hamiltonian = neg_grad rotated by -90 degrees: (a,b) -> (b,-a)
            CHECK(sys.hamiltonian.u[i] == sys.neg_grad.v[i]);
            CHECK(sys.hamiltonian.v[i] == -sys.neg_grad.u[i]);
        }
    }
}

TEST_CASE("gradient is invariant to constant offsets") {
    // Integer-valued pixels (image data) make the cancellation exact.
    ScalarField f = gaussian_bump(15, 3.0, 200.0);
    for (double& v : f.values) v = std::round(v);
    const VectorField g0 = gradient(f);
    const VectorField g1 = gradient(offset(f, 17.0));
    CHECK(g0.u == g1.u);
    CHECK(g0.v == g1.v);
}

TEST_CASE("gradient error shrinks at least 3x when resolution doubles") {
    // Gaussian bump sampled over the same physical square at h and h/2.
    const double sigma = 0.6;  // physical units on [-2,2]^2
    auto max_interior_err = [sigma](int n) {
        const double h = 4.0 / (n - 1);
        const int c = (n - 1) / 2;
        const ScalarField f = make_field(n, n, [&](int col, int row) {
            const double x = (col - c) * h;
            const double y = (row - c) * h;
            return std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
        });
        const VectorField g = gradient(f);
        double worst = 0.0;
        for (int row = 1; row < n - 1; ++row) {
            for (int col = 1; col < n - 1; ++col) {
                const double x = (col - c) * h;
                const double y = (row - c) * h;
                const double gx = -x / (sigma * sigma) * std::exp(-(x * x + y * y) / (2 * sigma * sigma));
                const double gy = -y / (sigma * sigma) * std::exp(-(x * x + y * y) / (2 * sigma * sigma));
                // lattice-space derivative = physical derivative * h
                worst = std::max(worst, std::fabs(g.u_at(col, row) - gx * h) / h);
                worst = std::max(worst, std::fabs(g.v_at(col, row) - gy * h) / h);
            }
        }
        return worst;
    };
    const double coarse = max_interior_err(41);
    const double fine = max_interior_err(81);
    CHECK(fine * 3.0 <= coarse);
}

TEST_CASE("normalize quadrant conventions") {
    const DirectionField east = uniform_direction_field(3, 3, 1.0, 0.0);
    CHECK(east.angle_at(1, 1) == 0.0);

    const DirectionField north = uniform_direction_field(3, 3, 0.0, -1.0);
    CHECK(north.angle_at(1, 1) == doctest::Approx(3.0 * std::numbers::pi / 2.0));

    const DirectionField tiny = uniform_direction_field(3, 3, 1e-15, 0.0, 1e-9);
    CHECK(tiny.stationary(1, 1));
    CHECK(tiny.angle_at(1, 1) == 0.0);
    CHECK(tiny.magnitude_at(1, 1) == doctest::Approx(1e-15));
}

TEST_CASE("normalize requires positive eps") {
    const VectorField vf = make_vector_field(3, 3, [](int, int) { return std::pair{1.0, 0.0}; });
    CHECK_THROWS_AS(normalize(vf, 0.0), NumericError);
}

TEST_CASE("direction field of offset image matches at non-stationary points") {
    ScalarField f = gaussian_bump(15, 3.0, 200.0);
    for (double& v : f.values) v = std::round(v);
    const DirectionField d0 = normalize(derive_systems(f).neg_grad, 1e-9);
    const DirectionField d1 = normalize(derive_systems(offset(f, 9.0)).neg_grad, 1e-9);
    for (int row = 0; row < 15; ++row) {
        for (int col = 0; col < 15; ++col) {
            if (!d0.stationary(col, row)) {
                CHECK(d0.angle_at(col, row) == d1.angle_at(col, row));
            }
        }
    }
}

TEST_CASE("average_image identities and errors") {
    const ScalarField a = make_field(4, 4, [](int, int) { return 10.0; });
    const ScalarField b = make_field(4, 4, [](int, int) { return 30.0; });

    CHECK(average_image({a}).values == a.values);
    const ScalarField mean = average_image({a, b});
    for (double v : mean.values) CHECK(v == 20.0);

    CHECK_THROWS_AS(average_image({}), DataError);
    CHECK_THROWS_AS(average_image({a, ScalarField(3, 4)}), DataError);
}

TEST_SUITE_END();
