#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamflow/streamline.hpp"
#include "hamflow/vector_field.hpp"

namespace testsupport {

using hamflow::DirectionField;
using hamflow::LatticePoint;
using hamflow::Orbit;
using hamflow::ScalarField;
using hamflow::VectorField;

inline ScalarField make_field(int w, int h, const std::function<double(int, int)>& fn) {
    ScalarField f(w, h);
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            f.at(col, row) = fn(col, row);
        }
    }
    return f;
}

// I = x^2 + y^2 in lattice units, centered on the middle pixel of an n x n
// grid (n odd).
inline ScalarField bowl_field(int n) {
    const int c = n / 2;
    return make_field(n, n, [c](int col, int row) {
        const double x = col - c;
        const double y = row - c;
        return x * x + y * y;
    });
}

inline ScalarField saddle_field(int n) {
    const int c = n / 2;
    return make_field(n, n, [c](int col, int row) {
        const double x = col - c;
        const double y = row - c;
        return x * x - y * y;
    });
}

inline ScalarField ramp_x(int n) {
    return make_field(n, n, [](int col, int) { return double(col); });
}

// A * exp(-(x^2 + y^2) / (2 sigma^2)) centered on the middle pixel.
inline ScalarField gaussian_bump(int n, double sigma_px, double amplitude = 255.0) {
    const int c = n / 2;
    return make_field(n, n, [c, sigma_px, amplitude](int col, int row) {
        const double x = col - c;
        const double y = row - c;
        return amplitude * std::exp(-(x * x + y * y) / (2.0 * sigma_px * sigma_px));
    });
}

inline VectorField make_vector_field(int w, int h,
                                     const std::function<std::pair<double, double>(int, int)>& fn) {
    VectorField vf(w, h);
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            const auto [u, v] = fn(col, row);
            vf.u[vf.index(col, row)] = u;
            vf.v[vf.index(col, row)] = v;
        }
    }
    return vf;
}

inline DirectionField make_direction_field(
    int w, int h, const std::function<std::pair<double, double>(int, int)>& fn,
    double eps = 1e-9) {
    return hamflow::normalize(make_vector_field(w, h, fn), eps);
}

inline DirectionField uniform_direction_field(int w, int h, double u, double v,
                                              double eps = 1e-9) {
    return make_direction_field(w, h, [u, v](int, int) { return std::pair{u, v}; }, eps);
}

// Synthetic 8-connected closed lattice circle, positively oriented in the
// (col, row) shoelace convention (theta-increasing sweep).
inline Orbit lattice_circle(int cx, int cy, double r) {
    if (r < 2.0) throw std::invalid_argument("lattice_circle: radius too small");
    Orbit o;
    o.closed = true;
    const int steps = static_cast<int>(std::ceil(16.0 * r));
    for (int i = 0; i < steps; ++i) {
        const double t = 2.0 * std::numbers::pi * i / steps;
        const LatticePoint p{cx + static_cast<int>(std::lround(r * std::cos(t))),
                             cy + static_cast<int>(std::lround(r * std::sin(t)))};
        if (!o.points.empty() && p == o.points.back()) continue;
        if (o.points.size() > 1 && p == o.points.front()) break;
        o.points.push_back(p);
    }
    while (o.points.size() > 1 && o.points.back() == o.points.front()) o.points.pop_back();
    // Sanity: distinct points, 8-adjacency around the cycle.
    for (std::size_t k = 0; k < o.points.size(); ++k) {
        const auto& a = o.points[k];
        const auto& b = o.points[(k + 1) % o.points.size()];
        const int dc = std::abs(a.col - b.col);
        const int dr = std::abs(a.row - b.row);
        if (dc > 1 || dr > 1 || (dc == 0 && dr == 0)) {
            throw std::logic_error("lattice_circle: adjacency violated");
        }
        for (std::size_t j = k + 1; j < o.points.size(); ++j) {
            if (o.points[j] == a) throw std::logic_error("lattice_circle: duplicate point");
        }
    }
    return o;
}

inline Orbit lattice_ellipse(int cx, int cy, double ra, double rb) {
    Orbit o;
    o.closed = true;
    const int steps = static_cast<int>(std::ceil(16.0 * std::max(ra, rb)));
    for (int i = 0; i < steps; ++i) {
        const double t = 2.0 * std::numbers::pi * i / steps;
        const LatticePoint p{cx + static_cast<int>(std::lround(ra * std::cos(t))),
                             cy + static_cast<int>(std::lround(rb * std::sin(t)))};
        if (!o.points.empty() && p == o.points.back()) continue;
        if (o.points.size() > 1 && p == o.points.front()) break;
        o.points.push_back(p);
    }
    while (o.points.size() > 1 && o.points.back() == o.points.front()) o.points.pop_back();
    return o;
}

inline Orbit reversed_orbit(const Orbit& o) {
    Orbit out = o;
    const std::size_t n = o.points.size();
    for (std::size_t k = 1; k < n; ++k) out.points[k] = o.points[n - k];
    out.seed_index = o.seed_index == 0 ? 0 : n - o.seed_index;
    return out;
}

// Uniform noise in [-amp, amp] on both components, seeded.
inline VectorField add_uniform_noise(const VectorField& vf, double amp, std::uint64_t seed) {
    VectorField out = vf;
    std::mt19937_64 rng(seed);
    auto uni = [&rng, amp] {
        return amp * (2.0 * (static_cast<double>(rng()) / 18446744073709551616.0) - 1.0);
    };
    for (std::size_t i = 0; i < out.u.size(); ++i) {
        out.u[i] += uni();
        out.v[i] += uni();
    }
    return out;
}

// Scratch directory under the system temp dir, unique per tag.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("hamflow_test_" + tag + "_" + std::to_string(counter()++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace testsupport
