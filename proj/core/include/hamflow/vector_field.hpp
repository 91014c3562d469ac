#pragma once

#include <cstddef>
#include <vector>

#include "hamflow/scalar_field.hpp"

namespace hamflow {

/// Planar velocity field on the image lattice. u is the component along x
/// (columns), v along y (rows, increasing downward).
struct VectorField {
    int width = 0;
    int height = 0;
    std::vector<double> u;
    std::vector<double> v;

    VectorField() = default;
    VectorField(int w, int h);

    std::size_t index(int col, int row) const {
        return static_cast<std::size_t>(row) * width + col;
    }
    double u_at(int col, int row) const { return u[index(col, row)]; }
    double v_at(int col, int row) const { return v[index(col, row)]; }
    bool in_bounds(int col, int row) const {
        return col >= 0 && col < width && row >= 0 && row < height;
    }
};

/// Normalized form of a vector field: per-point angle in [0, 2pi) measured
/// from +x toward +y, plus the pre-normalization magnitude. Points with
/// magnitude <= eps_stationary are stationary; their angle is 0 by
/// convention and the magnitude is stored as-is.
struct DirectionField {
    int width = 0;
    int height = 0;
    double eps_stationary = 1e-9;
    std::vector<double> angle;
    std::vector<double> magnitude;

    std::size_t index(int col, int row) const {
        return static_cast<std::size_t>(row) * width + col;
    }
    double angle_at(int col, int row) const { return angle[index(col, row)]; }
    double magnitude_at(int col, int row) const { return magnitude[index(col, row)]; }
    bool stationary(int col, int row) const {
        return magnitude[index(col, row)] <= eps_stationary;
    }
    bool in_bounds(int col, int row) const {
        return col >= 0 && col < width && row >= 0 && row < height;
    }
};

/// Finite-difference gradient (+dI/dx, +dI/dy): central differences at
/// interior points, one-sided differences on the boundary rows/columns.
VectorField gradient(const ScalarField& f);

struct SystemPair {
    VectorField neg_grad;     // (-dI/dx, -dI/dy)
    VectorField hamiltonian;  // (-dI/dy, +dI/dx)
};

/// Both flows induced by the landscape. At every lattice point
/// dot(neg_grad, hamiltonian) == 0 exactly, and hamiltonian equals neg_grad
/// rotated by -90 degrees in (x, y): (a, b) -> (b, -a).
SystemPair derive_systems(const ScalarField& f);

/// Full-range arctangent of (v, u) shifted into [0, 2pi); magnitude
/// sqrt(u^2 + v^2). eps_stationary must be positive.
DirectionField normalize(const VectorField& vf, double eps_stationary);

}  // namespace hamflow
