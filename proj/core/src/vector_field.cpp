#include "hamflow/vector_field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hamflow/error.hpp"

namespace hamflow {

VectorField::VectorField(int w, int h)
    : width(w),
      height(h),
      u(static_cast<std::size_t>(w) * h, 0.0),
      v(static_cast<std::size_t>(w) * h, 0.0) {}

VectorField gradient(const ScalarField& f) {
    validate(f, "gradient input");
    VectorField g(f.width, f.height);
    const int w = f.width;
    const int h = f.height;
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            double du, dv;
            if (col == 0) {
                du = f.at(1, row) - f.at(0, row);
            } else if (col == w - 1) {
                du = f.at(w - 1, row) - f.at(w - 2, row);
            } else {
                du = (f.at(col + 1, row) - f.at(col - 1, row)) / 2.0;
            }
            if (row == 0) {
                dv = f.at(col, 1) - f.at(col, 0);
            } else if (row == h - 1) {
                dv = f.at(col, h - 1) - f.at(col, h - 2);
            } else {
                dv = (f.at(col, row + 1) - f.at(col, row - 1)) / 2.0;
            }
            const std::size_t i = g.index(col, row);
            g.u[i] = du;
            g.v[i] = dv;
        }
    }
    return g;
}

SystemPair derive_systems(const ScalarField& f) {
    const VectorField g = gradient(f);
    SystemPair out{VectorField(f.width, f.height), VectorField(f.width, f.height)};
    for (std::size_t i = 0; i < g.u.size(); ++i) {
        out.neg_grad.u[i] = -g.u[i];
        out.neg_grad.v[i] = -g.v[i];
        // 90-degree rotation of the gradient: level curves of the landscape.
        out.hamiltonian.u[i] = -g.v[i];
        out.hamiltonian.v[i] = g.u[i];
    }
    return out;
}

DirectionField normalize(const VectorField& vf, double eps_stationary) {
    if (!(eps_stationary > 0)) {
        throw NumericError("eps_stationary must be positive, got " +
                           std::to_string(eps_stationary));
    }
    DirectionField df;
    df.width = vf.width;
    df.height = vf.height;
    df.eps_stationary = eps_stationary;
    df.angle.resize(vf.u.size());
    df.magnitude.resize(vf.u.size());
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < vf.u.size(); ++i) {
        const double mag = std::hypot(vf.u[i], vf.v[i]);
        df.magnitude[i] = mag;
        if (mag <= eps_stationary) {
            df.angle[i] = 0.0;  // stationary convention
            continue;
        }
        double a = std::atan2(vf.v[i], vf.u[i]);
        if (a < 0) a += two_pi;
        if (a >= two_pi) a = 0.0;  // guard against atan2(-0, ...) rounding
        df.angle[i] = a;
    }
    return df;
}

}  // namespace hamflow
