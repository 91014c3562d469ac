#include "hamflow/scalar_field.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "hamflow/error.hpp"

namespace hamflow {

ScalarField::ScalarField(int w, int h, double fill)
    : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {
    if (w < 1 || h < 1) {
        throw DataError("scalar field dimensions must be positive, got " + std::to_string(w) +
                        "x" + std::to_string(h));
    }
}

void validate(const ScalarField& f, const char* what) {
    if (f.width < 2 || f.height < 2) {
        throw DataError(std::string(what) + ": zero-dimension or degenerate image (min dim 2), got " +
                        std::to_string(f.width) + "x" + std::to_string(f.height));
    }
    if (f.values.size() != static_cast<std::size_t>(f.width) * f.height) {
        throw DataError(std::string(what) + ": value count does not match dimensions");
    }
    for (double v : f.values) {
        if (!std::isfinite(v)) {
            throw DataError(std::string(what) + ": non-finite value");
        }
    }
}

namespace {

// Symmetric reflection: ..., f[1], f[0] | f[0], f[1], ...
int reflect(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-0.5 * (double(i) * i) / (sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    return k;
}

}  // namespace

ScalarField smooth(const ScalarField& f, double sigma) {
    if (sigma < 0) {
        throw NumericError("smoothing sigma must be >= 0, got " + std::to_string(sigma));
    }
    if (sigma == 0.0) return f;

    const std::vector<double> kernel = gaussian_kernel(sigma);
    const int radius = static_cast<int>(kernel.size() / 2);

    // Separable convolution: rows, then columns.
    ScalarField tmp(f.width, f.height);
    for (int row = 0; row < f.height; ++row) {
        for (int col = 0; col < f.width; ++col) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                acc += kernel[i + radius] * f.at(reflect(col + i, f.width), row);
            }
            tmp.at(col, row) = acc;
        }
    }
    ScalarField out(f.width, f.height);
    for (int row = 0; row < f.height; ++row) {
        for (int col = 0; col < f.width; ++col) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                acc += kernel[i + radius] * tmp.at(col, reflect(row + i, f.height));
            }
            out.at(col, row) = acc;
        }
    }
    return out;
}

ScalarField average_image(const std::vector<ScalarField>& fields) {
    if (fields.empty()) {
        throw DataError("average_image: empty field list");
    }
    const ScalarField& first = fields.front();
    ScalarField out(first.width, first.height);
    for (std::size_t n = 0; n < fields.size(); ++n) {
        if (!fields[n].same_shape(first)) {
            throw DataError("average_image: field " + std::to_string(n) + " is " +
                            std::to_string(fields[n].width) + "x" + std::to_string(fields[n].height) +
                            ", expected " + std::to_string(first.width) + "x" +
                            std::to_string(first.height));
        }
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            out.values[i] += fields[n].values[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(fields.size());
    for (double& v : out.values) v *= inv;
    return out;
}

ScalarField offset(const ScalarField& f, double c) {
    ScalarField out = f;
    for (double& v : out.values) v += c;
    return out;
}

ScalarField invert(const ScalarField& f) {
    ScalarField out = f;
    for (double& v : out.values) v = 255.0 - v;
    return out;
}

}  // namespace hamflow
