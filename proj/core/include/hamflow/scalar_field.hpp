#pragma once

#include <cstddef>
#include <vector>

namespace hamflow {

/// Real-valued intensity landscape sampled on a W x H pixel lattice.
///
/// Storage is row-major with row 0 at the top of the image. Throughout the
/// library x is the column index (increasing rightward) and y the row index
/// (increasing downward); every angle and orientation convention downstream
/// is stated in this frame.
struct ScalarField {
    int width = 0;
    int height = 0;
    std::vector<double> values;  // width * height entries, row-major

    ScalarField() = default;
    ScalarField(int w, int h, double fill = 0.0);

    double at(int col, int row) const {
        return values[static_cast<std::size_t>(row) * width + col];
    }
    double& at(int col, int row) {
        return values[static_cast<std::size_t>(row) * width + col];
    }
    bool in_bounds(int col, int row) const {
        return col >= 0 && col < width && row >= 0 && row < height;
    }
    bool same_shape(const ScalarField& other) const {
        return width == other.width && height == other.height;
    }
    std::size_t size() const { return values.size(); }
};

/// Throws DataError unless both dimensions are >= 2 and every value is
/// finite.
void validate(const ScalarField& f, const char* what = "scalar field");

/// Gaussian smoothing with reflective (symmetric) boundary handling.
/// sigma == 0 returns an identical copy; the kernel is truncated at
/// ceil(3 * sigma) and renormalized. Throws NumericError for sigma < 0.
ScalarField smooth(const ScalarField& f, double sigma);

/// Pointwise arithmetic mean of a nonempty list of same-shaped fields.
ScalarField average_image(const std::vector<ScalarField>& fields);

/// field + c at every lattice point.
ScalarField offset(const ScalarField& f, double c);

/// 255 - field at every lattice point.
ScalarField invert(const ScalarField& f);

}  // namespace hamflow
