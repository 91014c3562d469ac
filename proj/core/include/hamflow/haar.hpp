#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamflow/features.hpp"

namespace hamflow {

/// Cumulative-sum table with a zero top row and left column; entry (r, c)
/// holds the sum of all pixels above and to the left of (r, c). Any
/// rectangle sum takes 4 lookups.
struct IntegralImage {
    int width = 0;   // source image dims
    int height = 0;
    std::vector<double> sums;  // (width + 1) * (height + 1), row-major

    double table_at(int r, int c) const {
        return sums[static_cast<std::size_t>(r) * (width + 1) + c];
    }
    /// Sum over the w x h rectangle whose top-left pixel is (x, y).
    double rect_sum(int x, int y, int w, int h) const {
        return table_at(y + h, x + w) - table_at(y, x + w) - table_at(y + h, x) + table_at(y, x);
    }
};

IntegralImage integral(const ScalarField& f);

enum class HaarKind { TwoRectH, TwoRectV, ThreeRectH, ThreeRectV, FourRect };

const char* to_string(HaarKind kind);

/// Base rectangle (x, y, w, h) in pixels; the full footprint spans
/// 2w x h, w x 2h, 3w x h, w x 3h, or 2w x 2h depending on the kind.
struct HaarFeature {
    HaarKind kind = HaarKind::TwoRectH;
    int x = 0;
    int y = 0;
    int w = 1;
    int h = 1;

    int footprint_w() const;
    int footprint_h() const;
    bool operator==(const HaarFeature&) const = default;
};

/// Signed sum, white rectangles minus black. The middle rectangle of the
/// three-rectangle kinds is weighted twice so every kind responds zero on a
/// constant image. Throws DataError for an out-of-bounds footprint.
double eval_haar(const HaarFeature& f, const IntegralImage& ii);

/// Number of in-bounds (kind, x, y, w, h) combinations for a window.
std::uint64_t exhaustive_haar_count(int width, int height);

/// Deterministic uniform subsample over the exhaustive enumeration order;
/// returns exactly min(target_count, exhaustive count) features, the same
/// list on every call with the same inputs.
std::vector<HaarFeature> enumerate_haar(int width, int height, std::uint64_t target_count);

class HaarColumns : public ColumnProvider {
  public:
    HaarColumns(int width, int height, std::vector<HaarFeature> features);
    std::size_t columns() const override;
    int image_width() const override;
    int image_height() const override;
    std::string column_name(std::size_t j) const override;
    std::string column_kind(std::size_t j) const override;
    void evaluate_row(const ScalarField& img, double* out) const override;
    void evaluate_selected(const ScalarField& img, const std::vector<std::size_t>& indices,
                           double* out) const override;

    const std::vector<HaarFeature>& features() const { return features_; }

  private:
    int width_;
    int height_;
    std::vector<HaarFeature> features_;
};

}  // namespace hamflow
