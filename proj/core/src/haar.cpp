#include "hamflow/haar.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hamflow/error.hpp"

namespace hamflow {

const char* to_string(HaarKind kind) {
    switch (kind) {
        case HaarKind::TwoRectH: return "two_rect_h";
        case HaarKind::TwoRectV: return "two_rect_v";
        case HaarKind::ThreeRectH: return "three_rect_h";
        case HaarKind::ThreeRectV: return "three_rect_v";
        case HaarKind::FourRect: return "four_rect";
    }
    return "?";
}

namespace {

constexpr HaarKind kKinds[5] = {HaarKind::TwoRectH, HaarKind::TwoRectV, HaarKind::ThreeRectH,
                                HaarKind::ThreeRectV, HaarKind::FourRect};

struct KindSpan {
    int sx = 1;
    int sy = 1;
};

// Footprint of the base rectangle, in multiples of (w, h).
KindSpan kind_span(HaarKind kind) {
    switch (kind) {
        case HaarKind::TwoRectH: return {2, 1};
        case HaarKind::TwoRectV: return {1, 2};
        case HaarKind::ThreeRectH: return {3, 1};
        case HaarKind::ThreeRectV: return {1, 3};
        case HaarKind::FourRect: return {2, 2};
    }
    return {};
}

}  // namespace

int HaarFeature::footprint_w() const { return kind_span(kind).sx * w; }

int HaarFeature::footprint_h() const { return kind_span(kind).sy * h; }

IntegralImage integral(const ScalarField& f) {
    IntegralImage ii;
    ii.width = f.width;
    ii.height = f.height;
    ii.sums.assign(static_cast<std::size_t>(f.width + 1) * (f.height + 1), 0.0);
    const int stride = f.width + 1;
    for (int r = 0; r < f.height; ++r) {
        double row_sum = 0.0;
        for (int c = 0; c < f.width; ++c) {
            row_sum += f.at(c, r);
            ii.sums[static_cast<std::size_t>(r + 1) * stride + (c + 1)] =
                ii.sums[static_cast<std::size_t>(r) * stride + (c + 1)] + row_sum;
        }
    }
    return ii;
}

double eval_haar(const HaarFeature& f, const IntegralImage& ii) {
    if (f.w < 1 || f.h < 1 || f.x < 0 || f.y < 0 || f.x + f.footprint_w() > ii.width ||
        f.y + f.footprint_h() > ii.height) {
        throw DataError("haar feature footprint out of bounds");
    }
    const int x = f.x, y = f.y, w = f.w, h = f.h;
    switch (f.kind) {
        case HaarKind::TwoRectH:
            return ii.rect_sum(x, y, w, h) - ii.rect_sum(x + w, y, w, h);
        case HaarKind::TwoRectV:
            return ii.rect_sum(x, y, w, h) - ii.rect_sum(x, y + h, w, h);
        case HaarKind::ThreeRectH:
            // Middle rectangle weighted twice: zero response on constants.
            return ii.rect_sum(x, y, w, h) + ii.rect_sum(x + 2 * w, y, w, h) -
                   2.0 * ii.rect_sum(x + w, y, w, h);
        case HaarKind::ThreeRectV:
            return ii.rect_sum(x, y, w, h) + ii.rect_sum(x, y + 2 * h, w, h) -
                   2.0 * ii.rect_sum(x, y + h, w, h);
        case HaarKind::FourRect:
            return ii.rect_sum(x, y, w, h) + ii.rect_sum(x + w, y + h, w, h) -
                   ii.rect_sum(x + w, y, w, h) - ii.rect_sum(x, y + h, w, h);
    }
    throw std::logic_error("unreachable haar kind");
}

std::uint64_t exhaustive_haar_count(int width, int height) {
    std::uint64_t total = 0;
    for (HaarKind kind : kKinds) {
        const auto [sx, sy] = kind_span(kind);
        for (int w = 1; sx * w <= width; ++w) {
            for (int h = 1; sy * h <= height; ++h) {
                total += static_cast<std::uint64_t>(width - sx * w + 1) *
                         static_cast<std::uint64_t>(height - sy * h + 1);
            }
        }
    }
    return total;
}

std::vector<HaarFeature> enumerate_haar(int width, int height, std::uint64_t target_count) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("enumerate_haar: window must be at least 1x1");
    }
    if (target_count < 1) {
        throw std::invalid_argument("enumerate_haar: target_count must be >= 1");
    }
    const std::uint64_t total = exhaustive_haar_count(width, height);
    const std::uint64_t keep = std::min(target_count, total);

    // Uniform pick over the fixed enumeration order: feature i survives
    // when floor((i+1)*keep/total) advances past floor(i*keep/total).
    std::vector<HaarFeature> out;
    out.reserve(static_cast<std::size_t>(keep));
    std::uint64_t i = 0;
    std::uint64_t taken = 0;
    for (HaarKind kind : kKinds) {
        const auto [sx, sy] = kind_span(kind);
        for (int w = 1; sx * w <= width; ++w) {
            for (int h = 1; sy * h <= height; ++h) {
                for (int y = 0; y + sy * h <= height; ++y) {
                    for (int x = 0; x + sx * w <= width; ++x) {
                        const std::uint64_t next = (i + 1) * keep / total;
                        if (next > taken) {
                            out.push_back({kind, x, y, w, h});
                            taken = next;
                        }
                        ++i;
                    }
                }
            }
        }
    }
    return out;
}

HaarColumns::HaarColumns(int width, int height, std::vector<HaarFeature> features)
    : width_(width), height_(height), features_(std::move(features)) {
    for (const HaarFeature& f : features_) {
        if (f.x + f.footprint_w() > width_ || f.y + f.footprint_h() > height_) {
            throw DataError("haar feature footprint exceeds the window");
        }
    }
}

std::size_t HaarColumns::columns() const { return features_.size(); }
int HaarColumns::image_width() const { return width_; }
int HaarColumns::image_height() const { return height_; }

std::string HaarColumns::column_name(std::size_t j) const {
    return "h" + std::to_string(j) + "_" + to_string(features_[j].kind);
}

std::string HaarColumns::column_kind(std::size_t j) const {
    return std::string("haar_") + to_string(features_[j].kind);
}

void HaarColumns::evaluate_row(const ScalarField& img, double* out) const {
    const IntegralImage ii = integral(img);
    for (std::size_t j = 0; j < features_.size(); ++j) {
        out[j] = eval_haar(features_[j], ii);
    }
}

void HaarColumns::evaluate_selected(const ScalarField& img,
                                    const std::vector<std::size_t>& indices, double* out) const {
    const IntegralImage ii = integral(img);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        out[i] = eval_haar(features_.at(indices[i]), ii);
    }
}

}  // namespace hamflow
