#include "hamflow/detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hamflow/error.hpp"
#include "hamflow/parallel.hpp"

namespace hamflow {

ScalarField resample_bilinear(const ScalarField& f, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1) {
        throw std::invalid_argument("resample_bilinear: output dims must be positive");
    }
    ScalarField out(out_w, out_h);
    // Corner-aligned mapping; a same-size resample is an exact copy.
    const double sx = out_w > 1 ? double(f.width - 1) / (out_w - 1) : 0.0;
    const double sy = out_h > 1 ? double(f.height - 1) / (out_h - 1) : 0.0;
    for (int r = 0; r < out_h; ++r) {
        const double fy = r * sy;
        const int y0 = std::min(static_cast<int>(fy), f.height - 1);
        const int y1 = std::min(y0 + 1, f.height - 1);
        const double wy = fy - y0;
        for (int c = 0; c < out_w; ++c) {
            const double fx = c * sx;
            const int x0 = std::min(static_cast<int>(fx), f.width - 1);
            const int x1 = std::min(x0 + 1, f.width - 1);
            const double wx = fx - x0;
            const double top = f.at(x0, y0) * (1.0 - wx) + f.at(x1, y0) * wx;
            const double bot = f.at(x0, y1) * (1.0 - wx) + f.at(x1, y1) * wx;
            out.at(c, r) = top * (1.0 - wy) + bot * wy;
        }
    }
    return out;
}

double box_iou(const Detection& a, const Detection& b) {
    const int x1 = std::max(a.x, b.x);
    const int y1 = std::max(a.y, b.y);
    const int x2 = std::min(a.x + a.w, b.x + b.w);
    const int y2 = std::min(a.y + a.h, b.y + b.h);
    const double inter = std::max(0, x2 - x1) * static_cast<double>(std::max(0, y2 - y1));
    const double uni = static_cast<double>(a.w) * a.h + static_cast<double>(b.w) * b.h - inter;
    return uni > 0 ? inter / uni : 0.0;
}

std::vector<Detection> suppress_overlaps(std::vector<Detection> detections, double iou_threshold) {
    std::sort(detections.begin(), detections.end(), [](const Detection& a, const Detection& b) {
        if (a.margin != b.margin) return a.margin > b.margin;
        if (a.y != b.y) return a.y < b.y;
        if (a.x != b.x) return a.x < b.x;
        return a.w < b.w;
    });
    std::vector<Detection> kept;
    for (const Detection& d : detections) {
        bool overlaps = false;
        for (const Detection& k : kept) {
            if (box_iou(d, k) > iou_threshold) {
                overlaps = true;
                break;
            }
        }
        if (!overlaps) kept.push_back(d);
    }
    return kept;
}

namespace {

ScalarField normalize_window(const ScalarField& f) {
    double mean = 0.0;
    for (double v : f.values) mean += v;
    mean /= static_cast<double>(f.size());
    double var = 0.0;
    for (double v : f.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(f.size());
    const double inv_sd = var > 0 ? 1.0 / std::sqrt(var) : 0.0;
    ScalarField out = f;
    for (double& v : out.values) v = (v - mean) * inv_sd;
    return out;
}

}  // namespace

std::vector<Detection> detect(const StrongClassifier& sc, const ColumnProvider& provider,
                              const ScalarField& image, const ScanConfig& scan, unsigned threads) {
    const int base_w = provider.image_width();
    const int base_h = provider.image_height();
    if (image.width < base_w || image.height < base_h) {
        throw DataError("image " + std::to_string(image.width) + "x" + std::to_string(image.height) +
                        " is smaller than the " + std::to_string(base_w) + "x" +
                        std::to_string(base_h) + " scan window");
    }
    if (!(scan.scale_factor > 1.0)) {
        throw std::invalid_argument("detect: scale_factor must be > 1");
    }

    const std::vector<std::size_t> needed = referenced_features(sc);
    const std::size_t all_cols = provider.columns();

    // All candidate windows, enumerated deterministically: scale-major,
    // then row-major.
    struct Window {
        int x, y, w, h;
    };
    std::vector<Window> windows;
    for (double s = 1.0;; s *= scan.scale_factor) {
        const int win_w = static_cast<int>(std::lround(base_w * s));
        const int win_h = static_cast<int>(std::lround(base_h * s));
        if (win_w > image.width || win_h > image.height) break;
        const int stride = std::max(1, static_cast<int>(std::lround(scan.stride * s)));
        for (int y = 0; y + win_h <= image.height; y += stride) {
            for (int x = 0; x + win_w <= image.width; x += stride) {
                windows.push_back({x, y, win_w, win_h});
            }
        }
    }

    std::vector<double> margins(windows.size());
    parallel_chunks(windows.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> features(all_cols, 0.0);
        std::vector<double> selected(needed.size());
        for (std::size_t i = begin; i < end; ++i) {
            const Window& win = windows[i];
            ScalarField crop(win.w, win.h);
            for (int r = 0; r < win.h; ++r) {
                for (int c = 0; c < win.w; ++c) {
                    crop.at(c, r) = image.at(win.x + c, win.y + r);
                }
            }
            ScalarField patch = (win.w == base_w && win.h == base_h)
                                    ? std::move(crop)
                                    : resample_bilinear(crop, base_w, base_h);
            if (scan.normalize_window) patch = normalize_window(patch);
            provider.evaluate_selected(patch, needed, selected.data());
            for (std::size_t k = 0; k < needed.size(); ++k) {
                features[needed[k]] = selected[k];
            }
            margins[i] = sc.score(features) - sc.decision_threshold;
        }
    });

    std::vector<Detection> hits;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (margins[i] >= 0.0) {
            hits.push_back({windows[i].x, windows[i].y, windows[i].w, windows[i].h, margins[i]});
        }
    }
    return suppress_overlaps(std::move(hits));
}

}  // namespace hamflow
