#pragma once

#include <vector>

#include "hamflow/boosting.hpp"

namespace hamflow {

/// Axis-aligned box in source-image pixels, plus the classifier margin.
struct Detection {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
    double margin = 0.0;
};

struct ScanConfig {
    double scale_factor = 1.25;    // geometric step between window scales
    int stride = 2;                // window stride in pixels, scaled with the window
    bool normalize_window = false; // zero-mean / unit-variance per window
};

/// Bilinear resampling to a new lattice; corner pixels map to corners.
ScalarField resample_bilinear(const ScalarField& f, int out_w, int out_h);

double box_iou(const Detection& a, const Detection& b);

/// Greedy overlap suppression: margin-descending order (ties by y, x, then
/// size), a detection is kept only if its IoU with every kept box is <= iou_threshold.
std::vector<Detection> suppress_overlaps(std::vector<Detection> detections,
                                         double iou_threshold = 0.3);

/// Sliding-window scan at geometric scale steps. Each window is resampled
/// to the provider's dimensions, only the classifier's referenced columns
/// are evaluated, and windows with margin >= 0 survive into suppression.
/// Throws DataError when the image is smaller than the base window.
std::vector<Detection> detect(const StrongClassifier& sc, const ColumnProvider& provider,
                              const ScalarField& image, const ScanConfig& scan,
                              unsigned threads = 0);

}  // namespace hamflow
