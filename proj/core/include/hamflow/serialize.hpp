#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hamflow/boosting.hpp"
#include "hamflow/detect.hpp"
#include "hamflow/haar.hpp"

namespace hamflow {

/// Extra top-level string fields stamped into JSON artifacts (tool version,
/// config hash, ...). Keys must not collide with payload keys.
using JsonMeta = std::vector<std::pair<std::string, std::string>>;

/// Orbit list as a JSON array of {points, closed, seed_index, seed_level}.
std::string orbits_to_json(std::span<const Orbit> orbits);
/// Accepts either the bare array or an envelope object with an "orbits" key.
std::vector<Orbit> orbits_from_json(const std::string& text);

std::string bank_to_json(const FeatureBank& bank, const JsonMeta& meta = {});
FeatureBank bank_from_json(const std::string& text);

std::string haar_bank_to_json(int width, int height, std::span<const HaarFeature> features,
                              const JsonMeta& meta = {});
struct HaarBank {
    int width = 0;
    int height = 0;
    std::vector<HaarFeature> features;
};
HaarBank haar_bank_from_json(const std::string& text);

std::string model_to_json(const StrongClassifier& sc, const std::string& bank_reference,
                          const JsonMeta& meta = {});
StrongClassifier model_from_json(const std::string& text, std::string* bank_reference = nullptr);

/// CSV rows "threshold,fpr,tpr" with a header.
std::string roc_to_csv(const RocCurve& curve);

/// CSV with a header row of template ids; the label column comes first.
std::string matrix_to_csv(const FeatureMatrix& matrix, std::span<const std::string> column_names);

/// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double value);

/// SVG with the image embedded as a base64 PNG layer and orbits drawn over
/// it, closed orbits in one stroke color, open in another. annotation lands
/// in a comment and a desc element.
std::string orbit_overlay_svg(const ScalarField& image, std::span<const Orbit> orbits,
                              const std::string& annotation);

std::string detection_overlay_svg(const ScalarField& image, std::span<const Detection> detections,
                                  const std::string& annotation);

}  // namespace hamflow
