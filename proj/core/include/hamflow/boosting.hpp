#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hamflow/features.hpp"

namespace hamflow {

/// Threshold stump over one feature column. Predicts 1 iff
/// polarity * value < polarity * threshold.
struct Stump {
    std::size_t feature_idx = 0;
    double threshold = 0.0;
    int polarity = +1;  // +1 or -1

    int predict(double value) const {
        return (polarity > 0 ? value < threshold : value > threshold) ? 1 : 0;
    }
};

struct StumpFit {
    Stump stump;
    double error = 0.0;  // weighted misclassification
};

/// Exhaustive scan over candidate thresholds: midpoints between consecutive
/// distinct sorted values plus one sentinel below the minimum and one above
/// the maximum, under both polarities. Ties prefer the smaller threshold,
/// then polarity +1. Weights must be nonnegative and sum to 1 within 1e-9.
StumpFit train_stump(std::span<const double> values, std::span<const int> labels,
                     std::span<const double> weights);

struct WeightedStump {
    Stump stump;
    double alpha = 0.0;
};

struct StrongClassifier {
    std::vector<WeightedStump> rounds;
    double decision_threshold = 0.0;  // default half the alpha sum

    double score(std::span<const double> features) const;
};

struct TrainRound {
    std::size_t feature_idx = 0;
    std::string kind;  // feature kind of the selected column, when known
    double threshold = 0.0;
    int polarity = +1;
    double error = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double elapsed_s = 0.0;  // cumulative wall clock at the end of the round
};

struct TrainReport {
    std::vector<TrainRound> rounds;
    double total_seconds = 0.0;
};

/// Discrete AdaBoost over threshold stumps. Initial weights 1/(2m) for the
/// m positives and 1/(2l) for the l negatives; per round the weights are
/// normalized, the globally best stump across all columns is selected (ties
/// to the lowest feature index), the error is clamped to
/// [1e-10, 1 - 1e-10], beta = e/(1-e), alpha = ln(1/beta), and correctly
/// classified samples are downweighted by beta. The stump search
/// parallelizes across columns with a deterministic argmin reduction.
///
/// Requires rounds >= 1 and at least one row of each class. column_kinds,
/// when given, labels the report rows.
StrongClassifier adaboost(const FeatureMatrix& matrix, std::size_t rounds, unsigned threads = 0,
                          TrainReport* report = nullptr,
                          const std::vector<std::string>* column_kinds = nullptr);

struct Classification {
    int label = 0;
    double margin = 0.0;  // score - decision_threshold; label 1 iff margin >= 0
};

/// Throws DataError when the vector does not cover every referenced
/// feature index.
Classification classify(const StrongClassifier& sc, std::span<const double> features);

/// Sorted unique feature indices the classifier reads.
std::vector<std::size_t> referenced_features(const StrongClassifier& sc);

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Threshold sweep over all distinct scores, thresholds strictly
/// decreasing, with the (0, 0) and (1, 1) endpoints included.
struct RocCurve {
    std::vector<RocPoint> points;
};

RocCurve roc(const StrongClassifier& sc, const FeatureMatrix& matrix);

}  // namespace hamflow
