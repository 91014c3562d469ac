#include "hamflow/boosting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "hamflow/error.hpp"
#include "hamflow/parallel.hpp"

namespace hamflow {

StumpFit train_stump(std::span<const double> values, std::span<const int> labels,
                     std::span<const double> weights) {
    const std::size_t n = values.size();
    if (n < 2 || labels.size() != n || weights.size() != n) {
        throw std::invalid_argument("train_stump: need >= 2 aligned samples");
    }
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    if (std::fabs(wsum - 1.0) > 1e-9) {
        throw std::invalid_argument("train_stump: weights must sum to 1");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    // With threshold t below every value, polarity +1 predicts all 0:
    // err = total weight of positives. Sweeping t upward past a value moves
    // that sample into the "predict 1" side.
    double w_pos_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] == 1) w_pos_total += weights[i];
    }

    StumpFit best;
    best.error = 2.0;  // worse than any real error
    // Strict improvement keeps the earlier candidate; candidates arrive in
    // increasing threshold order with polarity +1 first, which implements
    // the tie-break.
    auto consider = [&best](double threshold, int polarity, double error) {
        if (error < best.error) {
            best.error = error;
            best.stump.threshold = threshold;
            best.stump.polarity = polarity;
        }
    };

    double err_plus = w_pos_total;  // polarity +1 error at the below-min sentinel
    const double below = values[order[0]] - 1.0;
    consider(below, +1, err_plus);
    consider(below, -1, 1.0 - err_plus);

    std::size_t i = 0;
    while (i < n) {
        // Absorb the whole block of equal values before emitting a threshold.
        const double v = values[order[i]];
        while (i < n && values[order[i]] == v) {
            const std::size_t s = order[i];
            err_plus += labels[s] == 1 ? -weights[s] : weights[s];
            ++i;
        }
        const double next = i < n ? values[order[i]] : v + 2.0;
        const double threshold = i < n ? (v + next) / 2.0 : v + 1.0;  // above-max sentinel
        consider(threshold, +1, err_plus);
        consider(threshold, -1, 1.0 - err_plus);
    }
    return best;
}

double StrongClassifier::score(std::span<const double> features) const {
    double s = 0.0;
    for (const WeightedStump& r : rounds) {
        s += r.alpha * r.stump.predict(features[r.stump.feature_idx]);
    }
    return s;
}

StrongClassifier adaboost(const FeatureMatrix& matrix, std::size_t rounds, unsigned threads,
                          TrainReport* report, const std::vector<std::string>* column_kinds) {
    if (rounds < 1) {
        throw std::invalid_argument("adaboost: rounds must be >= 1");
    }
    const std::size_t n = matrix.rows;
    const std::size_t cols = matrix.cols;
    std::size_t positives = 0;
    for (int y : matrix.labels) {
        if (y == 1) ++positives;
    }
    const std::size_t negatives = n - positives;
    if (positives == 0 || negatives == 0) {
        throw DataError("adaboost: need at least one sample of each class");
    }

    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
        weights[i] = matrix.labels[i] == 1 ? 1.0 / (2.0 * positives) : 1.0 / (2.0 * negatives);
    }

    // Column-major copy so each stump search scans contiguous memory.
    std::vector<double> col_values(n * cols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            col_values[j * n + i] = matrix.at(i, j);
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    StrongClassifier sc;
    std::vector<int> predictions(n);
    for (std::size_t t = 0; t < rounds; ++t) {
        double wsum = 0.0;
        for (double w : weights) wsum += w;
        for (double& w : weights) w /= wsum;

        // Globally best stump; ties resolve to the lowest feature index, so
        // the per-thread argmins merge deterministically.
        std::vector<StumpFit> fits(cols);
        parallel_chunks(cols, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t j = begin; j < end; ++j) {
                fits[j] = train_stump({col_values.data() + j * n, n},
                                      {matrix.labels.data(), n}, {weights.data(), n});
                fits[j].stump.feature_idx = j;
            }
        });
        std::size_t best_j = 0;
        for (std::size_t j = 1; j < cols; ++j) {
            if (fits[j].error < fits[best_j].error) best_j = j;
        }

        const StumpFit& fit = fits[best_j];
        const double eps = std::clamp(fit.error, 1e-10, 1.0 - 1e-10);
        const double beta = eps / (1.0 - eps);
        const double alpha = std::log(1.0 / beta);
        sc.rounds.push_back({fit.stump, alpha});

        for (std::size_t i = 0; i < n; ++i) {
            predictions[i] = fit.stump.predict(col_values[best_j * n + i]);
            if (predictions[i] == matrix.labels[i]) {
                weights[i] *= beta;  // correct samples get lighter
            }
        }

        if (report) {
            TrainRound r;
            r.feature_idx = fit.stump.feature_idx;
            if (column_kinds && best_j < column_kinds->size()) {
                r.kind = (*column_kinds)[best_j];
            }
            r.threshold = fit.stump.threshold;
            r.polarity = fit.stump.polarity;
            r.error = fit.error;
            r.beta = beta;
            r.alpha = alpha;
            r.elapsed_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            report->rounds.push_back(std::move(r));
        }
    }

    double alpha_sum = 0.0;
    for (const WeightedStump& r : sc.rounds) alpha_sum += r.alpha;
    sc.decision_threshold = 0.5 * alpha_sum;
    if (report) {
        report->total_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return sc;
}

Classification classify(const StrongClassifier& sc, std::span<const double> features) {
    for (const WeightedStump& r : sc.rounds) {
        if (r.stump.feature_idx >= features.size()) {
            throw DataError("classify: feature vector missing index " +
                            std::to_string(r.stump.feature_idx));
        }
    }
    const double margin = sc.score(features) - sc.decision_threshold;
    return {margin >= 0.0 ? 1 : 0, margin};
}

std::vector<std::size_t> referenced_features(const StrongClassifier& sc) {
    std::set<std::size_t> uniq;
    for (const WeightedStump& r : sc.rounds) uniq.insert(r.stump.feature_idx);
    return {uniq.begin(), uniq.end()};
}

RocCurve roc(const StrongClassifier& sc, const FeatureMatrix& matrix) {
    std::size_t positives = 0;
    for (int y : matrix.labels) {
        if (y == 1) ++positives;
    }
    const std::size_t negatives = matrix.rows - positives;
    if (positives == 0 || negatives == 0) {
        throw DataError("roc: need at least one sample of each class");
    }

    std::vector<double> scores(matrix.rows);
    for (std::size_t i = 0; i < matrix.rows; ++i) {
        scores[i] = sc.score({matrix.row_ptr(i), matrix.cols});
    }
    std::vector<double> thresholds = scores;
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    RocCurve curve;
    // Start above the maximum score: nothing predicted positive.
    curve.points.push_back({thresholds.front() + 1.0, 0.0, 0.0});
    for (double th : thresholds) {
        std::size_t tp = 0, fp = 0;
        for (std::size_t i = 0; i < matrix.rows; ++i) {
            if (scores[i] >= th) {
                if (matrix.labels[i] == 1) {
                    ++tp;
                } else {
                    ++fp;
                }
            }
        }
        curve.points.push_back({th, static_cast<double>(fp) / negatives,
                                static_cast<double>(tp) / positives});
    }
    return curve;
}

}  // namespace hamflow
