#pragma once

#include <cstdint>
#include <string>

#include "hamflow/detect.hpp"

namespace hamflow {

/// Pipeline knobs shared by the CLI commands. A hash of the effective
/// config is embedded in every output artifact.
struct RunConfig {
    std::size_t min_orbit_len = 8;
    std::size_t max_orbit_len = 0;  // 0 -> 4 * (width + height) of the canonical
    double eps_stationary = 1e-9;
    double sigma = 0.0;             // Gaussian pre-smoothing; 0 matches the raw pipeline
    DirectionMode direction_mode = DirectionMode::Wrapped;
    std::size_t rounds = 20;
    std::uint64_t haar_target = 27000;
    unsigned threads = 0;           // 0 -> hardware concurrency
    std::uint64_t seed = 1;
    double scale_factor = 1.25;
    int stride = 2;
    bool normalize_window = false;

    BankConfig bank_config() const {
        return BankConfig{min_orbit_len, max_orbit_len, eps_stationary};
    }
    ScanConfig scan_config() const {
        return ScanConfig{scale_factor, stride, normalize_window};
    }
};

/// Plain key = value lines, '#' comments, blank lines ignored. Unknown keys
/// and unparsable values raise DataError with the offending line number.
RunConfig parse_config_file(const std::string& path);

/// Applies one key = value pair; throws DataError for unknown keys or bad
/// values.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Round-trippable serialization with a fixed key order; the form that gets
/// hashed.
std::string canonical_config_string(const RunConfig& cfg);

/// 16 hex digits: FNV-1a 64 over canonical_config_string.
std::string config_hash(const RunConfig& cfg);

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string to_hex16(std::uint64_t value);

}  // namespace hamflow
