#include "hamflow/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hamflow/error.hpp"
#include "hamflow/serialize.hpp"

namespace hamflow {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string to_hex16(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
    T out{};
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) {
        throw DataError("config key " + key + ": cannot parse \"" + value + "\"");
    }
    return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw DataError("config key " + key + ": expected true/false, got \"" + value + "\"");
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "min_orbit_len") {
        cfg.min_orbit_len = parse_number<std::size_t>(value, key);
    } else if (key == "max_orbit_len") {
        cfg.max_orbit_len = parse_number<std::size_t>(value, key);
    } else if (key == "eps_stationary") {
        cfg.eps_stationary = parse_number<double>(value, key);
    } else if (key == "sigma") {
        cfg.sigma = parse_number<double>(value, key);
    } else if (key == "direction_mode") {
        if (value == "wrapped") {
            cfg.direction_mode = DirectionMode::Wrapped;
        } else if (value == "raw") {
            cfg.direction_mode = DirectionMode::Raw;
        } else {
            throw DataError("config key direction_mode: expected wrapped|raw, got \"" + value +
                            "\"");
        }
    } else if (key == "rounds") {
        cfg.rounds = parse_number<std::size_t>(value, key);
    } else if (key == "haar_target") {
        cfg.haar_target = parse_number<std::uint64_t>(value, key);
    } else if (key == "threads") {
        cfg.threads = parse_number<unsigned>(value, key);
    } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "scale_factor") {
        cfg.scale_factor = parse_number<double>(value, key);
    } else if (key == "stride") {
        cfg.stride = parse_number<int>(value, key);
    } else if (key == "normalize_window") {
        cfg.normalize_window = parse_bool(value, key);
    } else {
        throw DataError("unknown config key: " + key);
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open config file: " + path);
    }
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DataError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        try {
            apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const DataError& e) {
            throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

std::string canonical_config_string(const RunConfig& cfg) {
    // threads is absent: it never changes results, and artifacts must hash
    // identically at any thread count.
    std::ostringstream out;
    out << "direction_mode = " << (cfg.direction_mode == DirectionMode::Wrapped ? "wrapped" : "raw")
        << "\n"
        << "eps_stationary = " << format_double(cfg.eps_stationary) << "\n"
        << "haar_target = " << cfg.haar_target << "\n"
        << "max_orbit_len = " << cfg.max_orbit_len << "\n"
        << "min_orbit_len = " << cfg.min_orbit_len << "\n"
        << "normalize_window = " << (cfg.normalize_window ? "true" : "false") << "\n"
        << "rounds = " << cfg.rounds << "\n"
        << "scale_factor = " << format_double(cfg.scale_factor) << "\n"
        << "seed = " << cfg.seed << "\n"
        << "sigma = " << format_double(cfg.sigma) << "\n"
        << "stride = " << cfg.stride << "\n";
    return out.str();
}

std::string config_hash(const RunConfig& cfg) {
    const std::string s = canonical_config_string(cfg);
    return to_hex16(fnv1a64(s.data(), s.size()));
}

}  // namespace hamflow
