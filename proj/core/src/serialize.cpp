#include "hamflow/serialize.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hamflow/error.hpp"
#include "hamflow/image_io.hpp"

namespace hamflow {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        throw NumericError("format_double failed");
    }
    return std::string(buf, ptr);
}

namespace {

json orbit_to_json_obj(const Orbit& o) {
    json points = json::array();
    for (const LatticePoint& p : o.points) {
        points.push_back(json::array({p.col, p.row}));
    }
    return json{{"points", std::move(points)},
                {"closed", o.closed},
                {"seed_index", o.seed_index},
                {"seed_level", o.seed_level}};
}

Orbit orbit_from_json_obj(const json& j) {
    Orbit o;
    for (const auto& p : j.at("points")) {
        if (!p.is_array() || p.size() != 2) {
            throw DataError("orbit JSON: point must be [col,row]");
        }
        o.points.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    o.closed = j.at("closed").get<bool>();
    o.seed_index = j.value("seed_index", std::size_t{0});
    o.seed_level = j.value("seed_level", 0.0);
    if (o.points.empty()) {
        throw DataError("orbit JSON: empty point list");
    }
    if (o.seed_index >= o.points.size()) {
        throw DataError("orbit JSON: seed_index out of range");
    }
    return o;
}

void apply_meta(json& j, const JsonMeta& meta) {
    for (const auto& [key, value] : meta) {
        j[key] = value;
    }
}

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw DataError(std::string("malformed JSON in ") + what);
    }
    return j;
}

}  // namespace

std::string orbits_to_json(std::span<const Orbit> orbits) {
    json arr = json::array();
    for (const Orbit& o : orbits) {
        arr.push_back(orbit_to_json_obj(o));
    }
    return arr.dump();
}

std::vector<Orbit> orbits_from_json(const std::string& text) {
    json j = parse_json(text, "orbit list");
    if (j.is_object()) {
        if (!j.contains("orbits")) {
            throw DataError("orbit JSON object has no \"orbits\" member");
        }
        j = j["orbits"];
    }
    if (!j.is_array()) {
        throw DataError("orbit JSON must be an array");
    }
    std::vector<Orbit> out;
    out.reserve(j.size());
    for (const auto& item : j) {
        out.push_back(orbit_from_json_obj(item));
    }
    return out;
}

std::string bank_to_json(const FeatureBank& bank, const JsonMeta& meta) {
    json orbits = json::array();
    for (const Orbit& o : bank.orbits) {
        orbits.push_back(orbit_to_json_obj(o));
    }
    json templates = json::array();
    for (const FeatureTemplate& t : bank.templates) {
        json jt{{"kind", to_string(t.kind)}, {"orbit_id", t.orbit_id}};
        if (t.kind == FeatureKind::DensityMatch) jt["ref_density"] = t.ref_density;
        if (t.kind == FeatureKind::DirectionMatch) jt["ref_direction"] = t.ref_direction;
        templates.push_back(std::move(jt));
    }
    json j{{"type", "streamline_bank"},
           {"width", bank.canonical.width},
           {"height", bank.canonical.height},
           {"canonical_values", bank.canonical.values},
           {"min_orbit_len", bank.config.min_orbit_len},
           {"max_orbit_len", bank.config.max_orbit_len},
           {"eps_stationary", bank.config.eps_stationary},
           {"orbits", std::move(orbits)},
           {"templates", std::move(templates)}};
    apply_meta(j, meta);
    return j.dump();
}

FeatureBank bank_from_json(const std::string& text) {
    const json j = parse_json(text, "feature bank");
    if (j.value("type", "") != "streamline_bank") {
        throw DataError("feature bank JSON: wrong or missing type tag");
    }
    FeatureBank bank;
    const int w = j.at("width").get<int>();
    const int h = j.at("height").get<int>();
    bank.canonical = ScalarField(w, h);
    bank.canonical.values = j.at("canonical_values").get<std::vector<double>>();
    if (bank.canonical.values.size() != static_cast<std::size_t>(w) * h) {
        throw DataError("feature bank JSON: canonical value count mismatch");
    }
    bank.config.min_orbit_len = j.at("min_orbit_len").get<std::size_t>();
    bank.config.max_orbit_len = j.at("max_orbit_len").get<std::size_t>();
    bank.config.eps_stationary = j.at("eps_stationary").get<double>();
    for (const auto& item : j.at("orbits")) {
        bank.orbits.push_back(orbit_from_json_obj(item));
    }
    for (const auto& item : j.at("templates")) {
        FeatureTemplate t;
        const std::string kind = item.at("kind").get<std::string>();
        if (kind == "density_match") {
            t.kind = FeatureKind::DensityMatch;
            t.ref_density = item.at("ref_density").get<std::vector<double>>();
        } else if (kind == "direction_match") {
            t.kind = FeatureKind::DirectionMatch;
            t.ref_direction = item.at("ref_direction").get<std::vector<double>>();
        } else if (kind == "poincare_index") {
            t.kind = FeatureKind::PoincareIndex;
        } else if (kind == "conley_index") {
            t.kind = FeatureKind::ConleyIndex;
        } else {
            throw DataError("feature bank JSON: unknown template kind \"" + kind + "\"");
        }
        t.orbit_id = item.at("orbit_id").get<int>();
        if (t.orbit_id < 0 || t.orbit_id >= static_cast<int>(bank.orbits.size())) {
            throw DataError("feature bank JSON: orbit_id out of range");
        }
        const std::size_t len = bank.orbits[t.orbit_id].points.size();
        if ((t.kind == FeatureKind::DensityMatch && t.ref_density.size() != len) ||
            (t.kind == FeatureKind::DirectionMatch && t.ref_direction.size() != len)) {
            throw DataError("feature bank JSON: reference vector length mismatch");
        }
        bank.templates.push_back(std::move(t));
    }
    return bank;
}

std::string haar_bank_to_json(int width, int height, std::span<const HaarFeature> features,
                              const JsonMeta& meta) {
    json arr = json::array();
    for (const HaarFeature& f : features) {
        arr.push_back(json{{"kind", to_string(f.kind)},
                           {"x", f.x},
                           {"y", f.y},
                           {"w", f.w},
                           {"h", f.h}});
    }
    json j{{"type", "haar_bank"}, {"width", width}, {"height", height}, {"features", std::move(arr)}};
    apply_meta(j, meta);
    return j.dump();
}

HaarBank haar_bank_from_json(const std::string& text) {
    const json j = parse_json(text, "haar bank");
    if (j.value("type", "") != "haar_bank") {
        throw DataError("haar bank JSON: wrong or missing type tag");
    }
    HaarBank bank;
    bank.width = j.at("width").get<int>();
    bank.height = j.at("height").get<int>();
    for (const auto& item : j.at("features")) {
        HaarFeature f;
        const std::string kind = item.at("kind").get<std::string>();
        if (kind == "two_rect_h") {
            f.kind = HaarKind::TwoRectH;
        } else if (kind == "two_rect_v") {
            f.kind = HaarKind::TwoRectV;
        } else if (kind == "three_rect_h") {
            f.kind = HaarKind::ThreeRectH;
        } else if (kind == "three_rect_v") {
            f.kind = HaarKind::ThreeRectV;
        } else if (kind == "four_rect") {
            f.kind = HaarKind::FourRect;
        } else {
            throw DataError("haar bank JSON: unknown kind \"" + kind + "\"");
        }
        f.x = item.at("x").get<int>();
        f.y = item.at("y").get<int>();
        f.w = item.at("w").get<int>();
        f.h = item.at("h").get<int>();
        bank.features.push_back(f);
    }
    return bank;
}

std::string model_to_json(const StrongClassifier& sc, const std::string& bank_reference,
                          const JsonMeta& meta) {
    json rounds = json::array();
    for (const WeightedStump& r : sc.rounds) {
        rounds.push_back(json{{"feature_idx", r.stump.feature_idx},
                              {"threshold", r.stump.threshold},
                              {"polarity", r.stump.polarity},
                              {"alpha", r.alpha}});
    }
    json j{{"type", "strong_classifier"},
           {"bank_reference", bank_reference},
           {"decision_threshold", sc.decision_threshold},
           {"rounds", std::move(rounds)}};
    apply_meta(j, meta);
    return j.dump();
}

StrongClassifier model_from_json(const std::string& text, std::string* bank_reference) {
    const json j = parse_json(text, "model");
    if (j.value("type", "") != "strong_classifier") {
        throw DataError("model JSON: wrong or missing type tag");
    }
    StrongClassifier sc;
    sc.decision_threshold = j.at("decision_threshold").get<double>();
    for (const auto& item : j.at("rounds")) {
        WeightedStump r;
        r.stump.feature_idx = item.at("feature_idx").get<std::size_t>();
        r.stump.threshold = item.at("threshold").get<double>();
        r.stump.polarity = item.at("polarity").get<int>();
        if (r.stump.polarity != 1 && r.stump.polarity != -1) {
            throw DataError("model JSON: polarity must be +1 or -1");
        }
        r.alpha = item.at("alpha").get<double>();
        sc.rounds.push_back(r);
    }
    if (sc.rounds.empty()) {
        throw DataError("model JSON: no rounds");
    }
    if (bank_reference) {
        *bank_reference = j.value("bank_reference", "");
    }
    return sc;
}

std::string roc_to_csv(const RocCurve& curve) {
    std::ostringstream out;
    out << "threshold,fpr,tpr\n";
    for (const RocPoint& p : curve.points) {
        out << format_double(p.threshold) << "," << format_double(p.fpr) << ","
            << format_double(p.tpr) << "\n";
    }
    return out.str();
}

std::string matrix_to_csv(const FeatureMatrix& matrix, std::span<const std::string> column_names) {
    if (column_names.size() != matrix.cols) {
        throw std::invalid_argument("matrix_to_csv: column name count mismatch");
    }
    std::ostringstream out;
    out << "label";
    for (const std::string& name : column_names) {
        out << "," << name;
    }
    out << "\n";
    for (std::size_t i = 0; i < matrix.rows; ++i) {
        out << matrix.labels[i];
        for (std::size_t jcol = 0; jcol < matrix.cols; ++jcol) {
            out << "," << format_double(matrix.at(i, jcol));
        }
        out << "\n";
    }
    return out.str();
}

// -- SVG -----------------------------------------------------------------

namespace {

std::string base64(const std::vector<unsigned char>& bytes) {
    static const char* alphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        const unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back(alphabet[v & 63]);
    }
    const std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        const unsigned v = bytes[i] << 16;
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out += "==";
    } else if (rest == 2) {
        const unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

void svg_open(std::ostringstream& out, const ScalarField& image, const std::string& annotation) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\""
        << " width=\"" << image.width << "\" height=\"" << image.height << "\" viewBox=\"0 0 "
        << image.width << " " << image.height << "\">\n"
        << "<desc>" << xml_escape(annotation) << "</desc>\n"
        << "<image width=\"" << image.width << "\" height=\"" << image.height
        << "\" image-rendering=\"pixelated\" xlink:href=\"data:image/png;base64,"
        << base64(encode_png(image)) << "\"/>\n";
}

}  // namespace

std::string orbit_overlay_svg(const ScalarField& image, std::span<const Orbit> orbits,
                              const std::string& annotation) {
    std::ostringstream out;
    svg_open(out, image, annotation);
    for (const Orbit& o : orbits) {
        // Closed orbits red, open orbits blue; points at pixel centers.
        out << (o.closed ? "<polygon" : "<polyline")
            << " fill=\"none\" stroke=\"" << (o.closed ? "#e63946" : "#457b9d")
            << "\" stroke-width=\"0.6\" points=\"";
        for (std::size_t k = 0; k < o.points.size(); ++k) {
            if (k) out << " ";
            out << (o.points[k].col + 0.5) << "," << (o.points[k].row + 0.5);
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string detection_overlay_svg(const ScalarField& image, std::span<const Detection> detections,
                                  const std::string& annotation) {
    std::ostringstream out;
    svg_open(out, image, annotation);
    for (const Detection& d : detections) {
        out << "<rect fill=\"none\" stroke=\"#2a9d8f\" stroke-width=\"1\" x=\"" << d.x << "\" y=\""
            << d.y << "\" width=\"" << d.w << "\" height=\"" << d.h << "\"><title>margin "
            << format_double(d.margin) << "</title></rect>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace hamflow
