#include "hamflow/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "hamflow/error.hpp"
#include "hamflow/image_io.hpp"

namespace hamflow {

const char* to_string(Label label) { return label == Label::Face ? "face" : "nonface"; }
const char* to_string(Split split) { return split == Split::Train ? "train" : "test"; }

std::vector<std::string> Manifest::select(Split split, Label label) const {
    std::vector<std::string> out;
    for (const ManifestEntry& e : entries) {
        if (e.split == split && e.label == label) out.push_back(e.path);
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

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace

Manifest load_manifest(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) {
        throw DataError("cannot open manifest: " + csv_path);
    }
    Manifest m;
    m.base_dir = std::filesystem::path(csv_path).parent_path().string();

    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("manifest is empty (expected header path,label,split): " + csv_path);
    }
    {
        const auto header = split_csv_row(line);
        if (header.size() != 3 || header[0] != "path" || header[1] != "label" ||
            header[2] != "split") {
            throw DataError("manifest header must be path,label,split: " + csv_path);
        }
    }

    std::unordered_set<std::string> seen;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_row(line);
        if (cells.size() != 3) {
            throw DataError("manifest row " + std::to_string(row_no) + ": expected 3 cells");
        }
        ManifestEntry e;
        std::filesystem::path p(cells[0]);
        e.path = p.is_absolute() ? p.string() : (std::filesystem::path(m.base_dir) / p).string();
        if (cells[1] == "face") {
            e.label = Label::Face;
        } else if (cells[1] == "nonface") {
            e.label = Label::NonFace;
        } else {
            throw DataError("manifest row " + std::to_string(row_no) + ": unknown label \"" +
                            cells[1] + "\"");
        }
        if (cells[2] == "train") {
            e.split = Split::Train;
        } else if (cells[2] == "test") {
            e.split = Split::Test;
        } else {
            throw DataError("manifest row " + std::to_string(row_no) + ": unknown split \"" +
                            cells[2] + "\"");
        }
        if (!seen.insert(e.path).second) {
            throw DataError("manifest row " + std::to_string(row_no) + ": duplicate path \"" +
                            cells[0] + "\"");
        }
        m.entries.push_back(std::move(e));
    }
    return m;
}

std::vector<ScalarField> sample_patches(const PatchSampler& sampler, std::size_t count) {
    if (count == 0) {
        throw std::invalid_argument("sample_patches: count must be positive");
    }
    if (sampler.sources.empty()) {
        throw DataError("sample_patches: no source images");
    }
    if (sampler.patch_width < 2 || sampler.patch_height < 2) {
        throw DataError("sample_patches: patch size must be at least 2x2");
    }
    const int stride = std::max(1, sampler.stride);
    for (std::size_t i = 0; i < sampler.sources.size(); ++i) {
        if (sampler.sources[i].width < sampler.patch_width ||
            sampler.sources[i].height < sampler.patch_height) {
            throw DataError("sample_patches: source " + std::to_string(i) +
                            " is smaller than the patch size");
        }
    }

    // mt19937_64 with explicit modulo draws: the sequence is pinned by the
    // standard, so patch sets are reproducible byte for byte.
    std::mt19937_64 rng(sampler.seed);
    auto bounded = [&rng](std::uint64_t n) { return n <= 1 ? 0 : rng() % n; };

    std::vector<ScalarField> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t si = static_cast<std::size_t>(bounded(sampler.sources.size()));
        const ScalarField& src = sampler.sources[si];
        const int max_x = (src.width - sampler.patch_width) / stride;
        const int max_y = (src.height - sampler.patch_height) / stride;
        const int x = stride * static_cast<int>(bounded(static_cast<std::uint64_t>(max_x) + 1));
        const int y = stride * static_cast<int>(bounded(static_cast<std::uint64_t>(max_y) + 1));
        ScalarField patch(sampler.patch_width, sampler.patch_height);
        for (int r = 0; r < sampler.patch_height; ++r) {
            for (int c = 0; c < sampler.patch_width; ++c) {
                patch.at(c, r) = src.at(x + c, y + r);
            }
        }
        out.push_back(std::move(patch));
    }
    return out;
}

std::vector<ScalarField> load_split(const Manifest& manifest, Split split, Label label) {
    std::vector<ScalarField> out;
    for (const std::string& path : manifest.select(split, label)) {
        out.push_back(load_scalar_field(path));
    }
    return out;
}

ScalarField build_canonical(const Manifest& manifest, Split split, Label label) {
    const std::vector<ScalarField> fields = load_split(manifest, split, label);
    if (fields.empty()) {
        throw DataError(std::string("build_canonical: no manifest entries for ") +
                        to_string(split) + "/" + to_string(label));
    }
    return average_image(fields);
}

}  // namespace hamflow
