#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamflow/scalar_field.hpp"

namespace hamflow {

enum class Label { Face, NonFace };
enum class Split { Train, Test };

const char* to_string(Label label);
const char* to_string(Split split);

struct ManifestEntry {
    std::string path;  // resolved against the manifest directory
    Label label = Label::Face;
    Split split = Split::Train;
};

struct Manifest {
    std::string base_dir;
    std::vector<ManifestEntry> entries;

    std::vector<std::string> select(Split split, Label label) const;
};

/// CSV with header "path,label,split"; labels face|nonface, splits
/// train|test. Relative paths resolve against the manifest's directory.
/// Errors (missing file, unknown token, duplicate path) name the offending
/// row number.
Manifest load_manifest(const std::string& csv_path);

/// Seeded pseudo-random patch source over a set of clutter images. Draws
/// are a pure function of the seed, so repeated runs are byte-identical.
/// Patch positions snap to multiples of stride.
struct PatchSampler {
    std::vector<ScalarField> sources;
    int patch_width = 0;
    int patch_height = 0;
    int stride = 1;
    std::uint64_t seed = 1;
};

/// count patches drawn by seeded (image, x, y) selection. Every source must
/// be at least patch-sized; count must be positive.
std::vector<ScalarField> sample_patches(const PatchSampler& sampler, std::size_t count);

/// Loads the matching manifest entries and averages them. Defaults select
/// the training faces, i.e. the canonical image of the object class.
ScalarField build_canonical(const Manifest& manifest, Split split = Split::Train,
                            Label label = Label::Face);

/// Loads every image of one (split, label) cell, in manifest order.
std::vector<ScalarField> load_split(const Manifest& manifest, Split split, Label label);

}  // namespace hamflow
