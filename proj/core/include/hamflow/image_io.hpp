#pragma once

#include <string>
#include <vector>

#include "hamflow/scalar_field.hpp"

namespace hamflow {

/// Loads a grayscale image as a ScalarField with intensities in [0, 255]
/// (a maxval other than 255 is rescaled). Row 0 is the top image row.
///
/// Supported on disk: binary PGM (P5), ASCII PGM (P2), 8-bit grayscale PNG,
/// and the native field cache written by save_field_cache(). Dispatch sniffs
/// the file header, not the extension. Images smaller than 2x2 are rejected.
ScalarField load_scalar_field(const std::string& path);

/// Little-endian flat binary cache: 8-byte magic "HAMFLD01", u32 width,
/// u32 height, then width*height f64 values. Used for canonical images.
void save_field_cache(const ScalarField& f, const std::string& path);
ScalarField load_field_cache(const std::string& path);

/// Binary PGM (P5), values rounded and clamped to [0, 255].
void save_pgm(const ScalarField& f, const std::string& path);

/// 8-bit grayscale PNG, values rounded and clamped to [0, 255].
void save_png(const ScalarField& f, const std::string& path);

/// In-memory PNG encoding of the same 8-bit grayscale rendering.
std::vector<unsigned char> encode_png(const ScalarField& f);

}  // namespace hamflow
