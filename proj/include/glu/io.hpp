#pragma once

#include <string>

#include "glu/image.hpp"
#include "glu/params.hpp"

namespace glu {

// File unreadable, unwritable or undecodable.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally invalid parameter file; names the offending field.
struct FormatError : std::runtime_error {
    std::string field;
    FormatError(std::string fieldName, const std::string& msg)
        : std::runtime_error(msg), field(std::move(fieldName)) {}
};

// PNG (8/16-bit, palette/gray/alpha normalized to RGB) and binary PPM (P6,
// maxval up to 65535). Values map linearly to [0, 1]. Dispatch is by content
// on load and by extension on save.
ImageF32 load_image(const std::string& path);
void save_image(const std::string& path, const ImageF32& img, int bitDepth = 8);

// Self-contained upsampling parameters: grid geometry, per-pixel (a, b, w)
// records and the optimized low-res image, fixed little-endian layout.
struct GlupFile {
    ParamField field;
    ImageF32 low;
    bool optimized = false;
};

void write_glup(const std::string& path, const GlupFile& f);
GlupFile read_glup(const std::string& path);

// In-memory codec used by the file functions; exposed for round-trip tests.
std::vector<uint8_t> encode_glup(const GlupFile& f);
GlupFile decode_glup(const std::vector<uint8_t>& bytes);

}  // namespace glu
