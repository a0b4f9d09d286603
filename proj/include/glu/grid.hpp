#pragma once

#include <cstdint>
#include <vector>

#include "glu/image.hpp"

namespace glu {

struct Coord {
    int x = 0;
    int y = 0;
    bool operator==(const Coord&) const = default;
};

// Geometry shared by downsampling, upsampling and the joint optimizer.
// Low cell (cx, cy) samples high-res pixel (min(cx*s + s/2, W-1), min(cy*s + s/2, H-1))
// and owns the s x s block [cx*s, cx*s+s) x [cy*s, cy*s+s) clipped to the image.
struct GridSpec {
    int scale = 0;
    int highW = 0, highH = 0;
    int lowW = 0, lowH = 0;
    int sampleOffset = 0;  // scale / 2

    static GridSpec create(int highW, int highH, int scale);

    uint32_t lowIndex(int cx, int cy) const { return static_cast<uint32_t>(cy) * lowW + cx; }
    size_t lowCount() const { return static_cast<size_t>(lowW) * lowH; }

    // Owner cell of a high-res pixel.
    Coord mapDown(Coord p) const { return {p.x / scale, p.y / scale}; }

    // High-res pixel a low cell samples (clamped to the image border).
    Coord sampleCoord(Coord cell) const;

    // Inclusive bounds of the S x S candidate window around a cell, truncated at
    // the grid edge. windowSide must be odd and >= 3.
    void windowBounds(Coord cell, int windowSide, int& x0, int& y0, int& x1, int& y1) const;
};

// Samples one high-res pixel per cell. Requires 2 <= scale < min(highW, highH).
ImageF32 grid_downsample(const ImageF32& high, int scale, GridSpec* outGrid = nullptr);

// Candidate cells for high-res pixel p: the S x S window centered on its owner
// cell, truncated at borders, as linear low-res indices in raster order.
std::vector<uint32_t> neighborhood(Coord p, const GridSpec& grid, int windowSide);

// High-res pixels owned by low cell q, raster order. Footprints partition the image.
std::vector<Coord> footprint(Coord cell, const GridSpec& grid);

}  // namespace glu
