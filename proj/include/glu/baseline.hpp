#pragma once

#include "glu/grid.hpp"
#include "glu/image.hpp"

namespace glu {

struct JbuParams {
    int window = 5;        // odd, >= 1, in low-res cells
    double sigmaD = 0.5;   // spatial falloff, low-res cell units
    double sigmaR = 0.1;   // range falloff on guide color distance

    void validate() const;
};

// Joint bilateral upsampling: each high-res pixel averages low-res target
// samples, weighted by a spatial Gaussian on the continuous low-res position
// and a range Gaussian comparing the full-res guide color against the low-res
// guide. Degenerate all-zero weights fall back to the owner cell.
ImageF32 jbu_upsample(const ImageF32& guideHigh, const ImageF32& guideLow,
                      const ImageF32& targetLow, const GridSpec& grid,
                      const JbuParams& params);

// Owner-cell replication.
ImageF32 nearest_upsample(const ImageF32& targetLow, const GridSpec& grid);

// Tent interpolation at the continuous low-res position, border-clamped.
ImageF32 bilinear_upsample(const ImageF32& targetLow, const GridSpec& grid);

}  // namespace glu
