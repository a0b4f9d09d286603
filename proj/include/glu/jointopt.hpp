#pragma once

#include <span>

#include "glu/upsample.hpp"

namespace glu {

// Pixels with reconstruction error above the threshold, grouped into
// 4-connected components. Components are ordered by their first pixel in
// raster order; pixel lists are raster-sorted linear indices.
struct LargeErrorSet {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> mask;
    std::vector<std::vector<uint32_t>> components;
};

LargeErrorSet find_large_error(const ErrorMap& errors, float threshold);

// One replacement trial for a single component: every low cell under the
// component gets the color of its worst pixel, the affected pixels are
// re-optimized, and the change is kept only if their error sum does not
// increase. Returns whether the trial was accepted; on rejection low, field
// and errors are restored bitwise.
bool trial_update_component(const ImageF32& high, ImageF32& low, ParamField& field,
                            ErrorMap& errors, std::span<const uint32_t> component,
                            const GluConfig& cfg, Mode mode);

struct JointResult {
    ImageF32 low;
    ParamField field;
    ErrorMap errors;
    int iterations = 0;
    int trialsAccepted = 0;
    int trialsRejected = 0;
};

// Grid downsample, per-pixel optimization, then up to maxIterations sweeps of
// component trials. Stops early once no pixel exceeds the threshold or a sweep
// accepts nothing.
JointResult joint_optimize(const ImageF32& high, int scale, const GluConfig& cfg, Mode mode);

}  // namespace glu
