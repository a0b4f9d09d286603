#pragma once

#include <cmath>
#include <span>

#include "glu/image.hpp"
#include "glu/params.hpp"

namespace glu {

struct Candidate {
    uint32_t index = 0;
    Rgb color{};
};

// Closed-form weight minimizing ||w*(Ia-Ib) - (Ip-Ib)||^2 + eps*w^2. Unclamped.
double weight_exact(Rgb ip, Rgb ia, Rgb ib, double eps);

// Distance-ratio weight ||Ip-Ib|| / (||Ip-Ia|| + ||Ip-Ib|| + eps), always in [0, 1).
double weight_fast(Rgb ip, Rgb ia, Rgb ib, double eps);

// Selection objective both optimizers minimize (weight_exact is its argmin in w):
// ||w*Ia + (1-w)*Ib - Ip||^2 + eps*w^2.
double pair_objective(Rgb ip, Rgb ia, Rgb ib, double w, double eps);

// Candidates are scanned in list order; ties keep the earliest entry, so a
// raster-ordered list yields lowest-raster-index tie-breaking. The list must be
// non-empty.
PixelParams optimize_pixel_fast(Rgb ip, std::span<const Candidate> cands, double eps);
PixelParams optimize_pixel_exact(Rgb ip, std::span<const Candidate> cands, double eps);
PixelParams optimize_pixel_gnu(Rgb ip, std::span<const Candidate> cands);

// Per-pixel optimization over the whole guide image. Pure per-pixel work;
// bitwise identical at any thread count.
ParamField optimize_field(const ImageF32& high, const ImageF32& low, const GridSpec& grid,
                          const GluConfig& cfg, Mode mode);

// Same, restricted to the given high-res pixels (linear indices); writes into
// field.params in place.
void optimize_pixels(const ImageF32& high, const ImageF32& low, const GridSpec& grid,
                     const GluConfig& cfg, Mode mode, std::span<const uint32_t> pixels,
                     ParamField& field);

// Reconstruction: out_p = w * lowTarget[a] + (1 - w) * lowTarget[b], clamped to
// [0, 1] unless clampOutput is false. lowTarget must match the field's grid.
ImageF32 apply_field(const ParamField& field, const ImageF32& lowTarget,
                     bool clampOutput = true);

ErrorMap error_map(const ImageF32& high, const ImageF32& reconstructed);

// Single-pixel versions of apply_field and error_map. The joint optimizer's
// trial accounting uses these, so a trial's error entries match a full
// error_map(high, apply_field(...)) recomputation bit for bit.
inline Rgb reconstruct_pixel(const PixelParams& pp, const ImageF32& lowTarget,
                             bool clampOutput = true) {
    const float* la = lowTarget.px(pp.a);
    const float* lb = lowTarget.px(pp.b);
    Rgb o;
    for (int c = 0; c < 3; ++c) {
        float v = pp.w * la[c] + (1.0f - pp.w) * lb[c];
        if (clampOutput) v = v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v);
        o[c] = v;
    }
    return o;
}

inline float pixel_error(Rgb truth, Rgb recon) {
    double s = 0;
    for (int c = 0; c < 3; ++c) {
        const double d = double(truth[c]) - recon[c];
        s += d * d;
    }
    return static_cast<float>(std::sqrt(s));
}

}  // namespace glu
