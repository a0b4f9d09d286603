#pragma once

#include "glu/image.hpp"

namespace glu {

struct QualityReport {
    double mse = 0;
    double psnrDb = 0;
    double ssim = 0;
};

// Mean squared error over all pixels and channels.
double mse(const ImageF32& a, const ImageF32& b);

// 10*log10(1 / mse) with peak 1.0; identical images report the 99 dB sentinel.
double psnr(const ImageF32& a, const ImageF32& b);

// Mean structural similarity on the BT.601 luma channel: 11x11 Gaussian
// (sigma 1.5) windows, C1 = 0.01^2, C2 = 0.03^2, averaged over positions where
// the window fits entirely. Requires min(width, height) >= 11.
double ssim(const ImageF32& a, const ImageF32& b);

QualityReport quality_report(const ImageF32& reference, const ImageF32& test);

}  // namespace glu
