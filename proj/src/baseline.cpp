#include "glu/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "glu/parallel.hpp"

namespace glu {

void JbuParams::validate() const {
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("JbuParams: window must be odd and >= 1");
    if (!(sigmaD > 0) || !(sigmaR > 0))
        throw std::invalid_argument("JbuParams: sigmas must be > 0");
}

namespace {

void checkLow(const ImageF32& low, const GridSpec& grid, const char* what) {
    if (low.width != grid.lowW || low.height != grid.lowH)
        throw std::invalid_argument(std::string(what) + ": low-res image does not match grid");
}

// Continuous low-res position of a high-res pixel under the block-center
// convention.
inline double lowPos(int x, int scale) { return (x + 0.5) / scale - 0.5; }

}  // namespace

ImageF32 jbu_upsample(const ImageF32& guideHigh, const ImageF32& guideLow,
                      const ImageF32& targetLow, const GridSpec& grid,
                      const JbuParams& params) {
    params.validate();
    if (guideHigh.width != grid.highW || guideHigh.height != grid.highH)
        throw std::invalid_argument("jbu_upsample: guide image does not match grid");
    checkLow(guideLow, grid, "jbu_upsample");
    checkLow(targetLow, grid, "jbu_upsample");

    ImageF32 out(grid.highW, grid.highH);
    const int half = params.window / 2;
    const double invD = 1.0 / (2 * params.sigmaD * params.sigmaD);
    const double invR = 1.0 / (2 * params.sigmaR * params.sigmaR);

    parallel_for(grid.highH, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            const double py = lowPos(y, grid.scale);
            const int cy = y / grid.scale;
            for (int x = 0; x < grid.highW; ++x) {
                const double px = lowPos(x, grid.scale);
                const int cx = x / grid.scale;
                const Rgb ip = guideHigh.rgb(x, y);
                double acc[3] = {0, 0, 0};
                double wsum = 0;
                for (int gy = cy - half; gy <= cy + half; ++gy) {
                    if (gy < 0 || gy >= grid.lowH) continue;
                    for (int gx = cx - half; gx <= cx + half; ++gx) {
                        if (gx < 0 || gx >= grid.lowW) continue;
                        const double dx = px - gx, dy = py - gy;
                        const Rgb g = guideLow.rgb(gx, gy);
                        double r2 = 0;
                        for (int c = 0; c < 3; ++c) {
                            const double d = double(ip[c]) - g[c];
                            r2 += d * d;
                        }
                        const double w =
                            std::exp(-(dx * dx + dy * dy) * invD) * std::exp(-r2 * invR);
                        const Rgb t = targetLow.rgb(gx, gy);
                        acc[0] += w * t[0];
                        acc[1] += w * t[1];
                        acc[2] += w * t[2];
                        wsum += w;
                    }
                }
                if (wsum > 0) {
                    out.setRgb(x, y, {static_cast<float>(acc[0] / wsum),
                                      static_cast<float>(acc[1] / wsum),
                                      static_cast<float>(acc[2] / wsum)});
                } else {
                    out.setRgb(x, y, targetLow.rgb(cx, cy));
                }
            }
        }
    });
    return out;
}

ImageF32 nearest_upsample(const ImageF32& targetLow, const GridSpec& grid) {
    checkLow(targetLow, grid, "nearest_upsample");
    ImageF32 out(grid.highW, grid.highH);
    parallel_for(grid.highH, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            const int cy = y / grid.scale;
            for (int x = 0; x < grid.highW; ++x)
                out.setRgb(x, y, targetLow.rgb(x / grid.scale, cy));
        }
    });
    return out;
}

ImageF32 bilinear_upsample(const ImageF32& targetLow, const GridSpec& grid) {
    checkLow(targetLow, grid, "bilinear_upsample");
    ImageF32 out(grid.highW, grid.highH);
    parallel_for(grid.highH, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            const double py = lowPos(y, grid.scale);
            const int fy = static_cast<int>(std::floor(py));
            const double ty = py - fy;
            const int y0c = std::clamp(fy, 0, grid.lowH - 1);
            const int y1c = std::clamp(fy + 1, 0, grid.lowH - 1);
            for (int x = 0; x < grid.highW; ++x) {
                const double px = lowPos(x, grid.scale);
                const int fx = static_cast<int>(std::floor(px));
                const double tx = px - fx;
                const int x0c = std::clamp(fx, 0, grid.lowW - 1);
                const int x1c = std::clamp(fx + 1, 0, grid.lowW - 1);
                Rgb o;
                for (int c = 0; c < 3; ++c) {
                    const double top = (1 - tx) * targetLow.at(x0c, y0c, c) +
                                       tx * targetLow.at(x1c, y0c, c);
                    const double bot = (1 - tx) * targetLow.at(x0c, y1c, c) +
                                       tx * targetLow.at(x1c, y1c, c);
                    o[c] = static_cast<float>((1 - ty) * top + ty * bot);
                }
                out.setRgb(x, y, o);
            }
        }
    });
    return out;
}

}  // namespace glu
