#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "glu/grid.hpp"

namespace glu {

enum class Mode : uint8_t {
    Fast = 0,   // a = most similar candidate, weight from distance ratio, in [0, 1)
    Exact = 1,  // all unordered candidate pairs, closed-form weight (may extrapolate)
    Gnu = 2,    // b = a, weight pinned to 1 (pure nearest-candidate copy)
};

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& name);  // throws std::invalid_argument

struct GluConfig {
    int windowSide = 3;            // odd, >= 3
    float errorThreshold = 30.0f / 255.0f;
    int maxIterations = 3;
    float epsilon = 1e-3f;
    // Accept/rollback trials on the component's own pixels only instead of every
    // pixel whose candidate window reaches a replaced cell. Leaves stale errors
    // outside the component; kept for comparison runs.
    bool literalComponentUpdate = false;

    void validate() const {
        if (windowSide < 3 || windowSide % 2 == 0)
            throw std::invalid_argument("GluConfig: windowSide must be odd and >= 3");
        if (!(errorThreshold >= 0))
            throw std::invalid_argument("GluConfig: errorThreshold must be >= 0");
        if (maxIterations < 0)
            throw std::invalid_argument("GluConfig: maxIterations must be >= 0");
        if (!(epsilon > 0)) throw std::invalid_argument("GluConfig: epsilon must be > 0");
    }
};

// Interpolation source for one high-res pixel: out = w * low[a] + (1 - w) * low[b].
struct PixelParams {
    uint32_t a = 0;
    uint32_t b = 0;
    float w = 0.0f;
};

struct ParamField {
    GridSpec grid;
    Mode mode = Mode::Fast;
    std::vector<PixelParams> params;  // one per high-res pixel, raster order

    size_t size() const { return params.size(); }
};

// Per-pixel reconstruction error ||I_p - Ihat_p||_2, raster order.
struct ErrorMap {
    int width = 0;
    int height = 0;
    std::vector<float> e;

    float& at(int x, int y) { return e[static_cast<size_t>(y) * width + x]; }
    float at(int x, int y) const { return e[static_cast<size_t>(y) * width + x]; }
    double total() const {
        double s = 0;
        for (float v : e) s += v;
        return s;
    }
};

}  // namespace glu
