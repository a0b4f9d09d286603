#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace glu {

using Rgb = std::array<float, 3>;

// Row-major interleaved RGB, values in [0, 1].
struct ImageF32 {
    int width = 0;
    int height = 0;
    std::vector<float> data;  // size == width * height * 3

    ImageF32() = default;
    ImageF32(int w, int h) : width(w), height(h) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("ImageF32: dimensions must be positive");
        data.assign(static_cast<size_t>(w) * h * 3, 0.0f);
    }
    ImageF32(int w, int h, Rgb fill) : ImageF32(w, h) {
        for (size_t i = 0; i < data.size(); i += 3) {
            data[i] = fill[0];
            data[i + 1] = fill[1];
            data[i + 2] = fill[2];
        }
    }

    size_t pixelCount() const { return static_cast<size_t>(width) * height; }

    float* px(int x, int y) { return data.data() + (static_cast<size_t>(y) * width + x) * 3; }
    const float* px(int x, int y) const {
        return data.data() + (static_cast<size_t>(y) * width + x) * 3;
    }
    const float* px(uint32_t index) const { return data.data() + static_cast<size_t>(index) * 3; }
    float* px(uint32_t index) { return data.data() + static_cast<size_t>(index) * 3; }

    float& at(int x, int y, int c) { return px(x, y)[c]; }
    float at(int x, int y, int c) const { return px(x, y)[c]; }

    Rgb rgb(int x, int y) const {
        const float* p = px(x, y);
        return {p[0], p[1], p[2]};
    }
    Rgb rgb(uint32_t index) const {
        const float* p = px(index);
        return {p[0], p[1], p[2]};
    }
    void setRgb(int x, int y, Rgb v) {
        float* p = px(x, y);
        p[0] = v[0];
        p[1] = v[1];
        p[2] = v[2];
    }

    bool sameShape(const ImageF32& o) const { return width == o.width && height == o.height; }
};

inline void requireSameShape(const ImageF32& a, const ImageF32& b, const char* what) {
    if (!a.sameShape(b))
        throw std::invalid_argument(std::string(what) + ": image dimensions differ");
}

}  // namespace glu
