#include "glu/synth.hpp"

#include <algorithm>
#include <cmath>

namespace glu {

ImageF32 synth_constant(int w, int h, Rgb color) { return ImageF32(w, h, color); }

ImageF32 synth_ramp(int w, int h, Rgb c0, Rgb c1, bool vertical) {
    ImageF32 img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int i = vertical ? y : x;
            const int n = vertical ? h : w;
            const float t = n > 1 ? float(i) / float(n - 1) : 0.0f;
            img.setRgb(x, y,
                       {c0[0] + t * (c1[0] - c0[0]), c0[1] + t * (c1[1] - c0[1]),
                        c0[2] + t * (c1[2] - c0[2])});
        }
    }
    return img;
}

ImageF32 synth_step(int w, int h, int splitX, Rgb c0, Rgb c1) {
    ImageF32 img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.setRgb(x, y, x < splitX ? c0 : c1);
    return img;
}

ImageF32 synth_checker(int w, int h, int cell, Rgb c0, Rgb c1) {
    if (cell < 1) throw std::invalid_argument("synth_checker: cell must be >= 1");
    ImageF32 img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.setRgb(x, y, ((x / cell + y / cell) % 2 == 0) ? c0 : c1);
    return img;
}

ImageF32 synth_thin_lines(int w, int h, Rgb background, const std::vector<LineSpec>& lines) {
    ImageF32 img(w, h, background);
    for (const LineSpec& ln : lines) {
        for (int t = 0; t < ln.thickness; ++t) {
            const int pos = ln.position + t;
            for (int i = ln.start; i < ln.end; ++i) {
                const int x = ln.vertical ? pos : i;
                const int y = ln.vertical ? i : pos;
                if (x >= 0 && x < w && y >= 0 && y < h) img.setRgb(x, y, ln.color);
            }
        }
    }
    return img;
}

ImageF32 synth_mixture(int w, int h, uint64_t seed) {
    Rng rng(seed);
    ImageF32 img = synth_ramp(w, h, rng.color(), rng.color(), rng.uniform() < 0.5);

    const int rects = rng.uniformInt(2, 5);
    for (int i = 0; i < rects; ++i) {
        const int rw = rng.uniformInt(w / 8, w / 2);
        const int rh = rng.uniformInt(h / 8, h / 2);
        const int x0 = rng.uniformInt(0, w - rw);
        const int y0 = rng.uniformInt(0, h - rh);
        const Rgb c = rng.color();
        for (int y = y0; y < y0 + rh; ++y)
            for (int x = x0; x < x0 + rw; ++x) img.setRgb(x, y, c);
    }

    const int strokes = rng.uniformInt(2, 6);
    std::vector<LineSpec> lines;
    for (int i = 0; i < strokes; ++i) {
        LineSpec ln;
        ln.vertical = rng.uniform() < 0.5;
        const int extent = ln.vertical ? h : w;
        const int lateral = ln.vertical ? w : h;
        ln.thickness = rng.uniformInt(1, 2);
        ln.position = rng.uniformInt(0, lateral - ln.thickness);
        ln.start = rng.uniformInt(0, extent / 4);
        ln.end = rng.uniformInt(3 * extent / 4, extent);
        ln.color = rng.color();
        lines.push_back(ln);
    }
    for (const LineSpec& ln : lines) {
        for (int t = 0; t < ln.thickness; ++t) {
            const int pos = ln.position + t;
            for (int i = ln.start; i < ln.end; ++i) {
                const int x = ln.vertical ? pos : i;
                const int y = ln.vertical ? i : pos;
                img.setRgb(x, y, ln.color);
            }
        }
    }
    return img;
}

ImageF32 synth_photo(int w, int h, uint64_t seed) {
    Rng rng(seed);
    struct Wave {
        double fx, fy, phase, amp;
        Rgb dir;
    };
    std::vector<Wave> waves;
    for (int octave = 0; octave < 4; ++octave) {
        const double base = 1.5 * std::pow(2.5, octave);
        for (int k = 0; k < 3; ++k) {
            Wave wv;
            const double ang = rng.uniform(0, 2 * 3.141592653589793);
            const double f = base * rng.uniform(0.7, 1.3);
            wv.fx = f * std::cos(ang);
            wv.fy = f * std::sin(ang);
            wv.phase = rng.uniform(0, 2 * 3.141592653589793);
            wv.amp = 0.5 / std::pow(1.8, octave);
            wv.dir = rng.color();
            waves.push_back(wv);
        }
    }
    const Rgb base = {static_cast<float>(rng.uniform(0.3, 0.7)),
                      static_cast<float>(rng.uniform(0.3, 0.7)),
                      static_cast<float>(rng.uniform(0.3, 0.7))};
    ImageF32 img(w, h);
    for (int y = 0; y < h; ++y) {
        const double v = double(y) / h;
        for (int x = 0; x < w; ++x) {
            const double u = double(x) / w;
            double acc[3] = {base[0], base[1], base[2]};
            for (const Wave& wv : waves) {
                const double s =
                    wv.amp * std::sin(2 * 3.141592653589793 * (wv.fx * u + wv.fy * v) +
                                      wv.phase);
                acc[0] += s * (wv.dir[0] - 0.5);
                acc[1] += s * (wv.dir[1] - 0.5);
                acc[2] += s * (wv.dir[2] - 0.5);
            }
            img.setRgb(x, y,
                       {static_cast<float>(std::clamp(acc[0], 0.0, 1.0)),
                        static_cast<float>(std::clamp(acc[1], 0.0, 1.0)),
                        static_cast<float>(std::clamp(acc[2], 0.0, 1.0))});
        }
    }
    return img;
}

}  // namespace glu
