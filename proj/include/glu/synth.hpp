#pragma once

#include <cstdint>

#include "glu/image.hpp"

namespace glu {

// Deterministic 64-bit generator (SplitMix64). Standard-library distributions
// are not pinned across implementations, so all seeded content goes through
// this.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform in [0, 1).
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniformInt(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
    Rgb color() {
        return {static_cast<float>(uniform()), static_cast<float>(uniform()),
                static_cast<float>(uniform())};
    }
};

ImageF32 synth_constant(int w, int h, Rgb color);

// Linear blend from c0 (left) to c1 (right), or top to bottom when vertical.
ImageF32 synth_ramp(int w, int h, Rgb c0, Rgb c1, bool vertical = false);

// Two tones split at column x (left gets c0).
ImageF32 synth_step(int w, int h, int splitX, Rgb c0, Rgb c1);

ImageF32 synth_checker(int w, int h, int cell, Rgb c0, Rgb c1);

struct LineSpec {
    int position = 0;   // row for horizontal, column for vertical
    int start = 0, end = 0;  // half-open span along the line
    int thickness = 2;
    bool vertical = false;
    Rgb color{};
};
ImageF32 synth_thin_lines(int w, int h, Rgb background, const std::vector<LineSpec>& lines);

// Seeded composite of gradients, rectangles, steps and thin strokes; exercises
// both smooth regions and structures the grid sampler can miss.
ImageF32 synth_mixture(int w, int h, uint64_t seed);

// Seeded smooth multi-frequency field, photograph-like statistics.
ImageF32 synth_photo(int w, int h, uint64_t seed);

}  // namespace glu
