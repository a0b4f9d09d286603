#include "glu/upsample.hpp"

#include <algorithm>
#include <cmath>

#include "glu/parallel.hpp"

namespace glu {

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Fast: return "fast";
        case Mode::Exact: return "exact";
        case Mode::Gnu: return "gnu";
    }
    return "fast";
}

Mode mode_from_name(const std::string& name) {
    if (name == "fast") return Mode::Fast;
    if (name == "exact") return Mode::Exact;
    if (name == "gnu") return Mode::Gnu;
    throw std::invalid_argument("unknown mode: " + name + " (expected fast|exact|gnu)");
}

namespace {

inline double dist(Rgb p, Rgb q) {
    const double d0 = double(p[0]) - q[0];
    const double d1 = double(p[1]) - q[1];
    const double d2 = double(p[2]) - q[2];
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

inline double objective(Rgb ip, Rgb ia, Rgb ib, double w, double eps) {
    double r = 0;
    for (int c = 0; c < 3; ++c) {
        const double v = w * ia[c] + (1.0 - w) * ib[c] - ip[c];
        r += v * v;
    }
    return r + eps * w * w;
}

void requireCandidates(std::span<const Candidate> cands) {
    if (cands.empty()) throw std::invalid_argument("candidate list must not be empty");
}

// Scratch holds one distance per candidate so the fast path computes each norm once.
PixelParams pixelFast(Rgb ip, const Candidate* cands, size_t n, double eps, double* scratch) {
    size_t aIdx = 0;
    for (size_t i = 0; i < n; ++i) {
        scratch[i] = dist(ip, cands[i].color);
        if (scratch[i] < scratch[aIdx]) aIdx = i;
    }
    const Rgb ia = cands[aIdx].color;
    const double da = scratch[aIdx];
    size_t bIdx = 0;
    double bestW = 0, bestObj = 0;
    bool first = true;
    for (size_t j = 0; j < n; ++j) {
        const double w = scratch[j] / (da + scratch[j] + eps);
        const double obj = objective(ip, ia, cands[j].color, w, eps);
        if (first || obj < bestObj) {
            first = false;
            bestObj = obj;
            bestW = w;
            bIdx = j;
        }
    }
    return {cands[aIdx].index, cands[bIdx].index, static_cast<float>(bestW)};
}

PixelParams pixelExact(Rgb ip, const Candidate* cands, size_t n, double eps) {
    size_t aIdx = 0, bIdx = 0;
    double bestW = 0, bestObj = 0;
    bool first = true;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            const double w = weight_exact(ip, cands[i].color, cands[j].color, eps);
            const double obj = objective(ip, cands[i].color, cands[j].color, w, eps);
            if (first || obj < bestObj) {
                first = false;
                bestObj = obj;
                bestW = w;
                aIdx = i;
                bIdx = j;
            }
        }
    }
    return {cands[aIdx].index, cands[bIdx].index, static_cast<float>(bestW)};
}

PixelParams pixelGnu(Rgb ip, const Candidate* cands, size_t n) {
    size_t aIdx = 0;
    double best = dist(ip, cands[0].color);
    for (size_t i = 1; i < n; ++i) {
        const double d = dist(ip, cands[i].color);
        if (d < best) {
            best = d;
            aIdx = i;
        }
    }
    return {cands[aIdx].index, cands[aIdx].index, 1.0f};
}

PixelParams pixelDispatch(Rgb ip, const Candidate* cands, size_t n, double eps, Mode mode,
                          double* scratch) {
    switch (mode) {
        case Mode::Fast: return pixelFast(ip, cands, n, eps, scratch);
        case Mode::Exact: return pixelExact(ip, cands, n, eps);
        case Mode::Gnu: return pixelGnu(ip, cands, n);
    }
    return {};
}

struct CellWindow {
    Candidate cands[25];  // windowSide up to 5 stays on the stack
    std::vector<Candidate> heap;
    double scratch[25];
    std::vector<double> heapScratch;

    Candidate* buf = cands;
    double* dists = scratch;

    void prepare(int windowSide) {
        const size_t cap = static_cast<size_t>(windowSide) * windowSide;
        if (cap > 25) {
            heap.resize(cap);
            heapScratch.resize(cap);
            buf = heap.data();
            dists = heapScratch.data();
        }
    }
};

size_t gatherWindow(const ImageF32& low, const GridSpec& grid, Coord cell, int windowSide,
                    Candidate* out) {
    int x0, y0, x1, y1;
    grid.windowBounds(cell, windowSide, x0, y0, x1, y1);
    size_t n = 0;
    for (int cy = y0; cy <= y1; ++cy)
        for (int cx = x0; cx <= x1; ++cx)
            out[n++] = {grid.lowIndex(cx, cy), low.rgb(cx, cy)};
    return n;
}

void checkFieldInputs(const ImageF32& high, const ImageF32& low, const GridSpec& grid,
                      const GluConfig& cfg) {
    cfg.validate();
    if (high.width != grid.highW || high.height != grid.highH)
        throw std::invalid_argument("optimize: guide image does not match grid");
    if (low.width != grid.lowW || low.height != grid.lowH)
        throw std::invalid_argument("optimize: low-res image does not match grid");
}

}  // namespace

double weight_exact(Rgb ip, Rgb ia, Rgb ib, double eps) {
    double num = 0, den = 0;
    for (int c = 0; c < 3; ++c) {
        const double pb = double(ip[c]) - ib[c];
        const double ab = double(ia[c]) - ib[c];
        num += pb * ab;
        den += ab * ab;
    }
    return num / (den + eps);
}

double weight_fast(Rgb ip, Rgb ia, Rgb ib, double eps) {
    const double db = dist(ip, ib);
    return db / (dist(ip, ia) + db + eps);
}

double pair_objective(Rgb ip, Rgb ia, Rgb ib, double w, double eps) {
    return objective(ip, ia, ib, w, eps);
}

PixelParams optimize_pixel_fast(Rgb ip, std::span<const Candidate> cands, double eps) {
    requireCandidates(cands);
    std::vector<double> scratch(cands.size());
    return pixelFast(ip, cands.data(), cands.size(), eps, scratch.data());
}

PixelParams optimize_pixel_exact(Rgb ip, std::span<const Candidate> cands, double eps) {
    requireCandidates(cands);
    return pixelExact(ip, cands.data(), cands.size(), eps);
}

PixelParams optimize_pixel_gnu(Rgb ip, std::span<const Candidate> cands) {
    requireCandidates(cands);
    return pixelGnu(ip, cands.data(), cands.size());
}

ParamField optimize_field(const ImageF32& high, const ImageF32& low, const GridSpec& grid,
                          const GluConfig& cfg, Mode mode) {
    checkFieldInputs(high, low, grid, cfg);
    ParamField field;
    field.grid = grid;
    field.mode = mode;
    field.params.resize(high.pixelCount());
    const double eps = cfg.epsilon;
    parallel_for(high.height, [&](int y0, int y1) {
        CellWindow win;
        win.prepare(cfg.windowSide);
        for (int y = y0; y < y1; ++y) {
            PixelParams* row = field.params.data() + static_cast<size_t>(y) * high.width;
            const int cy = y / grid.scale;
            for (int x = 0; x < high.width; ++x) {
                const size_t n =
                    gatherWindow(low, grid, {x / grid.scale, cy}, cfg.windowSide, win.buf);
                row[x] = pixelDispatch(high.rgb(x, y), win.buf, n, eps, mode, win.dists);
            }
        }
    });
    return field;
}

void optimize_pixels(const ImageF32& high, const ImageF32& low, const GridSpec& grid,
                     const GluConfig& cfg, Mode mode, std::span<const uint32_t> pixels,
                     ParamField& field) {
    checkFieldInputs(high, low, grid, cfg);
    if (field.params.size() != high.pixelCount())
        throw std::invalid_argument("optimize_pixels: field does not match image");
    CellWindow win;
    win.prepare(cfg.windowSide);
    const double eps = cfg.epsilon;
    for (uint32_t p : pixels) {
        const int x = static_cast<int>(p % high.width);
        const int y = static_cast<int>(p / high.width);
        const size_t n = gatherWindow(low, grid, grid.mapDown({x, y}), cfg.windowSide, win.buf);
        field.params[p] = pixelDispatch(high.rgb(x, y), win.buf, n, eps, mode, win.dists);
    }
}

ImageF32 apply_field(const ParamField& field, const ImageF32& lowTarget, bool clampOutput) {
    if (lowTarget.width != field.grid.lowW || lowTarget.height != field.grid.lowH)
        throw std::invalid_argument("apply_field: low-res image does not match grid");
    if (field.params.size() != static_cast<size_t>(field.grid.highW) * field.grid.highH)
        throw std::invalid_argument("apply_field: field size does not match grid");
    ImageF32 out(field.grid.highW, field.grid.highH);
    parallel_for(static_cast<int>(field.params.size()), [&](int b, int e) {
        for (int p = b; p < e; ++p) {
            const Rgb v =
                reconstruct_pixel(field.params[p], lowTarget, clampOutput);
            float* o = out.data.data() + static_cast<size_t>(p) * 3;
            o[0] = v[0];
            o[1] = v[1];
            o[2] = v[2];
        }
    });
    return out;
}

ErrorMap error_map(const ImageF32& high, const ImageF32& reconstructed) {
    requireSameShape(high, reconstructed, "error_map");
    ErrorMap em;
    em.width = high.width;
    em.height = high.height;
    em.e.resize(high.pixelCount());
    parallel_for(static_cast<int>(high.pixelCount()), [&](int b, int e) {
        for (int p = b; p < e; ++p) {
            const uint32_t u = static_cast<uint32_t>(p);
            em.e[p] = pixel_error(high.rgb(u), reconstructed.rgb(u));
        }
    });
    return em;
}

}  // namespace glu
