#include "glu/jointopt.hpp"

#include <algorithm>

#include "glu/grid.hpp"

namespace glu {

LargeErrorSet find_large_error(const ErrorMap& errors, float threshold) {
    if (errors.width <= 0 || errors.height <= 0)
        throw std::invalid_argument("find_large_error: empty error map");
    const int W = errors.width, H = errors.height;
    LargeErrorSet out;
    out.width = W;
    out.height = H;
    out.mask.assign(static_cast<size_t>(W) * H, 0);
    for (size_t i = 0; i < out.mask.size(); ++i) out.mask[i] = errors.e[i] > threshold;

    std::vector<uint8_t> seen(out.mask.size(), 0);
    std::vector<uint32_t> stack;
    for (size_t start = 0; start < out.mask.size(); ++start) {
        if (!out.mask[start] || seen[start]) continue;
        std::vector<uint32_t> comp;
        stack.push_back(static_cast<uint32_t>(start));
        seen[start] = 1;
        while (!stack.empty()) {
            const uint32_t p = stack.back();
            stack.pop_back();
            comp.push_back(p);
            const int x = static_cast<int>(p % W);
            const int y = static_cast<int>(p / W);
            const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
            for (const auto& n : nb) {
                if (n[0] < 0 || n[0] >= W || n[1] < 0 || n[1] >= H) continue;
                const uint32_t q = static_cast<uint32_t>(n[1]) * W + n[0];
                if (out.mask[q] && !seen[q]) {
                    seen[q] = 1;
                    stack.push_back(q);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.components.push_back(std::move(comp));
    }
    return out;
}

namespace {

// Low cells under the component paired with their component pixels, grouped.
struct CellGroup {
    uint32_t cell;
    std::vector<uint32_t> pixels;  // raster-sorted
};

std::vector<CellGroup> groupByOwnerCell(std::span<const uint32_t> component,
                                        const GridSpec& grid) {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    pairs.reserve(component.size());
    for (uint32_t p : component) {
        const Coord c = grid.mapDown({static_cast<int>(p % grid.highW),
                                      static_cast<int>(p / grid.highW)});
        pairs.emplace_back(grid.lowIndex(c.x, c.y), p);
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<CellGroup> groups;
    for (const auto& [cell, p] : pairs) {
        if (groups.empty() || groups.back().cell != cell) groups.push_back({cell, {}});
        groups.back().pixels.push_back(p);
    }
    return groups;
}

// All high-res pixels whose candidate window reaches a replaced cell: the
// footprints of the replaced cells dilated by the window radius.
std::vector<uint32_t> affectedPixels(const std::vector<CellGroup>& groups,
                                     const GridSpec& grid, int windowSide) {
    const int h = windowSide / 2;
    int bx0 = grid.lowW, by0 = grid.lowH, bx1 = -1, by1 = -1;
    for (const auto& g : groups) {
        const int cx = static_cast<int>(g.cell % grid.lowW);
        const int cy = static_cast<int>(g.cell / grid.lowW);
        bx0 = std::min(bx0, cx);
        by0 = std::min(by0, cy);
        bx1 = std::max(bx1, cx);
        by1 = std::max(by1, cy);
    }
    bx0 = std::max(0, bx0 - h);
    by0 = std::max(0, by0 - h);
    bx1 = std::min(grid.lowW - 1, bx1 + h);
    by1 = std::min(grid.lowH - 1, by1 + h);
    const int bw = bx1 - bx0 + 1, bh = by1 - by0 + 1;
    std::vector<uint8_t> marked(static_cast<size_t>(bw) * bh, 0);
    for (const auto& g : groups) {
        const int cx = static_cast<int>(g.cell % grid.lowW);
        const int cy = static_cast<int>(g.cell / grid.lowW);
        for (int y = std::max(by0, cy - h); y <= std::min(by1, cy + h); ++y)
            for (int x = std::max(bx0, cx - h); x <= std::min(bx1, cx + h); ++x)
                marked[static_cast<size_t>(y - by0) * bw + (x - bx0)] = 1;
    }
    std::vector<uint32_t> pixels;
    for (int y = by0; y <= by1; ++y) {
        for (int x = bx0; x <= bx1; ++x) {
            if (!marked[static_cast<size_t>(y - by0) * bw + (x - bx0)]) continue;
            for (Coord p : footprint({x, y}, grid))
                pixels.push_back(static_cast<uint32_t>(p.y) * grid.highW + p.x);
        }
    }
    return pixels;
}

}  // namespace

bool trial_update_component(const ImageF32& high, ImageF32& low, ParamField& field,
                            ErrorMap& errors, std::span<const uint32_t> component,
                            const GluConfig& cfg, Mode mode) {
    cfg.validate();
    if (component.empty())
        throw std::invalid_argument("trial_update_component: empty component");
    const GridSpec& grid = field.grid;
    if (high.width != grid.highW || high.height != grid.highH ||
        low.width != grid.lowW || low.height != grid.lowH ||
        errors.width != grid.highW || errors.height != grid.highH)
        throw std::invalid_argument("trial_update_component: shape mismatch");

    const std::vector<CellGroup> groups = groupByOwnerCell(component, grid);

    // Replace each cell's color with its worst component pixel (ties keep the
    // lowest raster index; pixel lists are sorted).
    std::vector<Rgb> oldColors(groups.size());
    for (size_t i = 0; i < groups.size(); ++i) {
        const CellGroup& g = groups[i];
        uint32_t best = g.pixels[0];
        for (uint32_t p : g.pixels)
            if (errors.e[p] > errors.e[best]) best = p;
        oldColors[i] = low.rgb(g.cell);
        float* c = low.px(g.cell);
        const float* src = high.px(best);
        c[0] = src[0];
        c[1] = src[1];
        c[2] = src[2];
    }

    std::vector<uint32_t> affected;
    if (cfg.literalComponentUpdate)
        affected.assign(component.begin(), component.end());
    else
        affected = affectedPixels(groups, grid, cfg.windowSide);

    std::vector<PixelParams> oldParams(affected.size());
    std::vector<float> oldE(affected.size());
    double e0 = 0;
    for (size_t i = 0; i < affected.size(); ++i) {
        oldParams[i] = field.params[affected[i]];
        oldE[i] = errors.e[affected[i]];
        e0 += oldE[i];
    }

    optimize_pixels(high, low, grid, cfg, mode, affected, field);
    double e1 = 0;
    for (uint32_t p : affected) {
        const float e = pixel_error(high.rgb(p), reconstruct_pixel(field.params[p], low));
        errors.e[p] = e;
        e1 += e;
    }

    if (e1 <= e0) return true;

    for (size_t i = 0; i < affected.size(); ++i) {
        field.params[affected[i]] = oldParams[i];
        errors.e[affected[i]] = oldE[i];
    }
    for (size_t i = 0; i < groups.size(); ++i) {
        float* c = low.px(groups[i].cell);
        c[0] = oldColors[i][0];
        c[1] = oldColors[i][1];
        c[2] = oldColors[i][2];
    }
    return false;
}

JointResult joint_optimize(const ImageF32& high, int scale, const GluConfig& cfg, Mode mode) {
    cfg.validate();
    JointResult r;
    GridSpec grid;
    r.low = grid_downsample(high, scale, &grid);
    r.field = optimize_field(high, r.low, grid, cfg, mode);
    r.errors = error_map(high, apply_field(r.field, r.low));

    for (int iter = 0; iter < cfg.maxIterations; ++iter) {
        const LargeErrorSet les = find_large_error(r.errors, cfg.errorThreshold);
        if (les.components.empty()) break;
        ++r.iterations;
        int acceptedThisSweep = 0;
        for (const auto& comp : les.components) {
            if (trial_update_component(high, r.low, r.field, r.errors, comp, cfg, mode)) {
                ++r.trialsAccepted;
                ++acceptedThisSweep;
            } else {
                ++r.trialsRejected;
            }
        }
        if (acceptedThisSweep == 0) break;
    }
    return r;
}

}  // namespace glu
