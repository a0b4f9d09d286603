#include "glu/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace glu {

GridSpec GridSpec::create(int highW, int highH, int scale) {
    if (highW <= 0 || highH <= 0)
        throw std::invalid_argument("GridSpec: dimensions must be positive");
    if (scale < 2)
        throw std::invalid_argument("GridSpec: scale must be >= 2");
    if (scale >= std::min(highW, highH))
        throw std::invalid_argument("GridSpec: scale must be < min(width, height)");
    GridSpec g;
    g.scale = scale;
    g.highW = highW;
    g.highH = highH;
    g.lowW = (highW + scale - 1) / scale;
    g.lowH = (highH + scale - 1) / scale;
    g.sampleOffset = scale / 2;
    return g;
}

Coord GridSpec::sampleCoord(Coord cell) const {
    return {std::min(cell.x * scale + sampleOffset, highW - 1),
            std::min(cell.y * scale + sampleOffset, highH - 1)};
}

void GridSpec::windowBounds(Coord cell, int windowSide, int& x0, int& y0, int& x1,
                            int& y1) const {
    if (windowSide < 3 || windowSide % 2 == 0)
        throw std::invalid_argument("windowSide must be odd and >= 3");
    const int h = windowSide / 2;
    x0 = std::max(0, cell.x - h);
    y0 = std::max(0, cell.y - h);
    x1 = std::min(lowW - 1, cell.x + h);
    y1 = std::min(lowH - 1, cell.y + h);
}

ImageF32 grid_downsample(const ImageF32& high, int scale, GridSpec* outGrid) {
    GridSpec g = GridSpec::create(high.width, high.height, scale);
    ImageF32 low(g.lowW, g.lowH);
    for (int cy = 0; cy < g.lowH; ++cy) {
        for (int cx = 0; cx < g.lowW; ++cx) {
            Coord s = g.sampleCoord({cx, cy});
            low.setRgb(cx, cy, high.rgb(s.x, s.y));
        }
    }
    if (outGrid) *outGrid = g;
    return low;
}

std::vector<uint32_t> neighborhood(Coord p, const GridSpec& grid, int windowSide) {
    if (p.x < 0 || p.y < 0 || p.x >= grid.highW || p.y >= grid.highH)
        throw std::invalid_argument("neighborhood: pixel outside image");
    Coord c = grid.mapDown(p);
    int x0, y0, x1, y1;
    grid.windowBounds(c, windowSide, x0, y0, x1, y1);
    std::vector<uint32_t> out;
    out.reserve(static_cast<size_t>(x1 - x0 + 1) * (y1 - y0 + 1));
    for (int cy = y0; cy <= y1; ++cy)
        for (int cx = x0; cx <= x1; ++cx) out.push_back(grid.lowIndex(cx, cy));
    return out;
}

std::vector<Coord> footprint(Coord cell, const GridSpec& grid) {
    if (cell.x < 0 || cell.y < 0 || cell.x >= grid.lowW || cell.y >= grid.lowH)
        throw std::invalid_argument("footprint: cell outside grid");
    const int x0 = cell.x * grid.scale;
    const int y0 = cell.y * grid.scale;
    const int x1 = std::min(x0 + grid.scale, grid.highW);
    const int y1 = std::min(y0 + grid.scale, grid.highH);
    std::vector<Coord> out;
    out.reserve(static_cast<size_t>(x1 - x0) * (y1 - y0));
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) out.push_back({x, y});
    return out;
}

}  // namespace glu
