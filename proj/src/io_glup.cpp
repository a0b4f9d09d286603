#include <cmath>
#include <cstring>
#include <fstream>

#include "glu/io.hpp"

namespace glu {

namespace {

constexpr char kMagic[4] = {'G', 'L', 'U', 'P'};
constexpr uint32_t kVersion = 1;
constexpr size_t kHeaderSize = 32;

void putU32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
    out.push_back((v >> 16) & 0xff);
    out.push_back((v >> 24) & 0xff);
}

void putF32(std::vector<uint8_t>& out, float f) {
    uint32_t v;
    std::memcpy(&v, &f, 4);
    putU32(out, v);
}

struct Reader {
    const uint8_t* p;
    size_t n, pos = 0;

    uint32_t u32() {
        uint32_t v = uint32_t(p[pos]) | uint32_t(p[pos + 1]) << 8 |
                     uint32_t(p[pos + 2]) << 16 | uint32_t(p[pos + 3]) << 24;
        pos += 4;
        return v;
    }
    float f32() {
        const uint32_t v = u32();
        float f;
        std::memcpy(&f, &v, 4);
        return f;
    }
};

}  // namespace

std::vector<uint8_t> encode_glup(const GlupFile& f) {
    const GridSpec& g = f.field.grid;
    if (g.highW <= 0 || g.highH <= 0 || g.scale < 2)
        throw std::invalid_argument("encode_glup: field has no grid");
    if (f.field.params.size() != static_cast<size_t>(g.highW) * g.highH)
        throw std::invalid_argument("encode_glup: param count does not match grid");
    if (f.low.width != g.lowW || f.low.height != g.lowH)
        throw std::invalid_argument("encode_glup: low-res image does not match grid");

    std::vector<uint8_t> out;
    out.reserve(kHeaderSize + 12 * f.low.pixelCount() + 12 * f.field.params.size());
    out.insert(out.end(), kMagic, kMagic + 4);
    putU32(out, kVersion);
    putU32(out, static_cast<uint32_t>(g.highW));
    putU32(out, static_cast<uint32_t>(g.highH));
    putU32(out, static_cast<uint32_t>(g.scale));
    putU32(out, static_cast<uint32_t>(g.lowW));
    putU32(out, static_cast<uint32_t>(g.lowH));
    out.push_back(static_cast<uint8_t>(f.field.mode));
    out.push_back(f.optimized ? 1 : 0);
    out.push_back(0);
    out.push_back(0);
    for (float v : f.low.data) putF32(out, v);
    for (const PixelParams& pp : f.field.params) {
        putU32(out, pp.a);
        putU32(out, pp.b);
        putF32(out, pp.w);
    }
    return out;
}

GlupFile decode_glup(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < kHeaderSize)
        throw FormatError("length", "parameter file shorter than its 32-byte header");
    Reader r{bytes.data(), bytes.size()};
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw FormatError("magic", "not a GLUP parameter file");
    r.pos = 4;
    const uint32_t version = r.u32();
    if (version != kVersion)
        throw FormatError("version",
                          "unsupported parameter file version " + std::to_string(version));
    const uint32_t highW = r.u32(), highH = r.u32(), scale = r.u32();
    const uint32_t lowW = r.u32(), lowH = r.u32();
    const uint8_t mode = bytes[r.pos++];
    const uint8_t flag = bytes[r.pos++];
    const uint8_t res0 = bytes[r.pos++], res1 = bytes[r.pos++];

    if (highW == 0 || highH == 0 || scale < 2 || lowW == 0 || lowH == 0)
        throw FormatError("dims", "parameter file has degenerate dimensions");
    if (scale >= std::min(highW, highH))
        throw FormatError("dims", "scale is not smaller than the image");
    if (lowW != (size_t(highW) + scale - 1) / scale ||
        lowH != (size_t(highH) + scale - 1) / scale)
        throw FormatError("dims", "low-res dimensions do not match size and scale");
    if (mode > 2) throw FormatError("mode", "unknown mode byte " + std::to_string(mode));
    if (flag > 1) throw FormatError("flag", "optimized flag must be 0 or 1");
    if (res0 != 0 || res1 != 0)
        throw FormatError("reserved", "reserved header bytes must be zero");

    const size_t lowCount = size_t(lowW) * lowH;
    const size_t highCount = size_t(highW) * highH;
    const size_t expect = kHeaderSize + 12 * lowCount + 12 * highCount;
    if (bytes.size() != expect)
        throw FormatError("length", "parameter file is " + std::to_string(bytes.size()) +
                                        " bytes, expected " + std::to_string(expect));

    GlupFile f;
    f.field.grid = GridSpec::create(static_cast<int>(highW), static_cast<int>(highH),
                                    static_cast<int>(scale));
    f.field.mode = static_cast<Mode>(mode);
    f.optimized = flag == 1;
    f.low = ImageF32(static_cast<int>(lowW), static_cast<int>(lowH));
    for (size_t i = 0; i < lowCount * 3; ++i) {
        const float v = r.f32();
        if (!std::isfinite(v) || v < 0.0f || v > 1.0f)
            throw FormatError("lowres", "low-res sample outside [0, 1]");
        f.low.data[i] = v;
    }
    f.field.params.resize(highCount);
    for (size_t i = 0; i < highCount; ++i) {
        PixelParams& pp = f.field.params[i];
        pp.a = r.u32();
        pp.b = r.u32();
        pp.w = r.f32();
        if (pp.a >= lowCount || pp.b >= lowCount)
            throw FormatError("index", "pixel record references a cell outside the grid");
        if (!std::isfinite(pp.w))
            throw FormatError("weight", "pixel record has a non-finite weight");
    }
    return f;
}

void write_glup(const std::string& path, const GlupFile& f) {
    const std::vector<uint8_t> bytes = encode_glup(f);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path);
}

GlupFile read_glup(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open: " + path);
    const std::streamsize size = in.tellg();
    in.seekg(0);
    std::vector<uint8_t> bytes(static_cast<size_t>(size));
    if (size > 0) in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!in) throw IoError("read failed: " + path);
    return decode_glup(bytes);
}

}  // namespace glu
