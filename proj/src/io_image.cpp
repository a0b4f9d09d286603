#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "glu/io.hpp"

namespace glu {

namespace {

struct FileCloser {
    FILE* f = nullptr;
    ~FileCloser() {
        if (f) fclose(f);
    }
};

ImageF32 loadPng(const std::string& path) {
    FileCloser fc{fopen(path.c_str(), "rb")};
    if (!fc.f) throw IoError("cannot open: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("png reader setup failed");
    }
    std::vector<png_byte> rows;
    std::vector<png_bytep> rowPtrs;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("invalid PNG: " + path);
    }
    png_init_io(png, fc.f);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int bitDepth = png_get_bit_depth(png, info);
    const int colorType = png_get_color_type(png, info);

    if (colorType == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (colorType == PNG_COLOR_TYPE_GRAY && bitDepth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (colorType == PNG_COLOR_TYPE_GRAY || colorType == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const size_t rowBytes = png_get_rowbytes(png, info);
    const int outDepth = png_get_bit_depth(png, info);
    if (png_get_channels(png, info) != 3 || (outDepth != 8 && outDepth != 16)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("unsupported PNG layout: " + path);
    }
    rows.resize(rowBytes * h);
    rowPtrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) rowPtrs[y] = rows.data() + y * rowBytes;
    png_read_image(png, rowPtrs.data());
    png_destroy_read_struct(&png, &info, nullptr);

    ImageF32 img(static_cast<int>(w), static_cast<int>(h));
    if (outDepth == 8) {
        for (size_t y = 0; y < h; ++y) {
            const png_byte* r = rows.data() + y * rowBytes;
            float* o = img.data.data() + y * w * 3;
            for (size_t i = 0; i < w * 3; ++i) o[i] = r[i] / 255.0f;
        }
    } else {
        for (size_t y = 0; y < h; ++y) {
            const png_byte* r = rows.data() + y * rowBytes;
            float* o = img.data.data() + y * w * 3;
            for (size_t i = 0; i < w * 3; ++i) {
                const unsigned v = (unsigned(r[2 * i]) << 8) | r[2 * i + 1];
                o[i] = v / 65535.0f;
            }
        }
    }
    return img;
}

void savePng(const std::string& path, const ImageF32& img, int bitDepth) {
    FileCloser fc{fopen(path.c_str(), "wb")};
    if (!fc.f) throw IoError("cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("png writer setup failed");
    }
    std::vector<png_byte> row;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("write failed: " + path);
    }
    png_init_io(png, fc.f);
    png_set_IHDR(png, info, img.width, img.height, bitDepth, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const int maxv = bitDepth == 8 ? 255 : 65535;
    row.resize(static_cast<size_t>(img.width) * 3 * (bitDepth / 8));
    for (int y = 0; y < img.height; ++y) {
        const float* src = img.data.data() + static_cast<size_t>(y) * img.width * 3;
        for (int i = 0; i < img.width * 3; ++i) {
            const float c = src[i] < 0.0f ? 0.0f : (src[i] > 1.0f ? 1.0f : src[i]);
            const unsigned v = static_cast<unsigned>(std::lround(double(c) * maxv));
            if (bitDepth == 8) {
                row[i] = static_cast<png_byte>(v);
            } else {
                row[2 * i] = static_cast<png_byte>(v >> 8);
                row[2 * i + 1] = static_cast<png_byte>(v & 0xff);
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

int ppmToken(std::istream& in) {
    // Skips whitespace and '#' comments, then parses a decimal token.
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) return -1;
    int v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > 0x7fffff) return -1;
        c = in.get();
    }
    if (c != EOF) in.unget();
    return v;
}

ImageF32 loadPpm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '6') throw IoError("not a binary PPM: " + path);
    const int w = ppmToken(in);
    const int h = ppmToken(in);
    const int maxv = ppmToken(in);
    if (w <= 0 || h <= 0 || maxv <= 0 || maxv > 65535)
        throw IoError("malformed PPM header: " + path);
    in.get();  // single whitespace after maxval

    const int bytes = maxv > 255 ? 2 : 1;
    std::vector<uint8_t> buf(static_cast<size_t>(w) * h * 3 * bytes);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size()))
        throw IoError("truncated PPM: " + path);

    ImageF32 img(w, h);
    const float scale = 1.0f / maxv;
    if (bytes == 1) {
        for (size_t i = 0; i < img.data.size(); ++i) img.data[i] = buf[i] * scale;
    } else {
        for (size_t i = 0; i < img.data.size(); ++i) {
            const unsigned v = (unsigned(buf[2 * i]) << 8) | buf[2 * i + 1];
            img.data[i] = v * scale;
        }
    }
    return img;
}

void savePpm(const std::string& path, const ImageF32& img, int bitDepth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    const int maxv = bitDepth == 8 ? 255 : 65535;
    out << "P6\n" << img.width << " " << img.height << "\n" << maxv << "\n";
    std::vector<uint8_t> buf(img.data.size() * (bitDepth / 8));
    for (size_t i = 0; i < img.data.size(); ++i) {
        const float c = img.data[i] < 0.0f ? 0.0f : (img.data[i] > 1.0f ? 1.0f : img.data[i]);
        const unsigned v = static_cast<unsigned>(std::lround(double(c) * maxv));
        if (bitDepth == 8) {
            buf[i] = static_cast<uint8_t>(v);
        } else {
            buf[2 * i] = static_cast<uint8_t>(v >> 8);
            buf[2 * i + 1] = static_cast<uint8_t>(v & 0xff);
        }
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("write failed: " + path);
}

bool hasSuffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

}  // namespace

ImageF32 load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError("cannot open: " + path);
    uint8_t sig[8] = {};
    probe.read(reinterpret_cast<char*>(sig), 8);
    probe.close();
    static const uint8_t pngSig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
    if (std::memcmp(sig, pngSig, 8) == 0) return loadPng(path);
    if (sig[0] == 'P' && sig[1] == '6') return loadPpm(path);
    throw IoError("unsupported image format: " + path);
}

void save_image(const std::string& path, const ImageF32& img, int bitDepth) {
    if (bitDepth != 8 && bitDepth != 16)
        throw std::invalid_argument("save_image: bit depth must be 8 or 16");
    if (img.width <= 0 || img.height <= 0)
        throw std::invalid_argument("save_image: empty image");
    if (hasSuffix(path, ".png")) {
        savePng(path, img, bitDepth);
    } else if (hasSuffix(path, ".ppm")) {
        savePpm(path, img, bitDepth);
    } else {
        throw IoError("unsupported image extension: " + path);
    }
}

}  // namespace glu
