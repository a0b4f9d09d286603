#include "glu/metrics.hpp"

#include <cmath>
#include <vector>

namespace glu {

namespace {

constexpr int kWin = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

std::vector<double> lumaPlane(const ImageF32& img) {
    std::vector<double> out(img.pixelCount());
    for (size_t p = 0; p < out.size(); ++p) {
        const float* v = img.data.data() + p * 3;
        out[p] = 0.299 * v[0] + 0.587 * v[1] + 0.114 * v[2];
    }
    return out;
}

const std::vector<double>& gaussKernel() {
    static const std::vector<double> k = [] {
        std::vector<double> g(kWin);
        double sum = 0;
        for (int i = 0; i < kWin; ++i) {
            const double d = i - kWin / 2;
            g[i] = std::exp(-d * d / (2 * kSigma * kSigma));
            sum += g[i];
        }
        for (double& v : g) v /= sum;
        return g;
    }();
    return k;
}

// Valid-mode separable filtering: output is (w - kWin + 1) x (h - kWin + 1).
std::vector<double> filterValid(const std::vector<double>& src, int w, int h) {
    const auto& k = gaussKernel();
    const int ow = w - kWin + 1, oh = h - kWin + 1;
    std::vector<double> tmp(static_cast<size_t>(ow) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double s = 0;
            for (int i = 0; i < kWin; ++i) s += k[i] * src[static_cast<size_t>(y) * w + x + i];
            tmp[static_cast<size_t>(y) * ow + x] = s;
        }
    std::vector<double> out(static_cast<size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double s = 0;
            for (int i = 0; i < kWin; ++i) s += k[i] * tmp[static_cast<size_t>(y + i) * ow + x];
            out[static_cast<size_t>(y) * ow + x] = s;
        }
    return out;
}

}  // namespace

double mse(const ImageF32& a, const ImageF32& b) {
    requireSameShape(a, b, "mse");
    double s = 0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double d = double(a.data[i]) - b.data[i];
        s += d * d;
    }
    return s / double(a.data.size());
}

double psnr(const ImageF32& a, const ImageF32& b) {
    const double m = mse(a, b);
    if (m == 0) return 99.0;
    return 10.0 * std::log10(1.0 / m);
}

double ssim(const ImageF32& a, const ImageF32& b) {
    requireSameShape(a, b, "ssim");
    if (a.width < kWin || a.height < kWin)
        throw std::invalid_argument("ssim: images smaller than the 11x11 window");
    const int w = a.width, h = a.height;
    const std::vector<double> x = lumaPlane(a);
    const std::vector<double> y = lumaPlane(b);
    std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const std::vector<double> mu1 = filterValid(x, w, h);
    const std::vector<double> mu2 = filterValid(y, w, h);
    const std::vector<double> m11 = filterValid(xx, w, h);
    const std::vector<double> m22 = filterValid(yy, w, h);
    const std::vector<double> m12 = filterValid(xy, w, h);

    double acc = 0;
    for (size_t i = 0; i < mu1.size(); ++i) {
        const double var1 = m11[i] - mu1[i] * mu1[i];
        const double var2 = m22[i] - mu2[i] * mu2[i];
        const double cov = m12[i] - mu1[i] * mu2[i];
        const double num = (2 * mu1[i] * mu2[i] + kC1) * (2 * cov + kC2);
        const double den = (mu1[i] * mu1[i] + mu2[i] * mu2[i] + kC1) * (var1 + var2 + kC2);
        acc += num / den;
    }
    return acc / double(mu1.size());
}

QualityReport quality_report(const ImageF32& reference, const ImageF32& test) {
    QualityReport q;
    q.mse = mse(reference, test);
    q.psnrDb = psnr(reference, test);
    q.ssim = ssim(reference, test);
    return q;
}

}  // namespace glu
