#include "glu/simop.hpp"

#include <cmath>
#include <sstream>

#include "glu/parallel.hpp"

namespace glu {

namespace {
inline float clamp01(double v) {
    return static_cast<float>(v < 0 ? 0 : (v > 1 ? 1 : v));
}
}  // namespace

Rgb SimOperator::apply(Rgb v) const {
    switch (kind) {
        case Kind::Identity:
            return v;
        case Kind::ScalarGain:
            return {clamp01(gain * v[0]), clamp01(gain * v[1]), clamp01(gain * v[2])};
        case Kind::ChannelMix: {
            Rgb o;
            for (int r = 0; r < 3; ++r)
                o[r] = clamp01(mix[r * 3] * v[0] + mix[r * 3 + 1] * v[1] +
                               mix[r * 3 + 2] * v[2]);
            return o;
        }
        case Kind::Grayscale: {
            const float g = clamp01(0.299 * v[0] + 0.587 * v[1] + 0.114 * v[2]);
            return {g, g, g};
        }
        case Kind::Gamma:
            return {clamp01(std::pow(double(v[0]), gamma)),
                    clamp01(std::pow(double(v[1]), gamma)),
                    clamp01(std::pow(double(v[2]), gamma))};
        case Kind::Invert:
            return {clamp01(1.0 - v[0]), clamp01(1.0 - v[1]), clamp01(1.0 - v[2])};
    }
    return v;
}

SimOperator identity_op() { return {}; }

SimOperator scalar_gain_op(double gain) {
    if (!(gain >= 0)) throw std::invalid_argument("scalar_gain_op: gain must be >= 0");
    SimOperator op;
    op.kind = SimOperator::Kind::ScalarGain;
    op.gain = gain;
    std::ostringstream n;
    n << "gain(" << gain << ")";
    op.name = n.str();
    return op;
}

SimOperator channel_mix_op(std::array<double, 9> m) {
    SimOperator op;
    op.kind = SimOperator::Kind::ChannelMix;
    op.mix = m;
    op.name = "mix";
    return op;
}

SimOperator grayscale_op() {
    SimOperator op;
    op.kind = SimOperator::Kind::Grayscale;
    op.name = "gray";
    return op;
}

SimOperator gamma_op(double gamma) {
    if (!(gamma > 0)) throw std::invalid_argument("gamma_op: gamma must be > 0");
    SimOperator op;
    op.kind = SimOperator::Kind::Gamma;
    op.gamma = gamma;
    std::ostringstream n;
    n << "gamma(" << gamma << ")";
    op.name = n.str();
    return op;
}

SimOperator invert_op() {
    SimOperator op;
    op.kind = SimOperator::Kind::Invert;
    op.name = "invert";
    return op;
}

SimOperator parse_operator(const std::string& text) {
    if (text == "identity") return identity_op();
    if (text == "gray") return grayscale_op();
    if (text == "invert") return invert_op();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        const std::string rest = text.substr(colon + 1);
        try {
            if (head == "gain") return scalar_gain_op(std::stod(rest));
            if (head == "gamma") return gamma_op(std::stod(rest));
            if (head == "mix") {
                std::array<double, 9> m{};
                std::istringstream ss(rest);
                std::string tok;
                for (int i = 0; i < 9; ++i) {
                    if (!std::getline(ss, tok, ','))
                        throw std::invalid_argument("mix needs 9 comma-separated values");
                    m[i] = std::stod(tok);
                }
                if (std::getline(ss, tok, ','))
                    throw std::invalid_argument("mix needs exactly 9 values");
                return channel_mix_op(m);
            }
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("operator parameter out of range: " + text);
        }
    }
    throw std::invalid_argument("unknown operator: " + text);
}

ImageF32 apply_operator(const SimOperator& op, const ImageF32& img) {
    ImageF32 out(img.width, img.height);
    parallel_for(static_cast<int>(img.pixelCount()), [&](int b, int e) {
        for (int p = b; p < e; ++p) {
            const Rgb v = op.apply(img.rgb(static_cast<uint32_t>(p)));
            float* o = out.data.data() + static_cast<size_t>(p) * 3;
            o[0] = v[0];
            o[1] = v[1];
            o[2] = v[2];
        }
    });
    return out;
}

}  // namespace glu
