#pragma once

#include <string>

#include "glu/image.hpp"

namespace glu {

// Pointwise color operators standing in for an expensive image filter. Output
// channels are clamped to [0, 1].
struct SimOperator {
    enum class Kind { Identity, ScalarGain, ChannelMix, Grayscale, Gamma, Invert };

    Kind kind = Kind::Identity;
    double gain = 1.0;
    double gamma = 1.0;
    std::array<double, 9> mix{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major
    std::string name = "identity";

    Rgb apply(Rgb v) const;
    // True when the map is linear (commutes with linear interpolation).
    bool linear() const {
        return kind == Kind::Identity || kind == Kind::ScalarGain ||
               kind == Kind::ChannelMix || kind == Kind::Grayscale;
    }
};

SimOperator identity_op();
SimOperator scalar_gain_op(double gain);            // gain >= 0
SimOperator channel_mix_op(std::array<double, 9> m);
SimOperator grayscale_op();                          // BT.601 luma in all channels
SimOperator gamma_op(double gamma);                  // gamma > 0
SimOperator invert_op();

// identity | gain:<c> | gamma:<g> | gray | invert | mix:m00,...,m22
SimOperator parse_operator(const std::string& text);

ImageF32 apply_operator(const SimOperator& op, const ImageF32& img);

}  // namespace glu
