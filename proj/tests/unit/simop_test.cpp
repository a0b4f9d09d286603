#include <cmath>

#include "doctest.h"
#include "glu/simop.hpp"
#include "glu/synth.hpp"

using namespace glu;

TEST_CASE("operators pin their pointwise definitions") {
    const Rgb v{0.25f, 0.5f, 1.0f};

    CHECK(identity_op().apply(v) == v);

    CHECK(scalar_gain_op(0.5).apply(v) == Rgb{0.125f, 0.25f, 0.5f});
    CHECK(scalar_gain_op(2.0).apply({0.8f, 0.1f, 0.6f}) == Rgb{1.0f, 0.2f, 1.0f});

    CHECK(invert_op().apply(v) == Rgb{0.75f, 0.5f, 0.0f});

    const Rgb g = grayscale_op().apply({1.0f, 0.0f, 0.0f});
    CHECK(g[0] == 0.299f);
    CHECK(g[1] == g[0]);
    CHECK(g[2] == g[0]);
    const Rgb gw = grayscale_op().apply({1.0f, 1.0f, 1.0f});
    CHECK(gw[0] == doctest::Approx(1.0).epsilon(1e-12));

    const Rgb p = gamma_op(2.2).apply({0.5f, 0.0f, 1.0f});
    CHECK(p[0] == doctest::Approx(std::pow(0.5, 2.2)).epsilon(1e-6));
    CHECK(p[1] == 0.0f);
    CHECK(p[2] == 1.0f);

    // Permutation matrix: rows select g, b, r.
    const SimOperator swap = channel_mix_op({0, 1, 0, 0, 0, 1, 1, 0, 0});
    CHECK(swap.apply(v) == Rgb{0.5f, 1.0f, 0.25f});
    CHECK(channel_mix_op({0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 2, 2, 2}).apply(v) ==
          Rgb{0.875f, 0.875f, 1.0f});
}

TEST_CASE("linearity flags match the math") {
    CHECK(identity_op().linear());
    CHECK(scalar_gain_op(0.7).linear());
    CHECK(channel_mix_op({1, 0, 0, 0, 1, 0, 0, 0, 1}).linear());
    CHECK(grayscale_op().linear());
    CHECK_FALSE(gamma_op(2.2).linear());
    CHECK_FALSE(invert_op().linear());
}

TEST_CASE("operator factories validate parameters") {
    CHECK_THROWS_AS(scalar_gain_op(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(gamma_op(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_op(-1.0), std::invalid_argument);
}

TEST_CASE("parse_operator round trips the text forms") {
    CHECK(parse_operator("identity").kind == SimOperator::Kind::Identity);
    CHECK(parse_operator("gray").kind == SimOperator::Kind::Grayscale);
    CHECK(parse_operator("invert").kind == SimOperator::Kind::Invert);

    const SimOperator gain = parse_operator("gain:0.5");
    CHECK(gain.kind == SimOperator::Kind::ScalarGain);
    CHECK(gain.gain == 0.5);
    CHECK(gain.name == "gain(0.5)");

    const SimOperator gam = parse_operator("gamma:2.2");
    CHECK(gam.kind == SimOperator::Kind::Gamma);
    CHECK(gam.gamma == 2.2);

    const SimOperator mix = parse_operator("mix:0,1,0,0,0,1,1,0,0");
    CHECK(mix.kind == SimOperator::Kind::ChannelMix);
    CHECK(mix.mix[1] == 1.0);
    CHECK(mix.mix[0] == 0.0);

    CHECK_THROWS_AS(parse_operator("sharpen"), std::invalid_argument);
    CHECK_THROWS_AS(parse_operator("gain:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_operator("gain:-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_operator("mix:1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_operator("mix:1,2,3,4,5,6,7,8,9,10"), std::invalid_argument);
}

TEST_CASE("apply_operator equals the pointwise map on every pixel") {
    const ImageF32 img = synth_mixture(33, 21, 6);
    for (const SimOperator& op :
         {gamma_op(2.2), scalar_gain_op(1.3), grayscale_op(), invert_op()}) {
        const ImageF32 out = apply_operator(op, img);
        REQUIRE(out.width == img.width);
        REQUIRE(out.height == img.height);
        for (uint32_t p = 0; p < img.pixelCount(); ++p) CHECK(out.rgb(p) == op.apply(img.rgb(p)));
    }
}
