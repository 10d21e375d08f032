#include <doctest.h>

#include <cmath>

#include <sqct/angle.hpp>

using namespace sqct;

namespace
{
    double midpoint(const Interval &iv)
    {
        return (iv.lo().to_double() + iv.hi().to_double()) / 2.0;
    }
} // namespace

TEST_CASE("angle: parsing round trip")
{
    CHECK(AngleSpec::parse("pi") == AngleSpec::rational_pi(1, 1));
    CHECK(AngleSpec::parse("pi/8") == AngleSpec::rational_pi(1, 8));
    CHECK(AngleSpec::parse("3*pi/4") == AngleSpec::rational_pi(3, 4));
    CHECK(AngleSpec::parse("-pi/2") == AngleSpec::rational_pi(-1, 2));
    CHECK(AngleSpec::parse("2*pi/8") == AngleSpec::rational_pi(1, 4));
    AngleSpec d = AngleSpec::parse("0.3926990816987241");
    CHECK_FALSE(d.is_rational_pi());
    CHECK(d.to_string() == "0.3926990816987241");
    CHECK(AngleSpec::parse(d.to_string()) == d);
    CHECK(AngleSpec::parse("pi/8").to_string() == "pi/8");

    CHECK_THROWS_AS(AngleSpec::parse("pie"), std::invalid_argument);
    CHECK_THROWS_AS(AngleSpec::parse("pi/"), std::invalid_argument);
    CHECK_THROWS_AS(AngleSpec::parse("2pi"), std::invalid_argument);
    CHECK_THROWS_AS(AngleSpec::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(AngleSpec::parse("1.2.3"), std::invalid_argument);
}

TEST_CASE("angle: enclosures are consistent with double math")
{
    for (auto [spec, value] : {std::pair{AngleSpec::parse("pi/8"), M_PI / 8},
                               std::pair{AngleSpec::parse("3*pi/4"), 3 * M_PI / 4},
                               std::pair{AngleSpec::parse("0.625"), 0.625},
                               std::pair{AngleSpec::parse("-1.5"), -1.5}})
    {
        Interval iv = spec.enclosure(96);
        CHECK(std::abs(midpoint(iv) - value) < 1e-12);
        CHECK(iv.width().to_double() < 1e-20);
        auto [c, s] = spec.cos_sin_enclosure(96);
        CHECK(std::abs(midpoint(c) - std::cos(value)) < 1e-12);
        CHECK(std::abs(midpoint(s) - std::sin(value)) < 1e-12);
    }
}

TEST_CASE("angle: enclosures nest as precision grows")
{
    for (const char *text : {"pi/8", "5*pi/6", "-3*pi/4", "0.125", "2.71828", "-0.001"})
    {
        AngleSpec a = AngleSpec::parse(text);
        Interval coarse = a.enclosure(48);
        Interval fine = a.enclosure(192);
        CHECK(coarse.contains(fine));
        auto [c_coarse, s_coarse] = a.cos_sin_enclosure(48);
        auto [c_fine, s_fine] = a.cos_sin_enclosure(192);
        CHECK(c_coarse.contains(c_fine));
        CHECK(s_coarse.contains(s_fine));
        CHECK(c_fine.width() < c_coarse.width());
    }
}

TEST_CASE("angle: certified floor")
{
    // floor(1000/pi) = 318
    CHECK(certified_floor([](unsigned bits)
                          { return rational_div_pi_interval(Rational(1000), bits); }) == 318);
    CHECK(dyadic_floor(Dyadic(Integer(13), -2)) == 3);  // 13/4
    CHECK(dyadic_floor(Dyadic(Integer(-13), -2)) == -4);
    CHECK(dyadic_floor(Dyadic(Integer(5), 1)) == 10);
}

TEST_CASE("angle: octant reduction on rational multiples of pi")
{
    auto [r1, t1] = reduce_phase(AngleSpec::parse("pi/8"));
    CHECK(t1 == 0);
    CHECK(r1 == AngleSpec::rational_pi(1, 8));

    auto [r2, t2] = reduce_phase(AngleSpec::parse("pi/2"));
    CHECK(t2 == 2);
    CHECK(r2.is_zero());

    auto [r3, t3] = reduce_phase(AngleSpec::parse("3*pi/8"));
    CHECK(t3 == 1);
    CHECK(r3 == AngleSpec::rational_pi(1, 8));

    auto [r4, t4] = reduce_phase(AngleSpec::parse("pi/4"));
    CHECK(t4 == 1);
    CHECK(r4.is_zero());

    // negative and above-2pi angles wrap
    auto [r5, t5] = reduce_phase(AngleSpec::parse("-pi/8"));
    CHECK(t5 == 7);
    CHECK(r5 == AngleSpec::rational_pi(1, 8));

    auto [r6, t6] = reduce_phase(AngleSpec::parse("17*pi/8"));
    CHECK(t6 == 0);
    CHECK(r6 == AngleSpec::rational_pi(1, 8));

    auto [r7, t7] = reduce_phase(AngleSpec::parse("0"));
    CHECK(t7 == 0);
    CHECK(r7.is_zero());
}

TEST_CASE("angle: octant reduction on decimal angles")
{
    // 0.3926990816987241 ~ pi/8, just below pi/4
    auto [r1, t1] = reduce_phase(AngleSpec::parse("0.3926990816987241"));
    CHECK(t1 == 0);
    CHECK_FALSE(r1.is_rational_pi());

    // 2.0 rad lies in octant 2 (2.0 / (pi/4) = 2.546)
    auto [r2, t2] = reduce_phase(AngleSpec::parse("2.0"));
    CHECK(t2 == 2);
    // residual angle is in [0, pi/4)
    Interval iv = r2.enclosure(96);
    CHECK(iv.lo().sign() >= 0);
    CHECK(std::abs(midpoint(iv) - (2.0 - 2 * M_PI / 4)) < 1e-12);

    // -0.1 rad wraps to octant 7
    auto [r3, t3] = reduce_phase(AngleSpec::parse("-0.1"));
    CHECK(t3 == 7);
    Interval iv3 = r3.enclosure(96);
    CHECK(std::abs(midpoint(iv3) - (-0.1 + 8 * M_PI / 4 - 7 * M_PI / 4)) < 1e-12);

    // 100 radians (many wraps)
    auto [r4, t4] = reduce_phase(AngleSpec::parse("100.0"));
    double red = std::fmod(100.0, 2 * M_PI);
    int oct = static_cast<int>(red / (M_PI / 4));
    CHECK(t4 == oct);
    CHECK(std::abs(midpoint(r4.enclosure(96)) - (red - oct * M_PI / 4)) < 1e-10);
}
