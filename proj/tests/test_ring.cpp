#include <doctest.h>

#include <complex>
#include <vector>

#include <sqct/ring.hpp>
#include <sqct/rng.hpp>

using namespace sqct;

namespace
{
    // Independent oracle: multiply as degree-3 polynomials in w via plain
    // convolution, then reduce with w^4 = -1.
    RingInt poly_mul_oracle(const RingInt &z, const RingInt &w)
    {
        long long zc[4] = {z.a().get_si(), z.b().get_si(), z.c().get_si(), z.d().get_si()};
        long long wc[4] = {w.a().get_si(), w.b().get_si(), w.c().get_si(), w.d().get_si()};
        long long conv[7] = {0, 0, 0, 0, 0, 0, 0};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                conv[i + j] += zc[i] * wc[j];
        long out[4];
        for (int i = 0; i < 4; ++i)
            out[i] = static_cast<long>(conv[i] - (i + 4 < 7 ? conv[i + 4] : 0));
        return RingInt(out[0], out[1], out[2], out[3]);
    }

    std::complex<double> to_cd(const RingInt &z)
    {
        const double s = std::sqrt(0.5);
        std::complex<double> w(s, s);
        return static_cast<double>(z.a().get_si()) +
               static_cast<double>(z.b().get_si()) * w +
               static_cast<double>(z.c().get_si()) * w * w +
               static_cast<double>(z.d().get_si()) * w * w * w;
    }

    RingInt random_ring_int(RandomSource &rng, long bound = 50)
    {
        auto pick = [&]
        { return Integer(static_cast<long>(rng.below_u64(2 * bound + 1)) - bound); };
        return RingInt(pick(), pick(), pick(), pick());
    }
} // namespace

TEST_CASE("ring: basis products and identity")
{
    RingInt omega(0, 1, 0, 0);
    CHECK(omega * omega == RingInt(0, 0, 1, 0)); // w*w = w^2
    RingInt one = RingInt::from_int(1);
    RandomSource rng(11);
    for (int i = 0; i < 20; ++i)
    {
        RingInt z = random_ring_int(rng);
        CHECK(z * one == z);
    }
    // (1+w)(1-w) = 1 - w^2, cross-checked against the convolution oracle
    RingInt p = RingInt(1, 1, 0, 0) * RingInt(1, -1, 0, 0);
    CHECK(p == RingInt(1, 0, -1, 0));
    CHECK(p == poly_mul_oracle(RingInt(1, 1, 0, 0), RingInt(1, -1, 0, 0)));
    CHECK((RingInt(1, 1, 0, 0).norm() * RingInt(1, -1, 0, 0).norm()) == p.norm());
}

TEST_CASE("ring: conjugation")
{
    CHECK(RingInt(0, 1, 0, 0).conj() == RingInt(0, 0, 0, -1)); // conj(w) = -w^3
    CHECK(RingInt(1, 0, 0, 0).conj() == RingInt(1, 0, 0, 0));
    RandomSource rng(12);
    for (int i = 0; i < 200; ++i)
    {
        RingInt z = random_ring_int(rng);
        CHECK(z.conj().conj() == z);
    }
}

TEST_CASE("ring: norm examples")
{
    CHECK(RingInt(1, 1, 0, 0).norm() == RingReal(2, 1)); // |1+w|^2 = 2+sqrt(2)
    CHECK(RingInt(0, 1, 0, 0).norm() == RingReal(1, 0));
    CHECK(RingInt(0, 1, 0, -1).norm() == RingReal(2, 0)); // |sqrt(2)|^2 = 2
}

TEST_CASE("ring: residue classes")
{
    CHECK(RingInt(1, 1, 0, 0).residue_class() == ResidueClass{true, true});
    CHECK(RingInt(0, 1, 0, -1).residue_class() == ResidueClass{false, false});
    CHECK(RingInt(1, 0, 0, 0).residue_class() == ResidueClass{true, false});
}

TEST_CASE("ring: sqrt2 divisibility and quotient")
{
    CHECK(RingInt::sqrt2().divisible_by_sqrt2());
    CHECK_FALSE(RingInt(1, 1, 0, 0).divisible_by_sqrt2());
    CHECK(RingInt(2, 0, 0, 0).divisible_by_sqrt2());

    CHECK(RingInt::sqrt2().div_sqrt2() == RingInt(1, 0, 0, 0));
    CHECK(RingInt(2, 0, 0, 0).div_sqrt2() == RingInt::sqrt2()); // 2/sqrt(2) = sqrt(2)
    // re-multiplication checks
    RingInt q = RingInt(0, 2, 0, 0).div_sqrt2();
    CHECK(RingInt::sqrt2() * q == RingInt(0, 2, 0, 0));
    CHECK_THROWS_AS(RingInt(1, 1, 0, 0).div_sqrt2(), std::domain_error);

    // brute force: no small y with sqrt(2)*y = 1+w
    RingInt target(1, 1, 0, 0);
    bool found = false;
    for (long a = -4; a <= 4 && !found; ++a)
        for (long b = -4; b <= 4 && !found; ++b)
            for (long c = -4; c <= 4 && !found; ++c)
                for (long d = -4; d <= 4 && !found; ++d)
                    if (RingInt::sqrt2() * RingInt(a, b, c, d) == target)
                        found = true;
    CHECK_FALSE(found);
}

TEST_CASE("ring: omega multiplication")
{
    CHECK(RingInt(1, 0, 0, 0).omega_mul(1) == RingInt(0, 1, 0, 0));
    RandomSource rng(13);
    for (int i = 0; i < 100; ++i)
    {
        RingInt z = random_ring_int(rng);
        CHECK(z.omega_mul(8) == z);
        // one omega step swaps the class components
        ResidueClass before = z.residue_class();
        CHECK(z.omega_mul(1).residue_class() == before.swapped());
    }
}

TEST_CASE("ring: algebra identities on random elements")
{
    RandomSource rng(14);
    for (int i = 0; i < 100000; ++i)
    {
        RingInt x = random_ring_int(rng, 20);
        RingInt y = random_ring_int(rng, 20);
        RingInt z = random_ring_int(rng, 20);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x + y).conj() == x.conj() + y.conj());
        CHECK((x * y).norm() == x.norm() * y.norm());
    }
}

TEST_CASE("ring: numeric cross-check of multiplication")
{
    RandomSource rng(15);
    for (int i = 0; i < 500; ++i)
    {
        RingInt x = random_ring_int(rng, 10);
        RingInt y = random_ring_int(rng, 10);
        RingInt p = x * y;
        CHECK(p == poly_mul_oracle(x, y));
        std::complex<double> approx = to_cd(x) * to_cd(y);
        CHECK(std::abs(approx - to_cd(p)) < 1e-6);
        // |z|^2 agrees numerically with the RingReal norm
        double n = static_cast<double>(x.norm().x().get_si()) +
                   std::sqrt(2.0) * static_cast<double>(x.norm().y().get_si());
        CHECK(std::abs(std::norm(to_cd(x)) - n) < 1e-6);
    }
}

TEST_CASE("ring: exhaustive divisibility, class and parity laws on [-4,4]^4")
{
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b)
            for (long c = -4; c <= 4; ++c)
                for (long d = -4; d <= 4; ++d)
                {
                    RingInt z(a, b, c, d);
                    ResidueClass cls = z.residue_class();
                    bool div = z.divisible_by_sqrt2();
                    CHECK(div == cls.is_zero());
                    if (div)
                    {
                        CHECK(RingInt::sqrt2() * z.div_sqrt2() == z);
                    }
                    // parity laws relating the norm to the class
                    RingReal n = z.norm();
                    bool x_odd = is_odd(n.x());
                    bool y_odd = is_odd(n.y());
                    CHECK(x_odd == (cls.r1 != cls.r2));
                    CHECK(y_odd == (cls.r1 && cls.r2));
                    // class additivity against a fixed probe
                    RingInt probe(1, 0, 1, 1);
                    CHECK((z + probe).residue_class() == (cls ^ probe.residue_class()));
                }
}

TEST_CASE("ring: scalar normalization and equality")
{
    // sqrt(2)/sqrt(2)^2 = 1/sqrt(2)
    RingScalar s(RingInt::sqrt2(), 2);
    RingScalar n = s.normalized();
    CHECK(n.k() == 1);
    CHECK(n.u() == RingInt(1, 0, 0, 0));
    CHECK(s == RingScalar(RingInt(1, 0, 0, 0), 1));
    // value preserved by normalization: re-multiply the denominator back
    CHECK(s.with_denom_exp(2).u() == RingInt::sqrt2());
    CHECK(RingScalar(RingInt(), 5) == RingScalar::zero());

    RandomSource rng(16);
    for (int i = 0; i < 200; ++i)
    {
        RingInt u = random_ring_int(rng, 6);
        RingScalar a(u, 3);
        CHECK(a + (-a) == RingScalar::zero());
        CHECK(a * RingScalar::one() == a);
        RingScalar norm_a = a.normalized();
        CHECK(norm_a == a);
        if (!norm_a.is_zero() && norm_a.k() > 0)
            CHECK_FALSE(norm_a.u().divisible_by_sqrt2());
    }
}

TEST_CASE("ring: certified evaluation")
{
    CHECK_THROWS_AS(evaluate(RingScalar::one(), 8), std::domain_error);

    // exact integer: zero width
    ComplexInterval one = evaluate(RingScalar::one(), 64);
    CHECK(one.re().contains(Dyadic(1)));
    CHECK(one.im().contains(Dyadic(0)));
    CHECK(one.max_width() < Dyadic(Integer(1), -60));

    // omega at 64 bits contains (sqrt(2)/2, sqrt(2)/2)
    ComplexInterval w = evaluate(RingScalar(RingInt(0, 1, 0, 0)), 64);
    Interval ref = inv_sqrt2_interval(256);
    CHECK(w.re().contains(ref));
    CHECK(w.im().contains(ref));

    // 1/sqrt(2) as sqrt(2)/sqrt(2)^2
    ComplexInterval h = evaluate(RingScalar(RingInt::sqrt2(), 2), 64);
    CHECK(h.re().contains(ref)); // contains 0.70710678...
    CHECK(h.im().contains(Dyadic(0)));
    CHECK(h.re().lo().compare_rational(Rational(70710679, 100000000)) < 0);
    CHECK(h.re().hi().compare_rational(Rational(70710678, 100000000)) > 0);

    RandomSource rng(17);
    for (int i = 0; i < 50; ++i)
    {
        RingInt u = random_ring_int(rng, 30);
        unsigned k = static_cast<unsigned>(rng.below_u64(6));
        RingScalar s(u, k);
        // contains a 256-bit reference evaluation
        ComplexInterval fine = evaluate(s, 256);
        ComplexInterval coarse = evaluate(s, 32);
        CHECK(coarse.re().contains(fine.re()));
        CHECK(coarse.im().contains(fine.im()));
        // widths shrink as precision grows
        ComplexInterval mid = evaluate(s, 64);
        CHECK(mid.max_width() <= coarse.max_width());
        CHECK(fine.max_width() <= mid.max_width());
        if (!coarse.max_width().is_zero())
        {
            CHECK(fine.max_width() < coarse.max_width());
        }
    }
}
