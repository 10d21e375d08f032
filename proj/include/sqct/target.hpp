#pragma once

#include <utility>

#include "angle.hpp"
#include "bigint.hpp"
#include "numtheory.hpp"
#include "ring.hpp"
#include "rng.hpp"
#include "statevec.hpp"

namespace sqct
{

    /**
     * TargetApprox: the ring-valued unit vector
     *   v = (gamma*2^k, 0, a+ib, c+id) / 2^k
     * approximating e^{i phi}|00> for a reduced phase phi in [0, pi/4], with
     * gamma = (floor(2^k cos phi) + i floor(2^k sin phi)) / 2^k and
     * (a,b,c,d) solving a^2+b^2+c^2+d^2 = M = 4^k - f_c^2 - f_s^2.
     */
    struct TargetApprox
    {
        AngleSpec phi_reduced = AngleSpec::zero();
        int octant = 0;
        unsigned k = 0;
        StateVec v;
        RingScalar gamma;
        Integer f_c, f_s;
        Integer M;
        QuadSolution quad;
        long quad_trials = 0;
    };

    // Exact floors of 2^k cos(phi) and 2^k sin(phi) for phi in [0, pi/4].
    // Rational-pi phases whose cosine or sine is an exact dyadic are resolved
    // symbolically (phi = 0, the sine of pi/6, and pi/4 via isqrt); all other
    // values are irrational, so interval refinement terminates.
    inline std::pair<Integer, Integer> floor_scaled_trig(const AngleSpec &phi, unsigned k)
    {
        if (k < 1)
            throw std::domain_error("floor_scaled_trig: k must be >= 1");
        if (phi.is_zero())
            return {pow2(k), 0};

        if (phi.is_rational_pi())
        {
            if (phi.num() == 1 && phi.den() == 4)
            {
                // 2^k/sqrt(2): floor = isqrt(2^(2k-1))
                Integer f = isqrt(pow2(2 * k - 1));
                return {f, f};
            }
            if (phi.num() == 1 && phi.den() == 6)
            {
                // sin(pi/6) = 1/2 exactly; cos refines (sqrt(3)/2 irrational)
                Integer fc = certified_floor([&](unsigned bits)
                                             { return phi.cos_sin_enclosure(bits).first.mul_pow2(static_cast<long>(k)); });
                return {fc, pow2(k - 1)};
            }
        }
        Integer fc = certified_floor([&](unsigned bits)
                                     { return phi.cos_sin_enclosure(bits).first.mul_pow2(static_cast<long>(k)); });
        Integer fs = certified_floor([&](unsigned bits)
                                     { return phi.cos_sin_enclosure(bits).second.mul_pow2(static_cast<long>(k)); });
        return {fc, fs};
    }

    // B(k)^2 = 2/4^k + 2*sqrt(2)/2^k, the certified bound on the distance of
    // the k-approximation: the first term bounds |gamma - e^{i phi}|^2, the
    // second bounds 1 - |gamma|^2 via 2|gamma - e^{i phi}|.
    //
    // Exact test B(k) <= eps for rational eps, no rounding involved.
    inline bool error_bound_leq(unsigned k, const Rational &eps)
    {
        if (eps <= 0)
            return false;
        // compare 2 + 2 sqrt(2) 2^k <= eps^2 4^k
        Rational rhs = eps * eps * Rational(pow2(2 * k));
        Rational R = rhs - 2;
        if (R < 0)
            return false;
        // 2 sqrt(2) 2^k <= R  <=>  8*4^k <= R^2
        return Rational(8 * pow2(2 * k)) <= R * R;
    }

    // Upper bound on B(k) as a dyadic, for reporting.
    inline Dyadic error_bound(unsigned k, unsigned bits = 128)
    {
        if (k < 1)
            throw std::domain_error("error_bound: k must be >= 1");
        Interval b2 = Interval(Dyadic(Integer(1), 1 - 2 * static_cast<long>(k))) +
                      sqrt2_interval(bits + 8).mul_pow2(1 - static_cast<long>(k));
        return Interval::sqrt_upper(b2.hi(), bits);
    }

    // Minimal k >= 1 with B(k) <= eps; k <= 2 log2(1/eps) + 4 for eps < 1.
    inline unsigned choose_k(const Rational &eps)
    {
        if (eps <= 0 || eps >= 1)
            throw std::domain_error("choose_k: eps must be in (0, 1)");
        unsigned k = 1;
        while (!error_bound_leq(k, eps))
            ++k;
        return k;
    }

    inline TargetApprox build_target(const AngleSpec &phi_reduced, unsigned k, RandomSource &rng)
    {
        if (k < 1)
            throw std::domain_error("build_target: k must be >= 1");
        TargetApprox t;
        t.phi_reduced = phi_reduced;
        t.k = k;
        auto [fc, fs] = floor_scaled_trig(phi_reduced, k);
        t.f_c = fc;
        t.f_s = fs;
        t.M = pow2(2 * k) - fc * fc - fs * fs;
        if (t.M < 0)
            throw std::logic_error("build_target: negative four-square instance");
        // M <= 2x + 2y - 2 <= 2 sqrt(2) 2^k - 2 < 3*2^k for x = 2^k cos(phi),
        // y = 2^k sin(phi), k >= 1, since floor(x)^2 >= (x-1)^2 (and the
        // y < 1 corner gives M <= 2x - 1 + y^2 <= 2*2^k).
        if (t.M > 3 * pow2(k))
            throw std::logic_error("build_target: four-square instance exceeds 3*2^k");
        t.quad = four_squares(t.M, rng, &t.quad_trials);

        t.gamma = RingScalar(RingInt::gaussian(fc, fs), 2 * k);
        StateVec v(4);
        v[0] = t.gamma;
        v[1] = RingScalar::zero();
        v[2] = RingScalar(RingInt::gaussian(t.quad.a, t.quad.b), 2 * k);
        v[3] = RingScalar(RingInt::gaussian(t.quad.c, t.quad.d), 2 * k);
        if (!v.is_unit_norm())
            throw std::logic_error("build_target: vector is not exactly unit");
        t.v = std::move(v);
        return t;
    }

    // Certified upper bound on |e^{i phi} - gamma|^2 at the given precision.
    inline Interval gamma_deviation_squared(const TargetApprox &t, unsigned bits)
    {
        auto [c, s] = t.phi_reduced.cos_sin_enclosure(bits);
        long e = -static_cast<long>(t.k);
        Interval dc = c - Interval(Dyadic(t.f_c, e));
        Interval ds = s - Interval(Dyadic(t.f_s, e));
        return (dc.square() + ds.square()).round_out(bits + 16);
    }

    // Certifies |gamma - e^{i phi}| <= sqrt(2)/2^k (refining precision as
    // needed; the true value is strictly below the threshold).
    inline bool certify_gamma_close(const TargetApprox &t, unsigned start_bits = 64)
    {
        Dyadic threshold(Integer(1), 1 - 2 * static_cast<long>(t.k)); // 2*4^-k
        for (unsigned bits = start_bits; bits <= (1u << 16); bits *= 2)
        {
            Interval dev = gamma_deviation_squared(t, bits);
            if (dev.hi() <= threshold)
                return true;
            if (dev.lo() > threshold)
                return false;
        }
        return false;
    }

    // Certified upper bound on sqrt(|e^{i phi} - gamma|^2 + 1 - |gamma|^2),
    // the distance of the prepared state to e^{i phi}|00> maximized over the
    // data-qubit amplitude. 1 - |gamma|^2 equals M/4^k exactly.
    inline Dyadic exact_error(const TargetApprox &t, unsigned precision_bits)
    {
        Dyadic garbage(t.M, -2 * static_cast<long>(t.k));
        if (t.phi_reduced.is_zero())
            return Interval::sqrt_upper(garbage, precision_bits); // gamma = 1, M = 0
        Interval dev = gamma_deviation_squared(t, precision_bits);
        Dyadic total = dev.hi() + garbage;
        return Interval::sqrt_upper(total, precision_bits);
    }

} // namespace sqct
