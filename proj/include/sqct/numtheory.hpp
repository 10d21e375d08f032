#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "bigint.hpp"
#include "rng.hpp"

namespace sqct
{

    /**
     * QuadSolution: witnesses M = a^2 + b^2 + c^2 + d^2.
     */
    struct QuadSolution
    {
        Integer a, b, c, d;

        Integer sum_of_squares() const { return a * a + b * b + c * c + d * d; }

        bool operator==(const QuadSolution &o) const
        {
            return a == o.a && b == o.b && c == o.c && d == o.d;
        }
    };

    // Miller-Rabin with `rounds` random witnesses. A false result is certain;
    // a true result may be wrong with probability <= 4^-rounds.
    inline bool is_probable_prime(const Integer &n, RandomSource &rng, int rounds = 40)
    {
        if (n < 2)
            return false;
        if (n < 4)
            return true; // 2, 3
        if (is_even(n))
            return false;
        Integer d = n - 1;
        unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
        d >>= s;
        Integer n1 = n - 1;
        for (int i = 0; i < rounds; ++i)
        {
            Integer a = rng.between(2, n - 2);
            Integer x = powmod(a, d, n);
            if (x == 1 || x == n1)
                continue;
            bool witness = true;
            for (unsigned long r = 1; r < s; ++r)
            {
                x = (x * x) % n;
                if (x == n1)
                {
                    witness = false;
                    break;
                }
            }
            if (witness)
                return false;
        }
        return true;
    }

    /**
     * Signals that a randomized subroutine discovered its input was not prime
     * after all; the caller retries with fresh randomness.
     */
    struct composite_detected : std::runtime_error
    {
        composite_detected() : std::runtime_error("composite slipped past primality test") {}
    };

    // A square root of -1 modulo a prime p = 1 (mod 4), via t = u^((p-1)/4)
    // for random u. Throws composite_detected if p was a pseudoprime.
    inline Integer sqrt_minus_one(const Integer &p, RandomSource &rng)
    {
        if (mod_floor(p, 4) != 1)
            throw std::domain_error("sqrt_minus_one: p must be 1 mod 4");
        Integer e = (p - 1) / 4;
        Integer p1 = p - 1;
        for (int attempt = 0; attempt < 128; ++attempt)
        {
            Integer u = rng.between(2, p - 2);
            Integer t = powmod(u, e, p);
            Integer t2 = (t * t) % p;
            if (t2 == p1)
                return t;
            // If u^((p-1)/2) is neither 1 nor -1, p is composite for sure.
            if (t2 != 1)
                throw composite_detected();
        }
        throw composite_detected();
    }

    /**
     * Gaussian integer re + im*i, just enough structure for the Euclidean gcd
     * used by the two-square decomposition.
     */
    struct GaussInt
    {
        Integer re, im;

        bool is_zero() const { return re == 0 && im == 0; }
        Integer norm() const { return re * re + im * im; }

        GaussInt operator-(const GaussInt &o) const { return {re - o.re, im - o.im}; }
        GaussInt operator*(const GaussInt &o) const
        {
            return {re * o.re - im * o.im, re * o.im + im * o.re};
        }
        GaussInt conj() const { return {re, Integer(-im)}; }
    };

    // Euclidean gcd with rounded quotients; defined up to a unit.
    inline GaussInt gauss_gcd(GaussInt z, GaussInt w)
    {
        if (z.is_zero() && w.is_zero())
            throw std::domain_error("gauss_gcd: both arguments zero");
        while (!w.is_zero())
        {
            Integer n = w.norm();
            GaussInt p = z * w.conj();
            GaussInt q{rounddiv(p.re, n), rounddiv(p.im, n)};
            GaussInt r = z - q * w;
            z = w;
            w = r;
        }
        return z;
    }

    // c^2 + d^2 = p for p in {1, 2} or a prime p = 1 (mod 4).
    // Throws composite_detected when the decomposition fails the final check.
    inline std::pair<Integer, Integer> two_squares(const Integer &p, RandomSource &rng)
    {
        if (p == 1)
            return {1, 0};
        if (p == 2)
            return {1, 1};
        Integer t = sqrt_minus_one(p, rng);
        GaussInt g = gauss_gcd(GaussInt{p, 0}, GaussInt{t, 1});
        Integer c = abs(g.re), d = abs(g.im);
        if (c * c + d * d != p)
            throw composite_detected();
        return {c, d};
    }

    // Smallest-last canonical solution by descending depth-first search:
    // maximizes a, then b, then c subject to a >= b >= c >= d >= 0.
    inline QuadSolution four_squares_bruteforce(const Integer &M)
    {
        if (M < 0)
            throw std::domain_error("four_squares_bruteforce: negative input");
        if (M > 1000000)
            throw std::domain_error("four_squares_bruteforce: input too large");
        long m = M.get_si();
        auto issq = [](long v, long &r)
        {
            r = static_cast<long>(std::sqrt(static_cast<double>(v)));
            while (r * r > v)
                --r;
            while ((r + 1) * (r + 1) <= v)
                ++r;
            return r * r == v;
        };
        long sr;
        issq(m, sr);
        for (long a = sr; a >= 0; --a)
        {
            long ra = m - a * a;
            if (ra > 3 * a * a)
                break; // b,c,d <= a cannot reach
            long sb;
            issq(ra, sb);
            for (long b = std::min(a, sb); b >= 0; --b)
            {
                long rb = ra - b * b;
                if (rb > 2 * b * b)
                    break;
                long sc;
                issq(rb, sc);
                for (long c = std::min(b, sc); c >= 0; --c)
                {
                    long rc = rb - c * c;
                    if (rc > c * c)
                        break;
                    long d;
                    if (issq(rc, d))
                        return QuadSolution{a, b, c, d};
                }
            }
        }
        throw std::logic_error("four_squares_bruteforce: no solution found"); // unreachable
    }

    namespace detail
    {
        // One random attempt at the reduced instance m (m % 4 != 0, m >= 2).
        // Follows the Rabin-Shallit case split on m mod 8.
        inline std::optional<QuadSolution> four_squares_attempt(const Integer &m, RandomSource &rng)
        {
            Integer r8 = mod_floor(m, 8);
            try
            {
                if (r8 == 3)
                {
                    // x odd, q = (m - x^2)/2 = 1 (mod 4); m = x^2 + (c+d)^2 + (c-d)^2
                    Integer x = rng.between(0, isqrt(m));
                    if (is_even(x))
                        x += 1;
                    if (x * x > m)
                        return std::nullopt;
                    Integer q = (m - x * x) / 2;
                    if (q > 1 && !is_probable_prime(q, rng))
                        return std::nullopt;
                    auto [c, d] = two_squares(q, rng);
                    return QuadSolution{x, c + d, abs(c - d), 0};
                }
                if (r8 == 7)
                {
                    // subtract x2^2 with x2 = 2 (mod 4) to land in the 3 (mod 8) case
                    Integer hi = isqrt(m - 3);
                    if (hi < 2)
                        return std::nullopt;
                    Integer x2 = rng.between(2, hi);
                    x2 -= mod_floor(x2 - 2, 4);
                    Integer m2 = m - x2 * x2;
                    if (m2 < 3)
                        return std::nullopt;
                    Integer x = rng.between(0, isqrt(m2));
                    if (is_even(x))
                        x += 1;
                    if (x * x > m2)
                        return std::nullopt;
                    Integer q = (m2 - x * x) / 2;
                    if (q > 1 && !is_probable_prime(q, rng))
                        return std::nullopt;
                    auto [c, d] = two_squares(q, rng);
                    return QuadSolution{x2, x, c + d, abs(c - d)};
                }
                // m = 1, 2, 5, 6 (mod 8): force p = m - x1^2 - x2^2 = 1 (mod 4)
                Integer x1 = rng.between(0, isqrt(m));
                if (is_odd(m))
                {
                    if (is_odd(x1))
                        x1 -= 1; // x1 even
                }
                else
                {
                    if (is_even(x1))
                        x1 = (x1 == 0) ? Integer(1) : x1 - 1; // x1 odd
                }
                if (x1 * x1 > m)
                    return std::nullopt;
                Integer rem = m - x1 * x1;
                Integer x2 = rng.between(0, isqrt(rem));
                if (is_odd(x2))
                    x2 -= 1; // x2 even
                Integer p = rem - x2 * x2;
                if (p < 1)
                    return std::nullopt;
                if (p > 2 && !is_probable_prime(p, rng))
                    return std::nullopt;
                auto [c, d] = two_squares(p, rng);
                return QuadSolution{x1, x2, c, d};
            }
            catch (const composite_detected &)
            {
                return std::nullopt; // pseudoprime slipped through; retry
            }
        }
    } // namespace detail

    /**
     * Las-Vegas four-square decomposition; the returned tuple always satisfies
     * the sum identity exactly. `trials_out`, when given, receives the number
     * of random attempts spent.
     */
    inline QuadSolution four_squares(const Integer &M, RandomSource &rng,
                                     long *trials_out = nullptr)
    {
        if (M < 0)
            throw std::domain_error("four_squares: negative input");
        if (trials_out)
            *trials_out = 0;
        if (M == 0)
            return QuadSolution{0, 0, 0, 0};

        // Strip factors of 4: a solution for m scales by 2^e.
        Integer m = M;
        Integer scale = 1;
        while (mod_floor(m, 4) == 0)
        {
            m /= 4;
            scale *= 2;
        }

        QuadSolution s;
        if (m < 65536)
        {
            s = four_squares_bruteforce(m);
        }
        else
        {
            long trials = 0;
            while (true)
            {
                ++trials;
                auto attempt = detail::four_squares_attempt(m, rng);
                if (attempt && attempt->sum_of_squares() == m)
                {
                    s = *attempt;
                    break;
                }
            }
            if (trials_out)
                *trials_out = trials;
        }
        s.a *= scale;
        s.b *= scale;
        s.c *= scale;
        s.d *= scale;
        if (s.sum_of_squares() != M)
            throw std::logic_error("four_squares: verification failed");
        return s;
    }

} // namespace sqct
