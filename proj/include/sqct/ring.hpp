#pragma once

#include <array>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bigint.hpp"
#include "dyadic.hpp"

namespace sqct
{

    class RingInt;
    class RingReal;
    class RingScalar;

    /**
     * ResidueClass: the pair ((a+c) mod 2, (b+d) mod 2) of a RingInt.
     * Classifies elements modulo sqrt(2); (0,0) means divisible by sqrt(2).
     * The class is additive: class(z+w) = class(z) XOR class(w).
     */
    struct ResidueClass
    {
        bool r1 = false;
        bool r2 = false;

        bool operator==(const ResidueClass &o) const = default;

        bool is_zero() const { return !r1 && !r2; }
        bool is_odd_type() const { return r1 != r2; }   // (1,0) or (0,1)
        bool is_double_odd() const { return r1 && r2; } // (1,1)

        ResidueClass operator^(const ResidueClass &o) const
        {
            return ResidueClass{r1 != o.r1, r2 != o.r2};
        }

        ResidueClass swapped() const { return ResidueClass{r2, r1}; }
    };

    /**
     * RingReal: numbers of the form x + y*sqrt(2) with integer x, y.
     * Closed under addition and multiplication; |z|^2 of a RingInt lands here.
     */
    class RingReal
    {
    private:
        Integer _x, _y;

    public:
        RingReal(Integer x = 0, Integer y = 0) : _x(std::move(x)), _y(std::move(y)) {}

        const Integer &x() const { return _x; }
        const Integer &y() const { return _y; }

        bool operator==(const RingReal &o) const { return _x == o._x && _y == o._y; }
        bool operator!=(const RingReal &o) const { return !(*this == o); }

        RingReal operator+(const RingReal &o) const { return RingReal(_x + o._x, _y + o._y); }
        RingReal operator-(const RingReal &o) const { return RingReal(_x - o._x, _y - o._y); }
        RingReal operator-() const { return RingReal(-_x, -_y); }

        RingReal operator*(const RingReal &o) const
        {
            return RingReal(_x * o._x + 2 * _y * o._y, _x * o._y + _y * o._x);
        }

        RingReal operator*(const Integer &n) const { return RingReal(_x * n, _y * n); }

        bool is_zero() const { return _x == 0 && _y == 0; }

        // Exact sign of x + y*sqrt(2), no numerics involved.
        int sign() const
        {
            int sx = sgn(_x), sy = sgn(_y);
            if (sy == 0)
                return sx;
            if (sx == 0)
                return sy;
            if (sx == sy)
                return sx;
            // opposite signs: compare x^2 with 2 y^2
            Integer xx = _x * _x, yy2 = 2 * _y * _y;
            if (xx == yy2)
                return 0; // impossible for integers unless both zero, kept for safety
            // value sign matches the larger magnitude term
            return (xx > yy2) ? sx : sy;
        }

        bool operator<(const RingReal &o) const { return (*this - o).sign() < 0; }
        bool operator<=(const RingReal &o) const { return (*this - o).sign() <= 0; }

        // Enclosure of the value at roughly `bits` precision.
        Interval enclosure(unsigned bits) const;

        friend std::ostream &operator<<(std::ostream &os, const RingReal &r)
        {
            return os << r._x << "+" << r._y << "*sqrt(2)";
        }
    };

    // Enclosure of sqrt(2) with width < 2^-bits.
    inline Interval sqrt2_interval(unsigned bits)
    {
        Integer s = isqrt(Integer(2) << static_cast<unsigned long>(2 * bits));
        // s <= sqrt(2)*2^bits < s+1
        return Interval(Dyadic(s, -static_cast<long>(bits)),
                        Dyadic(s + 1, -static_cast<long>(bits)));
    }

    // Enclosure of 1/sqrt(2) = sqrt(2)/2.
    inline Interval inv_sqrt2_interval(unsigned bits)
    {
        return sqrt2_interval(bits).mul_pow2(-1);
    }

    inline Interval RingReal::enclosure(unsigned bits) const
    {
        Interval r = Interval::exact(_x) + sqrt2_interval(bits + 8).scale(_y);
        return r.round_out(bits + 16);
    }

    /**
     * RingInt: cyclotomic integers a + b*w + c*w^2 + d*w^3 with w = e^{i pi/4}.
     *
     * The basis {1, w, w^2, w^3} with w^4 = -1 is canonical, so structural
     * equality is value equality. The imaginary unit is w^2 and
     * sqrt(2) = w - w^3.
     */
    class RingInt
    {
    private:
        Integer _a, _b, _c, _d;

    public:
        RingInt() : _a(0), _b(0), _c(0), _d(0) {}
        RingInt(Integer a, Integer b, Integer c, Integer d)
            : _a(std::move(a)), _b(std::move(b)), _c(std::move(c)), _d(std::move(d)) {}

        static RingInt from_int(const Integer &n) { return RingInt(n, 0, 0, 0); }
        static RingInt omega_power(int m)
        {
            RingInt r = from_int(1);
            return r.omega_mul(m);
        }
        // z = re + im * i with i = w^2
        static RingInt gaussian(const Integer &re, const Integer &im)
        {
            return RingInt(re, 0, im, 0);
        }
        static RingInt sqrt2() { return RingInt(0, 1, 0, -1); }

        const Integer &a() const { return _a; }
        const Integer &b() const { return _b; }
        const Integer &c() const { return _c; }
        const Integer &d() const { return _d; }

        bool operator==(const RingInt &o) const
        {
            return _a == o._a && _b == o._b && _c == o._c && _d == o._d;
        }
        bool operator!=(const RingInt &o) const { return !(*this == o); }

        bool is_zero() const { return _a == 0 && _b == 0 && _c == 0 && _d == 0; }

        RingInt operator+(const RingInt &o) const
        {
            return RingInt(_a + o._a, _b + o._b, _c + o._c, _d + o._d);
        }
        RingInt operator-(const RingInt &o) const
        {
            return RingInt(_a - o._a, _b - o._b, _c - o._c, _d - o._d);
        }
        RingInt operator-() const { return RingInt(-_a, -_b, -_c, -_d); }

        // Polynomial product reduced by w^4 = -1.
        RingInt operator*(const RingInt &o) const
        {
            const Integer &a0 = _a, &b0 = _b, &c0 = _c, &d0 = _d;
            const Integer &a1 = o._a, &b1 = o._b, &c1 = o._c, &d1 = o._d;
            Integer r0 = a0 * a1;
            Integer r1 = a0 * b1 + b0 * a1;
            Integer r2 = a0 * c1 + b0 * b1 + c0 * a1;
            Integer r3 = a0 * d1 + b0 * c1 + c0 * b1 + d0 * a1;
            Integer r4 = b0 * d1 + c0 * c1 + d0 * b1;
            Integer r5 = c0 * d1 + d0 * c1;
            Integer r6 = d0 * d1;
            return RingInt(r0 - r4, r1 - r5, r2 - r6, r3);
        }

        RingInt operator*(const Integer &n) const
        {
            return RingInt(_a * n, _b * n, _c * n, _d * n);
        }

        // Complex conjugate: w -> w^-1 = -w^3.
        RingInt conj() const { return RingInt(_a, -_d, -_c, -_b); }

        // z * w^m; a single step maps (a,b,c,d) -> (-d,a,b,c).
        RingInt omega_mul(int m) const
        {
            int k = ((m % 8) + 8) % 8;
            RingInt r = *this;
            for (int i = 0; i < k; ++i)
                r = RingInt(-r._d, r._a, r._b, r._c);
            return r;
        }

        // |z|^2 = z * conj(z) as an element of Z[sqrt(2)].
        RingReal norm() const
        {
            Integer x = _a * _a + _b * _b + _c * _c + _d * _d;
            Integer y = _a * _b + _b * _c + _c * _d - _a * _d;
            return RingReal(x, y);
        }

        ResidueClass residue_class() const
        {
            return ResidueClass{is_odd(_a + _c), is_odd(_b + _d)};
        }

        bool divisible_by_sqrt2() const { return residue_class().is_zero(); }

        // Exact quotient z / sqrt(2); rejects non-divisible input.
        RingInt div_sqrt2() const
        {
            if (!divisible_by_sqrt2())
                throw std::domain_error("RingInt::div_sqrt2: not divisible by sqrt(2)");
            return RingInt((_b - _d) / 2, (_a + _c) / 2, (_b + _d) / 2, (_c - _a) / 2);
        }

        // Residue modulo 2 of each coefficient, packed low-to-high as a|b|c|d.
        unsigned residue_mod2() const
        {
            unsigned r = 0;
            if (is_odd(_a))
                r |= 1u;
            if (is_odd(_b))
                r |= 2u;
            if (is_odd(_c))
                r |= 4u;
            if (is_odd(_d))
                r |= 8u;
            return r;
        }

        bool congruent_mod2(const RingInt &o) const
        {
            return is_even(_a - o._a) && is_even(_b - o._b) &&
                   is_even(_c - o._c) && is_even(_d - o._d);
        }

        // Real and imaginary parts as elements x + y*sqrt(2) scaled by 1/2:
        // Re = a + (b-d)/sqrt(2), Im = c + (b+d)/sqrt(2).
        ComplexInterval enclosure(unsigned bits) const
        {
            Interval inv_s = inv_sqrt2_interval(bits + 8);
            Interval re = Interval::exact(_a) + inv_s.scale(_b - _d);
            Interval im = Interval::exact(_c) + inv_s.scale(_b + _d);
            return ComplexInterval(re, im).round_out(bits + 16);
        }

        friend std::ostream &operator<<(std::ostream &os, const RingInt &z)
        {
            return os << "(" << z._a << "," << z._b << "," << z._c << "," << z._d << ")";
        }
    };

    inline RingInt operator*(const Integer &n, const RingInt &z) { return z * n; }

    /**
     * RingScalar: u / sqrt(2)^k with u a RingInt and k >= 0, the entry type of
     * all exactly represented states and matrices. The denominator exponent is
     * kept lazily; normalize() makes it minimal.
     */
    class RingScalar
    {
    private:
        RingInt _u;
        unsigned _k;

    public:
        RingScalar() : _u(), _k(0) {}
        RingScalar(RingInt u, unsigned k = 0) : _u(std::move(u)), _k(k) {}

        static RingScalar zero() { return RingScalar(); }
        static RingScalar one() { return RingScalar(RingInt::from_int(1)); }

        const RingInt &u() const { return _u; }
        unsigned k() const { return _k; }

        bool is_zero() const { return _u.is_zero(); }

        // Minimal denominator exponent (k = 0 or u not divisible by sqrt(2)).
        RingScalar normalized() const
        {
            if (_u.is_zero())
                return RingScalar();
            RingInt u = _u;
            unsigned k = _k;
            while (k > 0 && u.divisible_by_sqrt2())
            {
                u = u.div_sqrt2();
                --k;
            }
            return RingScalar(u, k);
        }

        // Same value expressed with denominator exponent new_k >= current lde.
        RingScalar with_denom_exp(unsigned new_k) const
        {
            RingScalar n = normalized();
            if (new_k < n._k)
                throw std::domain_error("RingScalar::with_denom_exp: exponent below lde");
            RingInt u = n._u;
            RingInt s = RingInt::sqrt2();
            for (unsigned i = n._k; i < new_k; ++i)
                u = u * s;
            return RingScalar(u, new_k);
        }

        unsigned lde() const { return normalized()._k; }

        bool operator==(const RingScalar &o) const
        {
            RingScalar x = normalized(), y = o.normalized();
            return x._k == y._k && x._u == y._u;
        }
        bool operator!=(const RingScalar &o) const { return !(*this == o); }

        RingScalar operator+(const RingScalar &o) const
        {
            unsigned k = std::max(_k, o._k);
            RingInt a = _u, b = o._u;
            RingInt s = RingInt::sqrt2();
            for (unsigned i = _k; i < k; ++i)
                a = a * s;
            for (unsigned i = o._k; i < k; ++i)
                b = b * s;
            return RingScalar(a + b, k);
        }

        RingScalar operator-(const RingScalar &o) const { return *this + (-o); }
        RingScalar operator-() const { return RingScalar(-_u, _k); }

        RingScalar operator*(const RingScalar &o) const
        {
            return RingScalar(_u * o._u, _k + o._k);
        }

        RingScalar conj() const { return RingScalar(_u.conj(), _k); }

        RingScalar omega_mul(int m) const { return RingScalar(_u.omega_mul(m), _k); }

        // Divide by sqrt(2) (increase denominator exponent).
        RingScalar div_sqrt2() const { return RingScalar(_u, _k + 1); }

        // |s|^2 as an exact pair (RingReal numerator, power-of-2 denominator).
        // |u|^2 / 2^k.
        RingReal norm_numerator() const { return _u.norm(); }
        unsigned norm_denom_exp() const { return _k; }

        ComplexInterval enclosure(unsigned bits) const
        {
            ComplexInterval num = _u.enclosure(bits + _k / 2 + 8);
            // divide by sqrt(2)^k: even part exact, odd part via 1/sqrt(2)
            long half = static_cast<long>(_k / 2);
            ComplexInterval r(num.re().mul_pow2(-half), num.im().mul_pow2(-half));
            if (_k % 2 == 1)
            {
                Interval inv_s = inv_sqrt2_interval(bits + 8);
                r = ComplexInterval(r.re() * inv_s, r.im() * inv_s);
            }
            return r.round_out(bits + 16);
        }

        friend std::ostream &operator<<(std::ostream &os, const RingScalar &s)
        {
            return os << s._u << "/sqrt(2)^" << s._k;
        }
    };

    // Evaluate a ring scalar to a certified complex box.
    inline ComplexInterval evaluate(const RingScalar &s, unsigned precision_bits)
    {
        if (precision_bits < 16)
            throw std::domain_error("evaluate: precision_bits must be >= 16");
        return s.enclosure(precision_bits);
    }

} // namespace sqct
