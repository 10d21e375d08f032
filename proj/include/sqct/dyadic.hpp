#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bigint.hpp"

namespace sqct
{

    /**
     * Dyadic: exact numbers of the form mantissa * 2^exponent.
     *
     * Addition and multiplication are exact; precision is only lost through
     * the explicit round_down / round_up calls, which round toward the stated
     * direction. All certified bounds in this project bottom out here, so no
     * operation may ever depend on hardware float rounding.
     */
    class Dyadic
    {
    private:
        Integer _mant;
        long _exp;

        void normalize()
        {
            if (_mant == 0)
            {
                _exp = 0;
                return;
            }
            unsigned long tz = mpz_scan1(_mant.get_mpz_t(), 0);
            if (tz > 0)
            {
                mpz_fdiv_q_2exp(_mant.get_mpz_t(), _mant.get_mpz_t(), tz);
                _exp += static_cast<long>(tz);
            }
        }

    public:
        Dyadic() : _mant(0), _exp(0) {}
        Dyadic(const Integer &mant, long exp = 0) : _mant(mant), _exp(exp) { normalize(); }
        Dyadic(long v) : _mant(v), _exp(0) { normalize(); }

        const Integer &mantissa() const { return _mant; }
        long exponent() const { return _exp; }

        static Dyadic zero() { return Dyadic(); }
        static Dyadic one() { return Dyadic(Integer(1), 0); }

        // 2^e for any (possibly negative) e
        static Dyadic power_of_two(long e) { return Dyadic(Integer(1), e); }

        bool is_zero() const { return _mant == 0; }
        int sign() const { return sgn(_mant); }

        Dyadic operator-() const { return Dyadic(-_mant, _exp); }

        Dyadic operator+(const Dyadic &o) const
        {
            if (_mant == 0)
                return o;
            if (o._mant == 0)
                return *this;
            long e = std::min(_exp, o._exp);
            Integer a = _mant << static_cast<unsigned long>(_exp - e);
            Integer b = o._mant << static_cast<unsigned long>(o._exp - e);
            return Dyadic(a + b, e);
        }

        Dyadic operator-(const Dyadic &o) const { return *this + (-o); }

        Dyadic operator*(const Dyadic &o) const
        {
            return Dyadic(_mant * o._mant, _exp + o._exp);
        }

        Dyadic mul_pow2(long e) const { return Dyadic(_mant, _exp + e); }

        int compare(const Dyadic &o) const
        {
            Dyadic d = *this - o;
            return d.sign();
        }

        bool operator==(const Dyadic &o) const { return compare(o) == 0; }
        bool operator!=(const Dyadic &o) const { return compare(o) != 0; }
        bool operator<(const Dyadic &o) const { return compare(o) < 0; }
        bool operator<=(const Dyadic &o) const { return compare(o) <= 0; }
        bool operator>(const Dyadic &o) const { return compare(o) > 0; }
        bool operator>=(const Dyadic &o) const { return compare(o) >= 0; }

        int compare_rational(const Rational &q) const
        {
            // mant*2^exp vs num/den, den > 0
            Integer num = q.get_num(), den = q.get_den();
            Integer lhs, rhs;
            if (_exp >= 0)
            {
                lhs = _mant << static_cast<unsigned long>(_exp);
                lhs *= den;
                rhs = num;
            }
            else
            {
                lhs = _mant * den;
                rhs = num << static_cast<unsigned long>(-_exp);
            }
            return cmp(lhs, rhs) < 0 ? -1 : (lhs == rhs ? 0 : 1);
        }

        // Largest dyadic with at most `bits` mantissa bits that is <= *this.
        Dyadic round_down(unsigned bits) const
        {
            if (_mant == 0)
                return *this;
            size_t len = bit_length(_mant);
            if (len <= bits)
                return *this;
            unsigned long drop = static_cast<unsigned long>(len - bits);
            Integer m;
            mpz_fdiv_q_2exp(m.get_mpz_t(), _mant.get_mpz_t(), drop); // floor
            return Dyadic(m, _exp + static_cast<long>(drop));
        }

        // Smallest dyadic with at most `bits` mantissa bits that is >= *this.
        Dyadic round_up(unsigned bits) const
        {
            if (_mant == 0)
                return *this;
            size_t len = bit_length(_mant);
            if (len <= bits)
                return *this;
            unsigned long drop = static_cast<unsigned long>(len - bits);
            Integer m;
            mpz_cdiv_q_2exp(m.get_mpz_t(), _mant.get_mpz_t(), drop); // ceil
            return Dyadic(m, _exp + static_cast<long>(drop));
        }

        Rational to_rational() const
        {
            Rational r(_mant);
            if (_exp >= 0)
                r *= Rational(Integer(1) << static_cast<unsigned long>(_exp));
            else
                r /= Rational(Integer(1) << static_cast<unsigned long>(-_exp));
            r.canonicalize();
            return r;
        }

        double to_double() const
        {
            if (_mant == 0)
                return 0.0;
            long shift = static_cast<long>(bit_length(_mant)) - 53;
            if (shift < 0)
                shift = 0;
            Integer m;
            mpz_fdiv_q_2exp(m.get_mpz_t(), _mant.get_mpz_t(),
                            static_cast<unsigned long>(shift));
            return std::ldexp(mpz_get_d(m.get_mpz_t()),
                              static_cast<int>(_exp + shift));
        }

        // Decimal rendering with the given number of significant digits,
        // faithful to the exact value (round-to-nearest on the last digit).
        std::string to_decimal_string(unsigned digits = 20) const;

        friend std::ostream &operator<<(std::ostream &os, const Dyadic &d)
        {
            return os << d.to_decimal_string();
        }
    };

    /**
     * Interval: closed interval [lo, hi] with exact dyadic endpoints.
     * All operations round outward, so the result always contains the exact
     * image of the operands.
     */
    class Interval
    {
    private:
        Dyadic _lo, _hi;

    public:
        Interval() : _lo(), _hi() {}
        Interval(const Dyadic &point) : _lo(point), _hi(point) {}
        Interval(const Dyadic &lo, const Dyadic &hi) : _lo(lo), _hi(hi)
        {
            if (_lo > _hi)
                throw std::logic_error("Interval: lo > hi");
        }

        const Dyadic &lo() const { return _lo; }
        const Dyadic &hi() const { return _hi; }

        static Interval exact(const Integer &n) { return Interval(Dyadic(n)); }

        Dyadic width() const { return _hi - _lo; }
        bool contains(const Dyadic &x) const { return _lo <= x && x <= _hi; }
        bool contains(const Interval &o) const { return _lo <= o._lo && o._hi <= _hi; }

        Interval operator-() const { return Interval(-_hi, -_lo); }

        Interval operator+(const Interval &o) const
        {
            return Interval(_lo + o._lo, _hi + o._hi);
        }

        Interval operator-(const Interval &o) const { return *this + (-o); }

        Interval operator*(const Interval &o) const
        {
            Dyadic a = _lo * o._lo, b = _lo * o._hi, c = _hi * o._lo, d = _hi * o._hi;
            Dyadic lo = std::min(std::min(a, b), std::min(c, d));
            Dyadic hi = std::max(std::max(a, b), std::max(c, d));
            return Interval(lo, hi);
        }

        Interval mul_pow2(long e) const
        {
            return Interval(_lo.mul_pow2(e), _hi.mul_pow2(e));
        }

        Interval scale(const Integer &n) const
        {
            Dyadic a = _lo * Dyadic(n), b = _hi * Dyadic(n);
            return n >= 0 ? Interval(a, b) : Interval(b, a);
        }

        // Truncate both endpoints to `bits` mantissa bits, rounding outward.
        Interval round_out(unsigned bits) const
        {
            return Interval(_lo.round_down(bits), _hi.round_up(bits));
        }

        Interval square() const
        {
            if (_lo.sign() >= 0)
                return Interval(_lo * _lo, _hi * _hi);
            if (_hi.sign() <= 0)
                return Interval(_hi * _hi, _lo * _lo);
            return Interval(Dyadic::zero(), std::max(_lo * _lo, _hi * _hi));
        }

        // Enclosure of sqrt over a nonnegative interval.
        Interval sqrt_out(unsigned bits) const
        {
            if (_lo.sign() < 0)
                throw std::domain_error("Interval::sqrt_out: negative interval");
            return Interval(sqrt_lower(_lo, bits), sqrt_upper(_hi, bits));
        }

        // Certified bounds for sqrt of a nonnegative dyadic.
        static Dyadic sqrt_lower(const Dyadic &d, unsigned bits)
        {
            if (d.sign() < 0)
                throw std::domain_error("sqrt_lower: negative argument");
            if (d.is_zero())
                return Dyadic::zero();
            // Shift so the scaled mantissa has even exponent and >= 2*bits bits.
            long e = d.exponent();
            Integer m = d.mantissa();
            long shift = 2 * static_cast<long>(bits);
            if ((e - shift) % 2 != 0)
                ++shift;
            m <<= static_cast<unsigned long>(shift);
            Integer r = isqrt(m); // r^2 <= m
            return Dyadic(r, (e - shift) / 2);
        }

        static Dyadic sqrt_upper(const Dyadic &d, unsigned bits)
        {
            if (d.sign() < 0)
                throw std::domain_error("sqrt_upper: negative argument");
            if (d.is_zero())
                return Dyadic::zero();
            long e = d.exponent();
            Integer m = d.mantissa();
            long shift = 2 * static_cast<long>(bits);
            if ((e - shift) % 2 != 0)
                ++shift;
            m <<= static_cast<unsigned long>(shift);
            Integer r = isqrt(m) + 1; // r^2 > m
            return Dyadic(r, (e - shift) / 2);
        }
    };

    /**
     * ComplexInterval: axis-aligned box certainly containing a complex value.
     */
    class ComplexInterval
    {
    private:
        Interval _re, _im;

    public:
        ComplexInterval() {}
        ComplexInterval(const Interval &re, const Interval &im) : _re(re), _im(im) {}

        const Interval &re() const { return _re; }
        const Interval &im() const { return _im; }

        ComplexInterval operator+(const ComplexInterval &o) const
        {
            return ComplexInterval(_re + o._re, _im + o._im);
        }

        ComplexInterval operator-(const ComplexInterval &o) const
        {
            return ComplexInterval(_re - o._re, _im - o._im);
        }

        ComplexInterval operator*(const ComplexInterval &o) const
        {
            return ComplexInterval(_re * o._re - _im * o._im,
                                   _re * o._im + _im * o._re);
        }

        // Enclosure of |z|^2.
        Interval abs_squared() const { return _re.square() + _im.square(); }

        Dyadic max_width() const { return std::max(_re.width(), _im.width()); }

        ComplexInterval round_out(unsigned bits) const
        {
            return ComplexInterval(_re.round_out(bits), _im.round_out(bits));
        }
    };

    inline std::string Dyadic::to_decimal_string(unsigned digits) const
    {
        if (_mant == 0)
            return "0";
        bool neg = _mant < 0;
        Integer m = neg ? Integer(-_mant) : _mant;
        // value = m * 2^_exp; produce `digits` significant decimal digits.
        // decimal exponent estimate from bit length: log10(2) ~ 0.30103
        long bits2 = static_cast<long>(bit_length(m)) + _exp;
        long dec_exp = static_cast<long>(std::floor(static_cast<double>(bits2) * 0.30102999566398119));
        // We want digits of m*2^_exp / 10^(dec_exp-digits+1), rounded.
        long p = dec_exp - static_cast<long>(digits) + 1;
        Integer num = m, den(1);
        if (_exp >= 0)
            num <<= static_cast<unsigned long>(_exp);
        else
            den <<= static_cast<unsigned long>(-_exp);
        Integer p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(p < 0 ? -p : p));
        if (p >= 0)
            den *= p10;
        else
            num *= p10;
        Integer q = rounddiv(num, den);
        std::string ds = q.get_str();
        // rounding may have produced one digit more than requested
        if (ds.size() > digits)
        {
            p += static_cast<long>(ds.size() - digits);
            ds = ds.substr(0, digits);
        }
        // strip trailing zeros of the significand
        size_t last = ds.find_last_not_of('0');
        long extra = static_cast<long>(ds.size() - 1 - last);
        ds = ds.substr(0, last + 1);
        p += extra;
        std::string out = neg ? "-" : "";
        if (p == 0)
        {
            out += ds;
        }
        else if (p > 0 && p + static_cast<long>(ds.size()) <= 21)
        {
            out += ds + std::string(static_cast<size_t>(p), '0');
        }
        else if (p < 0 && -p < static_cast<long>(ds.size()))
        {
            size_t dot = ds.size() - static_cast<size_t>(-p);
            out += ds.substr(0, dot) + "." + ds.substr(dot);
        }
        else if (p < 0 && -p <= static_cast<long>(ds.size()) + 6)
        {
            out += "0." + std::string(static_cast<size_t>(-p) - ds.size(), '0') + ds;
        }
        else
        {
            // scientific
            out += ds.substr(0, 1);
            if (ds.size() > 1)
                out += "." + ds.substr(1);
            long sci = p + static_cast<long>(ds.size()) - 1;
            out += "e" + std::to_string(sci);
        }
        return out;
    }

} // namespace sqct
